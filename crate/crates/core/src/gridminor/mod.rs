//! Grids, partially triangulated grids and grid-minor search.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::graph::minor_brute::{search_bounded, Outcome};
use crate::graph::{is_minor_brute, EdgeId, Multigraph, VertexId, Witness};
use crate::minor::{model_from_witness, ContractionModel, Image, MinorModel};

/// The `k x k` grid. Vertex `(i, j)` (1-based) has id `(i-1)k + (j-1)`.
/// Horizontal edges change the first coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridGraph {
    k: usize,
    graph: Multigraph,
    edge_index: BTreeMap<(VertexId, VertexId), EdgeId>,
}

impl GridGraph {
    pub fn new(k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid("grid side must be at least 1"));
        }
        let mut graph = Multigraph::with_vertices(k * k);
        let mut edge_index = BTreeMap::new();
        let id = |i: usize, j: usize| (i - 1) * k + (j - 1);
        for i in 1..=k {
            for j in 1..=k {
                if i < k {
                    let e = graph.push_edge(id(i, j), id(i + 1, j))?;
                    edge_index.insert((id(i, j), id(i + 1, j)), e);
                }
                if j < k {
                    let e = graph.push_edge(id(i, j), id(i, j + 1))?;
                    edge_index.insert((id(i, j), id(i, j + 1)), e);
                }
            }
        }
        Ok(GridGraph { k, graph, edge_index })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn id(&self, i: usize, j: usize) -> VertexId {
        debug_assert!((1..=self.k).contains(&i) && (1..=self.k).contains(&j));
        (i - 1) * self.k + (j - 1)
    }

    pub fn coords(&self, v: VertexId) -> (usize, usize) {
        (v / self.k + 1, v % self.k + 1)
    }

    /// Grid edge between two vertices, in either order.
    pub fn edge(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }
}

/// Shorthand for the graph of [`GridGraph::new`].
pub fn make_grid(k: usize) -> Result<GridGraph> {
    GridGraph::new(k)
}

/// Chord of the unit face with lower-left corner `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Diagonal {
    /// Joins `(i, j)` and `(i+1, j+1)`.
    Rising,
    /// Joins `(i+1, j)` and `(i, j+1)`.
    Falling,
}

/// A grid with at most one chord per unit face. Chord edges get ids after
/// the grid edges, in face order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTriangulation {
    base: GridGraph,
    diagonals: BTreeMap<(usize, usize), Diagonal>,
    graph: Multigraph,
}

impl PartialTriangulation {
    pub fn new(k: usize, diagonals: BTreeMap<(usize, usize), Diagonal>) -> Result<Self> {
        let base = GridGraph::new(k)?;
        let mut graph = base.graph().clone();
        for (&(i, j), &d) in &diagonals {
            if !(1..k).contains(&i) || !(1..k).contains(&j) {
                return Err(Error::invalid(format!("no unit face at ({i}, {j})")));
            }
            let (a, b) = match d {
                Diagonal::Rising => (base.id(i, j), base.id(i + 1, j + 1)),
                Diagonal::Falling => (base.id(i + 1, j), base.id(i, j + 1)),
            };
            graph.push_edge(a, b)?;
        }
        Ok(PartialTriangulation { base, diagonals, graph })
    }

    pub fn base(&self) -> &GridGraph {
        &self.base
    }

    pub fn diagonals(&self) -> &BTreeMap<(usize, usize), Diagonal> {
        &self.diagonals
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }
}

/// Each unit face independently gets no chord, a rising or a falling chord.
pub fn make_partial_triangulation(k: usize, seed: u64) -> Result<PartialTriangulation> {
    if k < 2 {
        return Err(Error::invalid("triangulated grids need side at least 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut diagonals = BTreeMap::new();
    for i in 1..k {
        for j in 1..k {
            match rng.gen_range(0..3) {
                1 => {
                    diagonals.insert((i, j), Diagonal::Rising);
                }
                2 => {
                    diagonals.insert((i, j), Diagonal::Falling);
                }
                _ => {}
            }
        }
    }
    PartialTriangulation::new(k, diagonals)
}

#[derive(Serialize, Deserialize)]
struct TriangulationJson {
    k: usize,
    diagonals: Vec<(usize, usize, Diagonal)>,
}

impl Serialize for PartialTriangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TriangulationJson {
            k: self.base.k,
            diagonals: self.diagonals.iter().map(|(&(i, j), &d)| (i, j, d)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialTriangulation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TriangulationJson::deserialize(d)?;
        let diagonals = raw.diagonals.into_iter().map(|(i, j, d)| ((i, j), d)).collect();
        PartialTriangulation::new(raw.k, diagonals).map_err(serde::de::Error::custom)
    }
}

/// Model of `L_k` in a partially triangulated `4k x 4k` grid.
///
/// Grid vertex `(i, j)` takes the corner `(k+2i, k+2j)`, its left and lower
/// neighbors, the two grid edges to them and their three loops. Grid edges
/// of `L_k` go to the grid edge leaving the corner to the right or upward.
pub fn lemma3_distance_minor(p: &PartialTriangulation) -> Result<MinorModel> {
    let side = p.base.k;
    if !side.is_multiple_of(4) {
        return Err(Error::invalid(format!("side {side} is not a multiple of 4")));
    }
    let k = side / 4;
    let grid = &p.base;
    let g = p.graph();
    let looped = g.with_loops()?;
    let target = GridGraph::new(k)?;
    let mut map: BTreeMap<EdgeId, Image> = looped.full().edge_ids().map(|e| (e, Image::Star)).collect();
    let grid_edge =
        |a: (usize, usize), b: (usize, usize)| grid.edge(grid.id(a.0, a.1), grid.id(b.0, b.1)).expect("grid edge");
    for i in 1..=k {
        for j in 1..=k {
            let img = Image::Vertex(target.id(i, j));
            let corner = (k + 2 * i, k + 2 * j);
            let left = (corner.0 - 1, corner.1);
            let below = (corner.0, corner.1 - 1);
            for (x, y) in [corner, left, below] {
                map.insert(looped.loop_of(grid.id(x, y)).expect("loop"), img);
            }
            map.insert(grid_edge(corner, left), img);
            map.insert(grid_edge(corner, below), img);
            if i < k {
                let f = target.edge(target.id(i, j), target.id(i + 1, j)).expect("target edge");
                map.insert(grid_edge(corner, (corner.0 + 1, corner.1)), Image::Edge(f));
            }
            if j < k {
                let f = target.edge(target.id(i, j), target.id(i, j + 1)).expect("target edge");
                map.insert(grid_edge(corner, (corner.0, corner.1 + 1)), Image::Edge(f));
            }
        }
    }
    Ok(MinorModel::new(looped, target.graph().clone(), map))
}

/// `L_k` with the edges leaving each vertex rightward and upward subdivided
/// `c` times in total, split at random between the two. Returns the graph
/// and its contraction back onto `L_k`, whose parts are the vertices together
/// with their subdivision chains, so every part spans at most `c` edges.
pub fn subdivided_grid(k: usize, c: usize, seed: u64) -> Result<(Multigraph, ContractionModel)> {
    let grid = GridGraph::new(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Multigraph::with_vertices(k * k);
    let mut owner_edges: Vec<(EdgeId, Image)> = Vec::new();
    for i in 1..=k {
        for j in 1..=k {
            let v = grid.id(i, j);
            let (right, up) = (i < k, j < k);
            let s_h = match (right, up) {
                (true, true) => rng.gen_range(0..=c),
                (true, false) => c,
                _ => 0,
            };
            let s_v = if up { c - s_h } else { 0 };
            for (present, count, w) in [(right, s_h, (i + 1, j)), (up, s_v, (i, j + 1))] {
                if !present {
                    continue;
                }
                let mut prev = v;
                for _ in 0..count {
                    let x = g.next_vertex_id();
                    g.add_vertex(x);
                    owner_edges.push((g.push_edge(prev, x)?, Image::Vertex(v)));
                    prev = x;
                }
                let w = grid.id(w.0, w.1);
                let f = grid.edge(v, w).expect("grid edge");
                owner_edges.push((g.push_edge(prev, w)?, Image::Edge(f)));
            }
        }
    }
    let looped = g.with_loops()?;
    let mut map: BTreeMap<EdgeId, Image> = owner_edges.into_iter().collect();
    let mut owner: BTreeMap<VertexId, VertexId> = grid.graph().vertices().map(|v| (v, v)).collect();
    for (e, a, b) in g.edges() {
        if let Image::Vertex(v) = map[&e] {
            owner.insert(a, v);
            owner.insert(b, v);
        }
    }
    for (&v, &e) in looped.loops() {
        map.insert(e, Image::Vertex(owner[&v]));
    }
    let model = ContractionModel::new(MinorModel::new(looped, grid.graph().clone(), map))?;
    Ok((g, model))
}

/// A certified grid minor.
#[derive(Clone, Debug)]
pub struct GridMinor {
    pub k: usize,
    pub model: Option<MinorModel>,
}

fn single_vertex_model(g: &Multigraph) -> Result<Option<MinorModel>> {
    let Some(v) = g.vertices().next() else {
        return Ok(None);
    };
    let simple = g.simplify();
    let witness = Witness {
        branch_sets: BTreeMap::from([(0, BTreeSet::from([v]))]),
        branch_edges: BTreeMap::new(),
    };
    model_from_witness(GridGraph::new(1)?.graph(), &simple, &witness).map(Some)
}

/// Largest `k <= k_max` for which a model of `L_k` in `g` is found.
///
/// Hosts within the oracle cap are searched exhaustively. Larger hosts are
/// shrunk by random edge contractions and searched with a node budget, so
/// the answer is a lower bound on the true value; every reported model is
/// validated against `g` itself.
pub fn bg_lower(g: &Multigraph, k_max: usize, limits: &Limits, seed: u64) -> Result<GridMinor> {
    let simple = g.simplify();
    let mut best = GridMinor { k: 0, model: None };
    if k_max == 0 {
        return Ok(best);
    }
    match single_vertex_model(&simple)? {
        Some(m) => {
            best = GridMinor { k: 1, model: Some(m) };
        }
        None => return Ok(best),
    }
    for k in 2..=k_max {
        let pattern = GridGraph::new(k)?;
        let witness = if simple.vertex_count() <= limits.minor_brute {
            is_minor_brute(pattern.graph(), &simple, limits.minor_brute)?
        } else {
            randomized_grid_search(
                pattern.graph(),
                &simple,
                limits,
                seed ^ (k as u64).wrapping_mul(0x9E37_79B9),
            )?
        };
        let Some(w) = witness else { break };
        let model = model_from_witness(pattern.graph(), &simple, &w)?;
        best = GridMinor { k, model: Some(model) };
    }
    Ok(best)
}

fn randomized_grid_search(h: &Multigraph, g: &Multigraph, limits: &Limits, seed: u64) -> Result<Option<Witness>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for round in 0..limits.bg_restarts.max(1) {
        // The first round keeps as much of the host as the bitmask search allows.
        let target = if round == 0 {
            64
        } else {
            rng.gen_range(h.vertex_count()..=64.max(h.vertex_count()))
        };
        let (small, classes) = random_shrink(g, target, &mut rng);
        if small.vertex_count() < h.vertex_count() {
            continue;
        }
        // Small branch sets first: a grid often sits in the host as a subgraph.
        for max_set in [Some(1), Some(2), None] {
            let budget = Some(limits.bg_search_budget);
            if let Outcome::Found(w) = search_bounded(h, &small, budget, Some(&mut rng), max_set)? {
                return Ok(Some(lift_witness(h, g, &w, &classes)));
            }
        }
    }
    Ok(None)
}

/// Contracts random edges until at most `target` vertices remain. Returns the
/// simple quotient and the class of every quotient vertex.
fn random_shrink(
    g: &Multigraph,
    target: usize,
    rng: &mut ChaCha8Rng,
) -> (Multigraph, BTreeMap<VertexId, BTreeSet<VertexId>>) {
    let mut current = g.clone();
    let mut classes: BTreeMap<VertexId, BTreeSet<VertexId>> = g.vertices().map(|v| (v, BTreeSet::from([v]))).collect();
    while current.vertex_count() > target && current.edge_count() > 0 {
        // Prefer merging small classes so the quotient stays balanced.
        let edges: Vec<(EdgeId, VertexId, VertexId)> = current.edges().collect();
        let pick = (0..4)
            .map(|_| edges[rng.gen_range(0..edges.len())])
            .min_by_key(|&(_, u, v)| classes[&u].len() + classes[&v].len())
            .expect("sampled edge");
        let (next, mapping) = current.contract_edge(pick.0).expect("ordinary edge");
        let mut merged: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for (old, new) in mapping {
            merged
                .entry(new)
                .or_default()
                .extend(classes.remove(&old).unwrap_or_default());
        }
        classes = merged;
        current = next;
    }
    (current, classes)
}

/// Expands quotient branch sets to their classes and picks, for every
/// pattern edge, the smallest host edge joining the two expanded sets.
fn lift_witness(
    h: &Multigraph,
    g: &Multigraph,
    w: &Witness,
    classes: &BTreeMap<VertexId, BTreeSet<VertexId>>,
) -> Witness {
    let branch_sets: BTreeMap<VertexId, BTreeSet<VertexId>> = w
        .branch_sets
        .iter()
        .map(|(&x, set)| (x, set.iter().flat_map(|q| classes[q].iter().copied()).collect()))
        .collect();
    let owner: BTreeMap<VertexId, VertexId> = branch_sets
        .iter()
        .flat_map(|(&x, set)| set.iter().map(move |&v| (v, x)))
        .collect();
    let mut branch_edges = BTreeMap::new();
    for (f, a, b) in h.edges() {
        let e = g.edges().find(|&(_, u, v)| {
            let (ou, ov) = (owner.get(&u), owner.get(&v));
            (ou == Some(&a) && ov == Some(&b)) || (ou == Some(&b) && ov == Some(&a))
        });
        if let Some((e, _, _)) = e {
            branch_edges.insert(f, e);
        }
    }
    Witness {
        branch_sets,
        branch_edges,
    }
}

/// Exact `bg` by exhaustive search over increasing `k`.
pub fn bg_exact_small(g: &Multigraph, cap: usize) -> Result<usize> {
    if g.vertex_count() > cap {
        return Err(Error::CapExceeded {
            what: "exact bg",
            size: g.vertex_count(),
            cap,
        });
    }
    if g.vertex_count() == 0 {
        return Ok(0);
    }
    let simple = g.simplify();
    let mut k = 1;
    while (k + 1) * (k + 1) <= simple.vertex_count() {
        let pattern = GridGraph::new(k + 1)?;
        if is_minor_brute(pattern.graph(), &simple, cap)?.is_none() {
            break;
        }
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{are_isomorphic, is_planar};
    use crate::minor::{validate_c_contraction, validate_distance_minor, validate_minor_model};

    fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn grid_sizes_and_ids() {
        for k in 1..6 {
            let g = make_grid(k).unwrap();
            assert_eq!(g.graph().vertex_count(), k * k);
            assert_eq!(g.graph().edge_count(), 2 * k * (k - 1));
        }
        let g = make_grid(3).unwrap();
        assert_eq!(g.id(2, 3), 5);
        assert_eq!(g.coords(5), (2, 3));
        assert_eq!(g.edge(g.id(1, 1), g.id(2, 1)), Some(0));
        assert_eq!(g.edge(g.id(1, 2), g.id(1, 1)), Some(1));
        assert!(make_grid(0).is_err());
    }

    #[test]
    fn triangulations_are_planar_and_round_trip() {
        for seed in 0..10 {
            let p = make_partial_triangulation(6, seed).unwrap();
            assert!(is_planar(p.graph()));
            assert_eq!(p.graph().edge_count(), 60 + p.diagonals().len());
            let text = serde_json::to_string(&p).unwrap();
            let back: PartialTriangulation = serde_json::from_str(&text).unwrap();
            assert_eq!(back, p);
        }
        assert_eq!(
            make_partial_triangulation(4, 9).unwrap(),
            make_partial_triangulation(4, 9).unwrap()
        );
    }

    #[test]
    fn distance_minor_models_validate() {
        for k in 1..=3 {
            for seed in 0..5 {
                let p = make_partial_triangulation(4 * k, seed).unwrap();
                let m = lemma3_distance_minor(&p).unwrap();
                assert_eq!(validate_distance_minor(&m).unwrap(), Ok(()));
                assert!(m.target().vertices().all(|v| m.branch_set(v).len() == 3));
            }
        }
        let full = BTreeMap::from_iter((1..8).flat_map(|i| (1..8).map(move |j| ((i, j), Diagonal::Falling))));
        let p = PartialTriangulation::new(8, full).unwrap();
        assert_eq!(
            validate_distance_minor(&lemma3_distance_minor(&p).unwrap()).unwrap(),
            Ok(())
        );
        assert!(lemma3_distance_minor(&make_partial_triangulation(6, 0).unwrap()).is_err());
    }

    #[test]
    fn subdivided_grids_contract_to_the_grid() {
        for c in 0..4 {
            let (g, psi) = subdivided_grid(4, c, c as u64).unwrap();
            assert_eq!(validate_c_contraction(psi.model(), c), Ok(()));
            assert_eq!(g.vertex_count(), 16 + 15 * c);
            assert!(are_isomorphic(psi.model().target(), make_grid(4).unwrap().graph()));
        }
    }

    #[test]
    fn exact_grid_values() {
        let limits = Limits::default();
        assert_eq!(
            bg_exact_small(make_grid(3).unwrap().graph(), limits.bg_exact).unwrap(),
            3
        );
        assert_eq!(bg_exact_small(&cycle(5), limits.bg_exact).unwrap(), 2);
        assert_eq!(
            bg_exact_small(&Multigraph::with_vertices(3), limits.bg_exact).unwrap(),
            1
        );
        assert_eq!(bg_exact_small(&Multigraph::new(), limits.bg_exact).unwrap(), 0);
        let tree = Multigraph::from_edges(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(bg_exact_small(&tree, limits.bg_exact).unwrap(), 1);
    }

    #[test]
    fn lower_bounds_come_with_valid_models() {
        let limits = Limits::default();
        let k4 = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let r = bg_lower(&k4, 4, &limits, 1).unwrap();
        assert_eq!(r.k, 2);
        assert_eq!(validate_minor_model(r.model.as_ref().unwrap()), Ok(()));

        let l5 = make_grid(5).unwrap();
        let r = bg_lower(l5.graph(), 5, &limits, 1).unwrap();
        assert_eq!(r.k, 5);
        let m = r.model.unwrap();
        assert_eq!(m.source().base(), l5.graph());
        assert_eq!(validate_minor_model(&m), Ok(()));

        let tree = Multigraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(bg_lower(&tree, 3, &limits, 0).unwrap().k, 1);
        assert_eq!(bg_lower(&Multigraph::new(), 3, &limits, 0).unwrap().k, 0);
    }
}
