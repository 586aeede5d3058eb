//! Moving a grid from a distance minor of `G` to a minor of a contraction of
//! `G`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{compose_models, validate_distance_minor, validate_minor_model, CContractionModel, Image, MinorModel};
use crate::error::{Error, Result};
use crate::graph::{Distances, EdgeId, Multigraph, VertexId};
use crate::gridminor::GridGraph;

/// Grid coordinates along one row or column, by position.
type Coord<'a> = Box<dyn Fn(usize) -> (usize, usize) + 'a>;

/// An `s`-`t` path through consecutive parts with a marked stretch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreadedPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// Index range into `edges` of the marked stretch.
    pub part: Range<usize>,
    /// Length the marked stretch is guaranteed to reach.
    pub bound: usize,
}

/// Threads a path from `s` in the first part to `t` in the last, crossing
/// every part once.
///
/// Parts are numbered from 1. The marked stretch runs from the edge entering
/// part `alpha` (when `alpha > 1`) to the edge leaving part `beta` (when
/// `beta < r`), so it has at least
/// `beta - alpha + [alpha > 1] + [beta < r]` edges and touches no edge inside
/// a part outside `alpha..=beta`.
pub fn threaded_path(
    g: &Multigraph,
    parts: &[BTreeSet<VertexId>],
    s: VertexId,
    t: VertexId,
    alpha: usize,
    beta: usize,
) -> Result<ThreadedPath> {
    let r = parts.len();
    if r == 0 || alpha < 1 || alpha > beta || beta > r {
        return Err(Error::Threading(format!(
            "need 1 <= alpha <= beta <= r, got {alpha}, {beta}, {r}"
        )));
    }
    if !parts[0].contains(&s) || !parts[r - 1].contains(&t) {
        return Err(Error::Threading("endpoints must lie in the first and last part".into()));
    }
    let mut owner: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            if !g.has_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
            if owner.insert(v, i).is_some() {
                return Err(Error::Threading(format!("vertex {v} lies in two parts")));
            }
        }
        if part.is_empty() || !g.induced(part).is_connected() {
            return Err(Error::Threading(format!("part {} is empty or disconnected", i + 1)));
        }
    }
    // Smallest-id edge from part i to part i+1, oriented forward.
    let mut links: Vec<Option<(EdgeId, VertexId, VertexId)>> = vec![None; r.saturating_sub(1)];
    for (e, u, v) in g.edges() {
        if let (Some(&a), Some(&b)) = (owner.get(&u), owner.get(&v)) {
            for (x, y, i, j) in [(u, v, a, b), (v, u, b, a)] {
                if j == i + 1 && links[i].is_none() {
                    links[i] = Some((e, x, y));
                }
            }
        }
    }
    if let Some(i) = links.iter().position(Option::is_none) {
        return Err(Error::Threading(format!(
            "no edge between parts {} and {}",
            i + 1,
            i + 2
        )));
    }

    let mut vertices = vec![s];
    let mut edges = Vec::new();
    let mut enter = s;
    let mut start_of = Vec::with_capacity(r);
    let mut link_index = Vec::with_capacity(r);
    for (i, part) in parts.iter().enumerate() {
        let exit = if i + 1 < r { links[i].expect("link").1 } else { t };
        start_of.push(edges.len());
        let (pv, pe) = shortest_path_within(g, part, enter, exit);
        vertices.extend(pv.into_iter().skip(1));
        edges.extend(pe);
        if i + 1 < r {
            let (e, _, y) = links[i].expect("link");
            link_index.push(edges.len());
            edges.push(e);
            vertices.push(y);
            enter = y;
        }
    }
    let first = if alpha >= 2 {
        link_index[alpha - 2]
    } else {
        start_of[alpha - 1]
    };
    let last = if beta < r {
        link_index[beta - 1] + 1
    } else {
        edges.len()
    };
    let bound = (beta - alpha) + usize::from(alpha >= 2) + usize::from(beta < r);
    debug_assert!(last - first >= bound);
    Ok(ThreadedPath {
        vertices,
        edges,
        part: first..last,
        bound,
    })
}

fn shortest_path_within(
    g: &Multigraph,
    part: &BTreeSet<VertexId>,
    from: VertexId,
    to: VertexId,
) -> (Vec<VertexId>, Vec<EdgeId>) {
    let adj = g.induced(part).adjacency();
    let mut prev: BTreeMap<VertexId, (VertexId, EdgeId)> = BTreeMap::new();
    let mut seen = BTreeSet::from([from]);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        let mut next = adj[&u].clone();
        next.sort_by_key(|&(w, e)| (w, e));
        for (w, e) in next {
            if w != u && seen.insert(w) {
                prev.insert(w, (u, e));
                queue.push_back(w);
            }
        }
    }
    let mut vs = vec![to];
    let mut es = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, e) = prev[&cur];
        vs.push(p);
        es.push(e);
        cur = p;
    }
    vs.reverse();
    es.reverse();
    (vs, es)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    Horizontal,
    Vertical,
}

/// Options for [`grid_transfer`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferOptions {
    /// For odd `c`, space the grid by `c` instead of `c + 1`.
    pub sharpen_odd: bool,
    /// Re-check the distance condition of the input model.
    pub check_distance: bool,
}

impl Default for TransferOptions {
    fn default() -> Self {
        TransferOptions {
            sharpen_odd: false,
            check_distance: true,
        }
    }
}

fn spacing(c: usize, options: &TransferOptions) -> usize {
    if options.sharpen_odd && c % 2 == 1 {
        c
    } else {
        c + 1
    }
}

/// Side of the grid obtained from an `L_k` distance minor under a
/// `c`-contraction: `floor((k-1) / (2s)) + 1` with spacing `s`.
pub fn transfer_side(k: usize, c: usize, options: &TransferOptions) -> usize {
    (k.max(1) - 1) / (2 * spacing(c, options)) + 1
}

/// A set of grid vertices on one connecting row or column, with the grid
/// edges of the same direction that touch it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct USet {
    pub direction: Direction,
    pub i: usize,
    pub j: usize,
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

/// Result of [`grid_transfer`].
#[derive(Clone, Debug)]
pub struct GridTransfer {
    pub k: usize,
    pub k_prime: usize,
    pub spacing: usize,
    /// `L_{k'}` as a minor of the contraction.
    pub model: MinorModel,
    /// `L_{k'}` as a minor of the source graph, before composition.
    pub tau: MinorModel,
    /// Source edge chosen for every edge of `L_{k'}`.
    pub connectors: BTreeMap<EdgeId, EdgeId>,
    pub u_sets: Vec<USet>,
}

/// Builds a model of `L_{k'}` in `H` from a `c`-contraction `sigma: G -> H`
/// and a distance-minor model `phi` of `L_k` in `G`.
///
/// `phi` must target the canonical grid of [`GridGraph::new`].
pub fn grid_transfer(sigma: &CContractionModel, phi: &MinorModel, options: TransferOptions) -> Result<GridTransfer> {
    if sigma.model().source() != phi.source() {
        return Err(Error::Transfer(
            "contraction and grid model have different sources".into(),
        ));
    }
    let n = phi.target().vertex_count();
    let k = (n as f64).sqrt().round() as usize;
    let grid = GridGraph::new(k.max(1))?;
    if grid.graph() != phi.target() {
        return Err(Error::Transfer("grid model must target the canonical grid".into()));
    }
    if options.check_distance {
        validate_distance_minor(phi)?.map_err(Error::InvalidModel)?;
    } else {
        validate_minor_model(phi).map_err(Error::InvalidModel)?;
    }

    let c = sigma.c();
    let sp = spacing(c, &options);
    let margin = sp.div_ceil(2);
    let k_prime = transfer_side(k, c, &options);
    let alpha = |i: usize| 2 * (i - 1) * sp + 1;
    debug_assert!(alpha(k_prime) <= k);

    let gl = phi.source();
    let g = gl.base();
    let branch = |x: usize, y: usize| phi.branch_set(grid.id(x, y));
    let part_edges = |x: usize, y: usize| -> BTreeSet<EdgeId> {
        phi.vertex_preimage(grid.id(x, y))
            .into_iter()
            .filter(|&e| !gl.is_added_loop(e))
            .collect()
    };
    let grid_edge_preimage = |a: VertexId, b: VertexId| -> EdgeId {
        let f = grid.edge(a, b).expect("grid edge");
        *phi.preimage(Image::Edge(f)).iter().next().expect("unique preimage")
    };

    let class = |v: VertexId| match sigma.model().image(gl.loop_of(v).expect("loop")) {
        Some(Image::Vertex(x)) => x,
        _ => unreachable!("contraction maps loops to vertices"),
    };

    let mut anchor: BTreeMap<(usize, usize), VertexId> = BTreeMap::new();
    for i in 1..=k_prime {
        for j in 1..=k_prime {
            let v = *branch(alpha(i), alpha(j)).iter().next().expect("non-empty branch set");
            anchor.insert((i, j), v);
        }
    }

    let target = grid_of(k_prime)?;
    let mut tau_vertices: BTreeMap<(usize, usize), BTreeSet<VertexId>> = BTreeMap::new();
    let mut tau_edges: BTreeMap<(usize, usize), BTreeSet<EdgeId>> = BTreeMap::new();
    for (&ij, &v) in &anchor {
        tau_vertices.entry(ij).or_default().insert(v);
    }
    let mut connectors = BTreeMap::new();
    let mut used_images = BTreeSet::new();
    let mut u_sets = Vec::new();

    for direction in [Direction::Horizontal, Direction::Vertical] {
        for i in 1..=k_prime {
            for j in 1..=k_prime {
                let (next, coord): ((usize, usize), Coord<'_>) = match direction {
                    Direction::Horizontal if i < k_prime => ((i + 1, j), Box::new(move |x| (x, alpha(j)))),
                    Direction::Vertical if j < k_prime => ((i, j + 1), Box::new(move |y| (alpha(i), y))),
                    _ => continue,
                };
                let lo = match direction {
                    Direction::Horizontal => alpha(i),
                    Direction::Vertical => alpha(j),
                };
                let hi = lo + 2 * sp;
                let mut parts = Vec::new();
                let mut keep = BTreeSet::new();
                for p in lo..=hi {
                    let (x, y) = coord(p);
                    parts.push(branch(x, y));
                    keep.extend(part_edges(x, y));
                    if p < hi {
                        let (x2, y2) = coord(p + 1);
                        keep.insert(grid_edge_preimage(grid.id(x, y), grid.id(x2, y2)));
                    }
                }
                let sub = g.edge_subgraph(&keep);
                let path = threaded_path(
                    &sub,
                    &parts,
                    anchor[&(i, j)],
                    anchor[&next],
                    margin + 1,
                    2 * sp + 1 - margin,
                )?;

                let u_vertices: BTreeSet<VertexId> = (lo + margin..=hi - margin)
                    .map(|p| {
                        let (x, y) = coord(p);
                        grid.id(x, y)
                    })
                    .collect();
                let u_edges: BTreeSet<EdgeId> = (lo + margin - 1..=hi - margin)
                    .map(|p| {
                        let ((x, y), (x2, y2)) = (coord(p), coord(p + 1));
                        grid.edge(grid.id(x, y), grid.id(x2, y2)).expect("grid edge")
                    })
                    .collect();
                u_sets.push(USet {
                    direction,
                    i,
                    j,
                    vertices: u_vertices,
                    edges: u_edges,
                });

                // Prefer a connector whose two sides share no contraction class.
                let surviving: Vec<usize> = path
                    .part
                    .clone()
                    .filter(|&q| matches!(sigma.model().image(path.edges[q]), Some(Image::Edge(_))))
                    .collect();
                let separated = |q: usize| {
                    let before: BTreeSet<VertexId> = path.vertices[..=q].iter().map(|&v| class(v)).collect();
                    path.vertices[q + 1..].iter().all(|&v| !before.contains(&class(v)))
                };
                let fresh = |q: usize| match sigma.model().image(path.edges[q]) {
                    Some(Image::Edge(b)) => !used_images.contains(&b),
                    _ => false,
                };
                let idx = surviving
                    .iter()
                    .copied()
                    .find(|&q| separated(q) && fresh(q))
                    .or_else(|| surviving.iter().copied().find(|&q| fresh(q)))
                    .or(surviving.first().copied());
                let Some(idx) = idx else {
                    return Err(Error::Transfer(format!(
                        "no contraction-surviving edge on the {direction:?} stretch at ({i}, {j})"
                    )));
                };
                let f = target
                    .edge(target_id(k_prime, i, j), target_id(k_prime, next.0, next.1))
                    .expect("target grid edge");
                if let Some(Image::Edge(b)) = sigma.model().image(path.edges[idx]) {
                    used_images.insert(b);
                }
                connectors.insert(f, path.edges[idx]);
                tau_edges.entry((i, j)).or_default().extend(&path.edges[..idx]);
                tau_vertices.entry((i, j)).or_default().extend(&path.vertices[..=idx]);
                tau_edges.entry(next).or_default().extend(&path.edges[idx + 1..]);
                tau_vertices.entry(next).or_default().extend(&path.vertices[idx + 1..]);
            }
        }
    }

    let mut map: BTreeMap<EdgeId, Image> = gl.full().edge_ids().map(|e| (e, Image::Star)).collect();
    let claim = |e: EdgeId, img: Image, map: &mut BTreeMap<EdgeId, Image>| -> Result<()> {
        match map.insert(e, img) {
            Some(Image::Star) | None => Ok(()),
            Some(old) if old == img => Ok(()),
            Some(old) => Err(Error::Transfer(format!(
                "source edge {e} claimed by {old:?} and {img:?}"
            ))),
        }
    };
    for (&(x, y), vs) in &tau_vertices {
        let img = Image::Vertex(target_id(k_prime, x, y));
        for &v in vs {
            claim(gl.loop_of(v).expect("loop"), img, &mut map)?;
        }
        for &e in tau_edges.get(&(x, y)).into_iter().flatten() {
            claim(e, img, &mut map)?;
        }
    }
    for (&f, &e) in &connectors {
        claim(e, Image::Edge(f), &mut map)?;
    }
    let tau = MinorModel::new(gl.clone(), target.graph().clone(), map);
    validate_minor_model(&tau).map_err(Error::InvalidModel)?;
    let model = compose_models(sigma.base(), &tau)?;
    Ok(GridTransfer {
        k,
        k_prime,
        spacing: sp,
        model,
        tau,
        connectors,
        u_sets,
    })
}

fn grid_of(k: usize) -> Result<GridGraph> {
    GridGraph::new(k)
}

fn target_id(k: usize, i: usize, j: usize) -> VertexId {
    (i - 1) * k + (j - 1)
}

/// Pairs of source edges that refute the disjoint-paths claim: edges mapped
/// into two different U-sets (or their edge sets) whose endpoints are joined
/// by two vertex-disjoint paths of length at most `c`.
pub fn claim_star_violations(phi: &MinorModel, u_sets: &[USet], c: usize) -> Vec<(EdgeId, EdgeId)> {
    let g = phi.source().base();
    let table = Distances::new(g);
    let adj = g.neighbor_sets();
    let members: Vec<Vec<(EdgeId, VertexId, VertexId)>> = u_sets
        .iter()
        .map(|u| {
            g.edges()
                .filter(|&(e, _, _)| match phi.image(e) {
                    Some(Image::Vertex(v)) => u.vertices.contains(&v),
                    Some(Image::Edge(f)) => u.edges.contains(&f),
                    _ => false,
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for a in 0..u_sets.len() {
        for b in a + 1..u_sets.len() {
            for &(e1, x1, y1) in &members[a] {
                for &(e2, x2, y2) in &members[b] {
                    if e1 == e2 {
                        continue;
                    }
                    let linked = [(x1, x2, y1, y2), (x1, y2, y1, x2)]
                        .into_iter()
                        .any(|(p, q, r, s)| disjoint_short_paths(&adj, &table, p, q, r, s, c));
                    if linked {
                        out.push((e1.min(e2), e1.max(e2)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn disjoint_short_paths(
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    table: &Distances<'_>,
    p: VertexId,
    q: VertexId,
    r: VertexId,
    s: VertexId,
    c: usize,
) -> bool {
    let near = |a, b| table.vertex_distance(a, b).is_some_and(|d| d <= c);
    if !near(p, q) || !near(r, s) {
        return false;
    }
    let mut path = vec![p];
    let mut found = false;
    enumerate_paths(adj, table, &mut path, q, c, &mut |used| {
        if used.contains(&r) || used.contains(&s) {
            return false;
        }
        found = bounded_path_avoiding(adj, r, s, c, used);
        found
    });
    found
}

fn enumerate_paths(
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    table: &Distances<'_>,
    path: &mut Vec<VertexId>,
    goal: VertexId,
    budget: usize,
    visit: &mut dyn FnMut(&[VertexId]) -> bool,
) -> bool {
    let last = *path.last().expect("non-empty path");
    if last == goal {
        return visit(path);
    }
    let used = path.len() - 1;
    for &w in &adj[&last] {
        if path.contains(&w) || table.vertex_distance(w, goal).is_none_or(|d| used + 1 + d > budget) {
            continue;
        }
        path.push(w);
        let done = enumerate_paths(adj, table, path, goal, budget, visit);
        path.pop();
        if done {
            return true;
        }
    }
    false
}

fn bounded_path_avoiding(
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    from: VertexId,
    to: VertexId,
    c: usize,
    avoid: &[VertexId],
) -> bool {
    let mut dist = BTreeMap::from([(from, 0usize)]);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            return true;
        }
        let d = dist[&u];
        if d == c {
            continue;
        }
        for &w in &adj[&u] {
            if !avoid.contains(&w) && !dist.contains_key(&w) {
                dist.insert(w, d + 1);
                queue.push_back(w);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Multigraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn singleton_parts_on_a_path() {
        // Parts {0}, {1}, {2} on the path 0-1-2.
        let g = path_graph(3);
        let parts: Vec<BTreeSet<VertexId>> = (0..3).map(|v| BTreeSet::from([v])).collect();
        let p = threaded_path(&g, &parts, 0, 2, 1, 3).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2]);
        assert_eq!(p.part, 0..2);
        assert_eq!(p.bound, 2);
        let inner = threaded_path(&g, &parts, 0, 2, 2, 2).unwrap();
        assert_eq!(inner.part, 0..2);
        assert_eq!(inner.bound, 2);
    }

    #[test]
    fn marked_part_reaches_the_bound_for_interior_ranges() {
        // Parts of two vertices each along a path of 10 vertices.
        let g = path_graph(10);
        let parts: Vec<BTreeSet<VertexId>> = (0..5).map(|i| BTreeSet::from([2 * i, 2 * i + 1])).collect();
        for alpha in 1..=5 {
            for beta in alpha..=5 {
                let p = threaded_path(&g, &parts, 0, 9, alpha, beta).unwrap();
                assert_eq!(p.edges.len(), 9);
                assert!(p.part.len() >= p.bound);
                assert!(p.part.len() >= beta - alpha);
                for q in p.part.clone() {
                    let (u, v) = g.endpoints(p.edges[q]).unwrap();
                    let (a, b) = (u / 2 + 1, v / 2 + 1);
                    if a == b {
                        assert!((alpha..=beta).contains(&a));
                    }
                }
            }
        }
        let p = threaded_path(&g, &parts, 0, 9, 2, 4).unwrap();
        assert_eq!(p.bound, 4);
        // e_1, P_2, e_2, P_3, e_3, P_4, e_4 with one edge inside each part.
        assert_eq!(p.part.len(), 7);
    }

    #[test]
    fn disconnected_part_is_rejected() {
        let g = path_graph(4);
        let parts = vec![BTreeSet::from([0, 2]), BTreeSet::from([1, 3])];
        assert!(matches!(
            threaded_path(&g, &parts, 0, 3, 1, 2),
            Err(Error::Threading(_))
        ));
        let parts = vec![BTreeSet::from([0]), BTreeSet::from([2, 3])];
        assert!(matches!(
            threaded_path(&g, &parts, 0, 3, 1, 2),
            Err(Error::Threading(_))
        ));
    }

    #[test]
    fn transfer_sides() {
        let odd = TransferOptions {
            sharpen_odd: true,
            ..TransferOptions::default()
        };
        assert_eq!(transfer_side(21, 5, &odd), 3);
        assert_eq!(transfer_side(21, 5, &TransferOptions::default()), 2);
        assert_eq!(transfer_side(9, 0, &TransferOptions::default()), 5);
        assert_eq!(transfer_side(9, 1, &TransferOptions::default()), 3);
        assert_eq!(transfer_side(1, 3, &TransferOptions::default()), 1);
    }

    fn sharpened() -> TransferOptions {
        TransferOptions {
            sharpen_odd: true,
            ..TransferOptions::default()
        }
    }

    fn run_on_subdivided_grid(k: usize, c: usize, seed: u64, options: TransferOptions) -> (GridTransfer, MinorModel) {
        use rand::SeedableRng;
        let (g, phi) = crate::gridminor::subdivided_grid(k, c, seed).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let sigma = crate::minor::random_c_contraction(&g, c, &mut rng).unwrap();
        let t = grid_transfer(&sigma, phi.model(), options).unwrap();
        (t, phi.into_model())
    }

    #[test]
    fn transfer_on_subdivided_grids() {
        for (k, c) in [(3, 1), (5, 1), (7, 2), (9, 2), (11, 5)] {
            for seed in 0..3 {
                let (t, phi) = run_on_subdivided_grid(k, c, seed, TransferOptions::default());
                assert_eq!(t.k_prime, transfer_side(k, c, &TransferOptions::default()));
                assert_eq!(validate_minor_model(&t.model), Ok(()));
                assert_eq!(validate_minor_model(&t.tau), Ok(()));
                assert_eq!(t.model.target(), GridGraph::new(t.k_prime).unwrap().graph());
                assert!(claim_star_violations(&phi, &t.u_sets, c).is_empty());
            }
        }
    }

    #[test]
    fn sharpened_spacing_for_odd_c() {
        let (t, _) = run_on_subdivided_grid(21, 5, 1, sharpened());
        assert_eq!(t.k_prime, 3);
        assert_eq!(t.spacing, 5);
        assert_eq!(validate_minor_model(&t.model), Ok(()));
    }

    #[test]
    fn transferred_grid_is_confirmed_by_the_oracle() {
        for seed in 0..5 {
            let (t, _) = run_on_subdivided_grid(3, 1, seed, sharpened());
            assert_eq!(t.k_prime, 2);
            let h = t.model.source().base();
            if h.vertex_count() <= 20 {
                let found = crate::graph::is_minor_brute(t.model.target(), h, 20).unwrap();
                assert!(found.is_some());
            }
        }
    }

    #[test]
    fn transfer_on_triangulated_grids() {
        use rand::SeedableRng;
        for (side, c, options) in [(28, 2, TransferOptions::default()), (28, 3, sharpened())] {
            for seed in 0..5 {
                let p = crate::gridminor::make_partial_triangulation(side, seed).unwrap();
                let phi = crate::gridminor::lemma3_distance_minor(&p).unwrap();
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let sigma = crate::minor::random_c_contraction(p.graph(), c, &mut rng).unwrap();
                let t = grid_transfer(&sigma, &phi, options).unwrap();
                assert_eq!(t.k_prime, 2);
                assert_eq!(validate_minor_model(&t.model), Ok(()));
                assert!(claim_star_violations(&phi, &t.u_sets, c).is_empty());
            }
        }
    }

    #[test]
    fn mismatched_sources_are_rejected() {
        let (g, phi) = crate::gridminor::subdivided_grid(3, 1, 0).unwrap();
        let (other, _) = crate::gridminor::subdivided_grid(3, 1, 1).unwrap();
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let sigma = crate::minor::random_c_contraction(&other, 1, &mut rng).unwrap();
        if other != g {
            assert!(matches!(
                grid_transfer(&sigma, phi.model(), TransferOptions::default()),
                Err(Error::Transfer(_))
            ));
        }
    }
}
