use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use super::{validate_c_contraction, validate_minor_model, CContractionModel, ContractionModel, Image, MinorModel};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId, Witness};

/// Turns branch sets and branch edges into an edge-mapping model.
///
/// Each branch set contributes a BFS spanning tree (smallest ids first) and
/// the loops of its vertices; branch edges map to their pattern edge and all
/// remaining edges are discarded.
pub fn model_from_witness(h: &Multigraph, g: &Multigraph, witness: &Witness) -> Result<MinorModel> {
    if !h.is_simple() {
        return Err(Error::NotSimple("minor pattern".into()));
    }
    let looped = g.with_loops()?;
    let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for v in h.vertices() {
        let set = witness
            .branch_sets
            .get(&v)
            .filter(|s| !s.is_empty())
            .ok_or_else(|| Error::InvalidWitness(format!("no branch set for vertex {v}")))?;
        for &x in set {
            if !g.has_vertex(x) {
                return Err(Error::InvalidWitness(format!(
                    "branch set of {v} names unknown vertex {x}"
                )));
            }
            if let Some(w) = owner.insert(x, v) {
                return Err(Error::InvalidWitness(format!(
                    "branch sets of {w} and {v} share vertex {x}"
                )));
            }
        }
        if !g.induced(set).is_connected() {
            return Err(Error::InvalidWitness(format!("branch set of {v} is not connected")));
        }
    }
    if witness.branch_sets.len() != h.vertex_count() {
        return Err(Error::InvalidWitness("branch sets for unknown pattern vertices".into()));
    }

    let mut map: BTreeMap<EdgeId, Image> = looped.full().edge_ids().map(|e| (e, Image::Star)).collect();
    for (&v, set) in &witness.branch_sets {
        for &x in set {
            map.insert(looped.loop_of(x).expect("loop"), Image::Vertex(v));
        }
        for e in spanning_tree(g, set) {
            map.insert(e, Image::Vertex(v));
        }
    }
    for (f, a, b) in h.edges() {
        let e = *witness
            .branch_edges
            .get(&f)
            .ok_or_else(|| Error::InvalidWitness(format!("no branch edge for pattern edge {f}")))?;
        let (x, y) = g.endpoints(e).ok_or(Error::UnknownEdge(e))?;
        let (ox, oy) = (owner.get(&x), owner.get(&y));
        if !((ox == Some(&a) && oy == Some(&b)) || (ox == Some(&b) && oy == Some(&a))) {
            return Err(Error::InvalidWitness(format!(
                "edge {e} does not join the branch sets of {a} and {b}"
            )));
        }
        if map[&e] != Image::Star {
            return Err(Error::InvalidWitness(format!("edge {e} realizes two pattern edges")));
        }
        map.insert(e, Image::Edge(f));
    }
    let model = MinorModel::new(looped, h.clone(), map);
    validate_minor_model(&model).map_err(Error::InvalidModel)?;
    Ok(model)
}

fn spanning_tree(g: &Multigraph, set: &BTreeSet<VertexId>) -> Vec<EdgeId> {
    let sub = g.induced(set);
    let adj = sub.adjacency();
    let Some(&root) = set.iter().next() else {
        return Vec::new();
    };
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    let mut tree = Vec::new();
    while let Some(u) = queue.pop_front() {
        let mut next = adj[&u].clone();
        next.sort_by_key(|&(w, e)| (e, w));
        for (w, e) in next {
            if seen.insert(w) {
                tree.push(e);
                queue.push_back(w);
            }
        }
    }
    tree
}

/// Branch sets and branch edges of a valid model.
pub fn witness_from_model(m: &MinorModel) -> Result<Witness> {
    validate_minor_model(m).map_err(Error::InvalidModel)?;
    let mut witness = Witness::default();
    for v in m.target().vertices() {
        witness.branch_sets.insert(v, m.branch_set(v));
    }
    for f in m.target().edge_ids() {
        let e = *m.preimage(Image::Edge(f)).iter().next().expect("unique preimage");
        witness.branch_edges.insert(f, e);
    }
    Ok(witness)
}

/// Combines a contraction `A -> B` with a minor model `A -> C` into a minor
/// model `B -> C`.
///
/// Every edge of `C` needs exactly one preimage under the second model that
/// survives the contraction as an edge of `B`; that edge of `B` becomes its
/// new preimage. A vertex `v` of `C` takes the `B`-edges hit by its part
/// together with the loops of every `B`-vertex touched.
pub fn compose_models(psi1: &ContractionModel, psi2: &MinorModel) -> Result<MinorModel> {
    let (p1, p2) = (psi1.model(), psi2);
    if p1.source() != p2.source() {
        return Err(Error::Composition("models have different source graphs".into()));
    }
    validate_minor_model(p2).map_err(Error::InvalidModel)?;
    let b = p1.target();
    let c = p2.target();
    let b_looped = b.with_loops()?;

    let mut map: BTreeMap<EdgeId, Image> = b_looped.full().edge_ids().map(|e| (e, Image::Star)).collect();
    let mut eta: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for f in c.edge_ids() {
        let surviving: Vec<EdgeId> = p2
            .preimage(Image::Edge(f))
            .into_iter()
            .filter_map(|a| match p1.image(a) {
                Some(Image::Edge(be)) => Some(be),
                _ => None,
            })
            .collect();
        if surviving.len() != 1 {
            return Err(Error::Composition(format!(
                "edge {f} of the minor has {} preimages surviving the contraction",
                surviving.len()
            )));
        }
        let be = surviving[0];
        if let Some(other) = eta.insert(be, f) {
            return Err(Error::Composition(format!(
                "edges {other} and {f} both land on edge {be}"
            )));
        }
        map.insert(be, Image::Edge(f));
    }

    for v in c.vertices() {
        let mut touched: BTreeSet<VertexId> = BTreeSet::new();
        let mut edges: BTreeSet<EdgeId> = BTreeSet::new();
        for a in p2.vertex_preimage(v) {
            match p1.image(a) {
                Some(Image::Vertex(x)) => {
                    touched.insert(x);
                }
                Some(Image::Edge(be)) => {
                    edges.insert(be);
                    let (x, y) = b.endpoints(be).expect("edge of B");
                    touched.extend([x, y]);
                }
                _ => {}
            }
        }
        for be in edges {
            if eta.contains_key(&be) {
                return Err(Error::Composition(format!(
                    "edge {be} of B is claimed by vertex {v} and by an edge"
                )));
            }
            map.insert(be, Image::Vertex(v));
        }
        for x in touched {
            let l = b_looped.loop_of(x).expect("loop");
            if let Image::Vertex(w) = map[&l] {
                return Err(Error::Composition(format!("vertex {x} of B is claimed by {w} and {v}")));
            }
            map.insert(l, Image::Vertex(v));
        }
    }
    let model = MinorModel::new(b_looped, c.clone(), map);
    validate_minor_model(&model).map_err(Error::InvalidModel)?;
    Ok(model)
}

/// Checks a certificate that `g1` and `g2` are both `c`-contractions of `a`.
pub fn cdist_witness_check(a: &Multigraph, m1: &MinorModel, m2: &MinorModel, c: usize) -> bool {
    [m1, m2]
        .iter()
        .all(|m| m.source().base() == a && validate_c_contraction(m, c).is_ok())
}

/// Random contraction whose parts span at most `c` edges each. Parts grow
/// from random seeds by absorbing random free neighbors.
pub fn random_c_contraction<R: Rng + ?Sized>(g: &Multigraph, c: usize, rng: &mut R) -> Result<CContractionModel> {
    let adj = g.neighbor_sets();
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.shuffle(rng);
    let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for &seed in &order {
        if owner.contains_key(&seed) {
            continue;
        }
        let budget = rng.gen_range(0..=c);
        let mut part = BTreeSet::from([seed]);
        let mut inside = 0;
        loop {
            let mut options: Vec<(VertexId, usize)> = part
                .iter()
                .flat_map(|v| adj[v].iter().copied())
                .filter(|w| !owner.contains_key(w) && !part.contains(w))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .map(|w| {
                    let added = g
                        .edges()
                        .filter(|&(_, a, b)| (a == w && part.contains(&b)) || (b == w && part.contains(&a)))
                        .count();
                    (w, added)
                })
                .filter(|&(_, added)| inside + added <= budget)
                .collect();
            if options.is_empty() {
                break;
            }
            options.shuffle(rng);
            let (w, added) = options[0];
            part.insert(w);
            inside += added;
        }
        for &v in &part {
            owner.insert(v, seed);
        }
    }
    let inner: BTreeSet<EdgeId> = g
        .edges()
        .filter(|&(_, a, b)| a != b && owner[&a] == owner[&b])
        .map(|(e, _, _)| e)
        .collect();
    let (quotient, mapping) = g.contract_edge_set(&inner)?;
    CContractionModel::new(ContractionModel::from_quotient(g, &quotient, &mapping)?, c)
}
