//! Tree decompositions and treewidth bounds.
//!
//! All routines work on the simple view of the input: loops and parallel
//! edges do not change treewidth.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexId};
use crate::minor::{validate_contraction_model, CContractionModel};

pub type NodeId = usize;

/// A tree with a bag of graph vertices at every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    tree: Multigraph,
    bags: BTreeMap<NodeId, BTreeSet<VertexId>>,
}

impl TreeDecomposition {
    pub fn new(tree: Multigraph, bags: BTreeMap<NodeId, BTreeSet<VertexId>>) -> Self {
        TreeDecomposition { tree, bags }
    }

    /// One bag holding every vertex.
    pub fn trivial(g: &Multigraph) -> Self {
        TreeDecomposition {
            tree: Multigraph::with_vertices(1),
            bags: BTreeMap::from([(0, g.vertex_set().clone())]),
        }
    }

    pub fn tree(&self) -> &Multigraph {
        &self.tree
    }

    pub fn bags(&self) -> &BTreeMap<NodeId, BTreeSet<VertexId>> {
        &self.bags
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.bags
            .values()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }
}

/// Which property of a tree decomposition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionViolation {
    /// 0 when the tree itself is malformed, else the property number:
    /// (1) coverage, (2) edges, (3) connectivity of occurrences.
    pub property: u8,
    pub message: String,
}

pub fn validate_decomposition(
    g: &Multigraph,
    d: &TreeDecomposition,
) -> std::result::Result<(), DecompositionViolation> {
    let fail = |property: u8, message: String| Err(DecompositionViolation { property, message });
    let t = &d.tree;
    if t.vertex_count() == 0 {
        return fail(0, "the tree has no nodes".into());
    }
    if t.edges().any(|(_, a, b)| a == b) || t.edge_count() + 1 != t.vertex_count() || !t.is_connected() {
        return fail(0, "the node graph is not a tree".into());
    }
    if d.bags.keys().copied().collect::<BTreeSet<_>>() != *t.vertex_set() {
        return fail(0, "bags and tree nodes differ".into());
    }
    for (node, bag) in &d.bags {
        if let Some(v) = bag.iter().find(|v| !g.has_vertex(**v)) {
            return fail(0, format!("bag {node} holds unknown vertex {v}"));
        }
    }
    let covered: BTreeSet<VertexId> = d.bags.values().flatten().copied().collect();
    if let Some(v) = g.vertices().find(|v| !covered.contains(v)) {
        return fail(1, format!("vertex {v} is in no bag"));
    }
    for (e, u, v) in g.edges() {
        if !d.bags.values().any(|b| b.contains(&u) && b.contains(&v)) {
            return fail(2, format!("no bag holds both ends of edge {e} ({u}, {v})"));
        }
    }
    for v in g.vertices() {
        let nodes: BTreeSet<NodeId> = d.bags.iter().filter(|(_, b)| b.contains(&v)).map(|(&n, _)| n).collect();
        if !t.induced(&nodes).is_connected() {
            return fail(3, format!("bags holding vertex {v} are not connected in the tree"));
        }
    }
    Ok(())
}

/// Decomposition of the elimination game along `order`. Each vertex gets the
/// bag of itself and its later fill-graph neighbors and hangs below the first
/// of those neighbors to be eliminated.
pub fn decomposition_from_order(g: &Multigraph, order: &[VertexId]) -> TreeDecomposition {
    if order.is_empty() {
        return TreeDecomposition::trivial(g);
    }
    let position: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = g.neighbor_sets();
    let mut bags = BTreeMap::new();
    let mut tree = Multigraph::with_vertices(order.len());
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: BTreeSet<VertexId> = adj[&v].iter().copied().filter(|w| position[w] > i).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    adj.get_mut(&a).expect("vertex").insert(b);
                }
            }
        }
        match later.iter().min_by_key(|w| position[*w]) {
            Some(w) => {
                tree.push_edge(i, position[w]).expect("tree node");
            }
            None => roots.push(i),
        }
        let mut bag = later;
        bag.insert(v);
        bags.insert(i, bag);
    }
    for pair in roots.windows(2) {
        tree.push_edge(pair[0], pair[1]).expect("tree node");
    }
    TreeDecomposition { tree, bags }
}

/// Exact treewidth by dynamic programming over vertex subsets: the best
/// width for eliminating a set `S` first is the minimum over its last vertex
/// `v` of the width for `S - v` and the number of vertices outside `S`
/// reachable from `v` through `S`.
pub fn treewidth_exact(g: &Multigraph, cap: usize) -> Result<(usize, TreeDecomposition)> {
    let n = g.vertex_count();
    if n > cap.min(25) {
        return Err(Error::CapExceeded {
            what: "exact treewidth",
            size: n,
            cap: cap.min(25),
        });
    }
    if n == 0 {
        return Ok((0, TreeDecomposition::trivial(g)));
    }
    let ids: Vec<VertexId> = g.vertices().collect();
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![0u32; n];
    for (_, u, v) in g.edges() {
        if u != v {
            adj[index[&u]] |= 1 << index[&v];
            adj[index[&v]] |= 1 << index[&u];
        }
    }
    let q_size = |s: u32, v: usize| -> u8 {
        let inside = s | (1 << v);
        let mut comp = 1u32 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                let b = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[b];
            }
            next &= s & !comp;
            comp |= next;
            frontier = next;
        }
        let mut nbr = 0u32;
        let mut c = comp;
        while c != 0 {
            let b = c.trailing_zeros() as usize;
            c &= c - 1;
            nbr |= adj[b];
        }
        (nbr & !inside).count_ones() as u8
    };
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    // tw[s] + 1, with 0 standing for the empty set.
    let mut best = vec![u8::MAX; 1usize << n];
    let mut choice = vec![0u8; 1usize << n];
    best[0] = 0;
    for s in 1..=full {
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = s & !(1 << v);
            let cand = best[rest as usize].max(q_size(rest, v) + 1);
            if cand < best[s as usize] {
                best[s as usize] = cand;
                choice[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(ids[v]);
        s &= !(1 << v);
    }
    order.reverse();
    let width = (best[full as usize] - 1) as usize;
    let d = decomposition_from_order(&g.simplify(), &order);
    debug_assert_eq!(d.width(), width);
    Ok((width, d))
}

/// Greedy minimum fill-in elimination, ties broken by degree, then id.
pub fn treewidth_upper(g: &Multigraph) -> (usize, TreeDecomposition) {
    let simple = g.simplify();
    let mut adj = simple.neighbor_sets();
    let mut order = Vec::with_capacity(simple.vertex_count());
    while !adj.is_empty() {
        let v = *adj
            .iter()
            .min_by_key(|(&v, ns)| {
                let list: Vec<VertexId> = ns.iter().copied().collect();
                let mut fill = 0usize;
                for (i, a) in list.iter().enumerate() {
                    for b in &list[i + 1..] {
                        if !adj[a].contains(b) {
                            fill += 1;
                        }
                    }
                }
                (fill, ns.len(), v)
            })
            .expect("vertex")
            .0;
        let ns = adj.remove(&v).expect("vertex");
        for &a in &ns {
            let entry = adj.get_mut(&a).expect("vertex");
            entry.remove(&v);
            entry.extend(ns.iter().copied().filter(|&b| b != a));
        }
        order.push(v);
    }
    let d = decomposition_from_order(&simple, &order);
    (d.width(), d)
}

/// Contraction degeneracy bound: repeatedly take a vertex of minimum degree,
/// record its degree and contract it into the neighbor sharing the fewest
/// neighbors with it. The largest recorded degree bounds treewidth from
/// below, since minors never have larger treewidth.
pub fn treewidth_lower(g: &Multigraph) -> usize {
    let mut adj = g.simplify().neighbor_sets();
    let mut bound = 0;
    while adj.len() > 1 {
        let (&v, ns) = adj.iter().min_by_key(|(&v, ns)| (ns.len(), v)).expect("vertex");
        bound = bound.max(ns.len());
        let ns = ns.clone();
        match ns
            .iter()
            .min_by_key(|&&w| (adj[&w].intersection(&ns).count(), w))
            .copied()
        {
            Some(w) => {
                adj.remove(&v);
                for &a in &ns {
                    let entry = adj.get_mut(&a).expect("vertex");
                    entry.remove(&v);
                    if a != w {
                        entry.insert(w);
                    }
                }
                let merged: BTreeSet<VertexId> = ns.iter().copied().filter(|&a| a != w).collect();
                adj.get_mut(&w).expect("vertex").extend(merged);
            }
            None => {
                adj.remove(&v);
            }
        }
    }
    bound
}

/// Replaces every vertex of the contraction by its part. Widths grow to at
/// most `(c + 1)(w + 1) - 1`.
pub fn lift_decomposition(d: &TreeDecomposition, psi: &CContractionModel) -> Result<TreeDecomposition> {
    let m = psi.model();
    validate_contraction_model(m).map_err(Error::InvalidModel)?;
    validate_decomposition(m.target(), d).map_err(|v| Error::InvalidDecomposition(v.message))?;
    let parts: BTreeMap<VertexId, BTreeSet<VertexId>> = psi.base().parts();
    let bags = d
        .bags
        .iter()
        .map(|(&t, bag)| (t, bag.iter().flat_map(|x| parts[x].iter().copied()).collect()))
        .collect();
    Ok(TreeDecomposition {
        tree: d.tree.clone(),
        bags,
    })
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    nodes: Vec<NodeId>,
    tree_edges: Vec<[NodeId; 2]>,
    bags: BTreeMap<NodeId, Vec<VertexId>>,
}

impl Serialize for TreeDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionJson {
            nodes: self.tree.vertices().collect(),
            tree_edges: self.tree.edges().map(|(_, a, b)| [a, b]).collect(),
            bags: self
                .bags
                .iter()
                .map(|(&t, b)| (t, b.iter().copied().collect()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TreeDecomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DecompositionJson::deserialize(d)?;
        let mut tree = Multigraph::new();
        for n in raw.nodes {
            tree.add_vertex(n);
        }
        for [a, b] in raw.tree_edges {
            tree.push_edge(a, b).map_err(serde::de::Error::custom)?;
        }
        let bags = raw
            .bags
            .into_iter()
            .map(|(t, b)| (t, b.into_iter().collect()))
            .collect();
        Ok(TreeDecomposition { tree, bags })
    }
}

/// Breadth-first order of the tree nodes from the smallest node, with each
/// node's parent (`None` for the root).
pub(crate) fn rooted_order(d: &TreeDecomposition) -> Vec<(NodeId, Option<NodeId>)> {
    let adj = d.tree.neighbor_sets();
    let Some(root) = d.tree.vertices().next() else {
        return Vec::new();
    };
    let mut out = vec![(root, None)];
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[&u] {
            if seen.insert(w) {
                out.push((w, Some(u)));
                queue.push_back(w);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridminor::make_grid;

    fn complete(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    fn path(n: usize) -> Multigraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn trivial_and_path_decompositions() {
        let g = complete(4);
        let d = TreeDecomposition::trivial(&g);
        assert_eq!(validate_decomposition(&g, &d), Ok(()));
        assert_eq!(d.width(), 3);

        let p4 = path(4);
        let tree = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let bags = BTreeMap::from([(0, [0, 1].into()), (1, [1, 2].into()), (2, [2, 3].into())]);
        let d = TreeDecomposition::new(tree.clone(), bags);
        assert_eq!(validate_decomposition(&p4, &d), Ok(()));
        assert_eq!(d.width(), 1);

        let missing = TreeDecomposition::new(
            tree,
            BTreeMap::from([(0, [0, 1].into()), (1, [1].into()), (2, [2, 3].into())]),
        );
        assert_eq!(validate_decomposition(&p4, &missing).unwrap_err().property, 2);
    }

    #[test]
    fn broken_occurrence_subtree() {
        let p3 = path(3);
        let tree = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let bags = BTreeMap::from([(0, [0, 1].into()), (1, [1, 2].into()), (2, [0].into())]);
        let err = validate_decomposition(&p3, &TreeDecomposition::new(tree, bags)).unwrap_err();
        assert_eq!(err.property, 3);
    }

    #[test]
    fn exact_values() {
        assert_eq!(treewidth_exact(&path(6), 16).unwrap().0, 1);
        assert_eq!(treewidth_exact(&complete(5), 16).unwrap().0, 4);
        let l3 = make_grid(3).unwrap();
        let (w, d) = treewidth_exact(l3.graph(), 16).unwrap();
        assert_eq!(w, 3);
        assert_eq!(validate_decomposition(l3.graph(), &d), Ok(()));
        assert!(matches!(treewidth_exact(&path(17), 16), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn upper_and_lower_bounds() {
        assert_eq!(treewidth_upper(&path(5)).0, 1);
        assert_eq!(treewidth_upper(&complete(6)).0, 5);
        let l4 = make_grid(4).unwrap();
        let (w, d) = treewidth_upper(l4.graph());
        assert!((4..=6).contains(&w));
        assert_eq!(validate_decomposition(l4.graph(), &d), Ok(()));
        assert_eq!(treewidth_exact(l4.graph(), 16).unwrap().0, 4);

        assert!(treewidth_lower(&complete(5)) >= 4);
        assert_eq!(treewidth_lower(&path(5)), 1);
        let l3 = make_grid(3).unwrap();
        let lb = treewidth_lower(l3.graph());
        assert!((2..=3).contains(&lb));
    }

    #[test]
    fn empty_and_edgeless_graphs() {
        assert_eq!(treewidth_exact(&Multigraph::new(), 16).unwrap().0, 0);
        let iso = Multigraph::with_vertices(3);
        let (w, d) = treewidth_exact(&iso, 16).unwrap();
        assert_eq!(w, 0);
        assert_eq!(validate_decomposition(&iso, &d), Ok(()));
        assert_eq!(treewidth_lower(&iso), 0);
    }

    #[test]
    fn json_round_trip() {
        let (_, d) = treewidth_upper(&path(4));
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.starts_with(r#"{"nodes":"#));
        let back: TreeDecomposition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }
}
