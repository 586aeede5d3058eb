use std::collections::BTreeMap;

use petgraph::graph::UnGraph;

use super::{Multigraph, VertexId};

fn to_petgraph(g: &Multigraph) -> UnGraph<(), ()> {
    let index: BTreeMap<VertexId, u32> = g.vertices().enumerate().map(|(i, v)| (v, i as u32)).collect();
    let mut out = UnGraph::with_capacity(g.vertex_count(), g.edge_count());
    for _ in 0..g.vertex_count() {
        out.add_node(());
    }
    out.extend_with_edges(g.edges().map(|(_, u, v)| (index[&u], index[&v])));
    out
}

/// Isomorphism test (VF2), respecting edge multiplicities and loops.
pub fn are_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && petgraph::algo::is_isomorphic(&to_petgraph(a), &to_petgraph(b))
}

/// Checks that `map` is a bijection `V(a) -> V(b)` carrying the edge multiset
/// of `a` exactly onto that of `b`.
pub fn check_isomorphism(a: &Multigraph, b: &Multigraph, map: &BTreeMap<VertexId, VertexId>) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    if map.len() != a.vertex_count() || !a.vertices().all(|v| map.get(&v).is_some_and(|w| b.has_vertex(*w))) {
        return false;
    }
    let mut image: Vec<VertexId> = map.values().copied().collect();
    image.sort_unstable();
    image.dedup();
    if image.len() != b.vertex_count() {
        return false;
    }
    let key = |u: VertexId, v: VertexId| (u.min(v), u.max(v));
    let mut count: BTreeMap<(VertexId, VertexId), isize> = BTreeMap::new();
    for (_, u, v) in a.edges() {
        *count.entry(key(map[&u], map[&v])).or_default() += 1;
    }
    for (_, u, v) in b.edges() {
        *count.entry(key(u, v)).or_default() -= 1;
    }
    count.values().all(|&c| c == 0)
}
