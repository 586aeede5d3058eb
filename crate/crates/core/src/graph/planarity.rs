use std::collections::BTreeMap;

use petgraph::graph::UnGraph;

use super::{Multigraph, VertexId};

/// Left-right planarity test on the simplified graph.
pub fn is_planar(g: &Multigraph) -> bool {
    let simple = g.simplify();
    if simple.vertex_count() < 5 {
        return true;
    }
    if simple.vertex_count() >= 3 && simple.edge_count() > 3 * simple.vertex_count() - 6 {
        return false;
    }
    let index: BTreeMap<VertexId, u32> = simple.vertices().enumerate().map(|(i, v)| (v, i as u32)).collect();
    let mut pg = UnGraph::<(), ()>::with_capacity(simple.vertex_count(), simple.edge_count());
    for _ in 0..simple.vertex_count() {
        pg.add_node(());
    }
    pg.extend_with_edges(simple.edges().map(|(_, u, v)| (index[&u], index[&v])));
    rustworkx_core::planar::is_planar(&pg)
}
