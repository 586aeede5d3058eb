use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Dense, EdgeId, Multigraph, VertexId};
use crate::error::{Error, Result};

/// A vertex or an edge of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Elem {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// All-pairs BFS distances, answering element-to-element queries.
///
/// The distance of two elements is the number of edges of a shortest path
/// containing both. A loop is treated as its vertex, and two distinct
/// parallel edges have no common path.
#[derive(Clone, Debug)]
pub struct Distances<'g> {
    graph: &'g Multigraph,
    index: BTreeMap<VertexId, usize>,
    table: Vec<Vec<u32>>,
}

const INF: u32 = u32::MAX;

impl<'g> Distances<'g> {
    pub fn new(graph: &'g Multigraph) -> Self {
        let dense = Dense::new(graph);
        let n = dense.len();
        let mut table = vec![vec![INF; n]; n];
        let mut queue = VecDeque::new();
        for (s, row) in table.iter_mut().enumerate() {
            row[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let d = row[u] + 1;
                for &w in &dense.adj[u] {
                    if row[w] == INF {
                        row[w] = d;
                        queue.push_back(w);
                    }
                }
            }
        }
        Distances {
            graph,
            index: dense.index,
            table,
        }
    }

    pub fn vertex_distance(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let d = self.table[self.index[&u]][self.index[&v]];
        (d != INF).then_some(d as usize)
    }

    fn ends(&self, x: Elem) -> Result<Ends> {
        match x {
            Elem::Vertex(v) if self.graph.has_vertex(v) => Ok(Ends::Vertex(v)),
            Elem::Vertex(v) => Err(Error::UnknownVertex(v)),
            Elem::Edge(e) => match self.graph.endpoints(e) {
                Some((u, v)) if u == v => Ok(Ends::Vertex(u)),
                Some((u, v)) => Ok(Ends::Edge(e, u, v)),
                None => Err(Error::UnknownEdge(e)),
            },
        }
    }

    fn min_over(&self, a: &[VertexId], b: &[VertexId]) -> Option<usize> {
        a.iter()
            .flat_map(|&u| b.iter().map(move |&v| (u, v)))
            .filter_map(|(u, v)| self.vertex_distance(u, v))
            .min()
    }

    /// Element distance; `Ok(None)` stands for infinity.
    pub fn dist(&self, x: Elem, y: Elem) -> Result<Option<usize>> {
        Ok(match (self.ends(x)?, self.ends(y)?) {
            (Ends::Vertex(u), Ends::Vertex(v)) => self.vertex_distance(u, v),
            (Ends::Vertex(w), Ends::Edge(_, u, v)) | (Ends::Edge(_, u, v), Ends::Vertex(w)) => {
                if w == u || w == v {
                    Some(1)
                } else {
                    self.min_over(&[w], &[u, v]).map(|d| d + 1)
                }
            }
            (Ends::Edge(e, a, b), Ends::Edge(f, c, d)) => {
                if e == f {
                    Some(1)
                } else if (a, b) == (c, d) {
                    None
                } else {
                    self.min_over(&[a, b], &[c, d]).map(|d| d + 2)
                }
            }
        })
    }
}

enum Ends {
    Vertex(VertexId),
    Edge(EdgeId, VertexId, VertexId),
}

/// One-off element distance; build a [`Distances`] table for repeated queries.
pub fn dist(g: &Multigraph, x: Elem, y: Elem) -> Result<Option<usize>> {
    Distances::new(g).dist(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_distances_on_a_path() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(dist(&g, Elem::Edge(0), Elem::Edge(1)).unwrap(), Some(2));
        assert_eq!(dist(&g, Elem::Vertex(1), Elem::Vertex(1)).unwrap(), Some(0));
        assert_eq!(dist(&g, Elem::Edge(0), Elem::Edge(0)).unwrap(), Some(1));
        assert_eq!(dist(&g, Elem::Vertex(0), Elem::Edge(1)).unwrap(), Some(2));
        assert_eq!(dist(&g, Elem::Vertex(2), Elem::Edge(1)).unwrap(), Some(1));
    }

    #[test]
    fn disconnected_and_parallel_are_infinite() {
        let mut g = Multigraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(dist(&g, Elem::Vertex(0), Elem::Vertex(3)).unwrap(), None);
        assert_eq!(dist(&g, Elem::Edge(0), Elem::Edge(1)).unwrap(), None);
        g.push_edge(0, 1).unwrap();
        assert_eq!(dist(&g, Elem::Edge(0), Elem::Edge(2)).unwrap(), None);
        assert!(dist(&g, Elem::Edge(9), Elem::Edge(0)).is_err());
    }

    #[test]
    fn loops_behave_as_their_vertex() {
        let mut g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let l = g.push_edge(0, 0).unwrap();
        assert_eq!(dist(&g, Elem::Edge(l), Elem::Vertex(2)).unwrap(), Some(2));
        assert_eq!(dist(&g, Elem::Edge(l), Elem::Edge(0)).unwrap(), Some(1));
    }

    #[test]
    fn vertex_distances_match_bfs() {
        let g = Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)]).unwrap();
        let table = Distances::new(&g);
        for u in g.vertices() {
            let bfs = g.bfs(u);
            for v in g.vertices() {
                assert_eq!(table.vertex_distance(u, v), bfs.get(&v).copied());
            }
        }
    }
}
