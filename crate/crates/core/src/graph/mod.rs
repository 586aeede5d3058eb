//! Multigraphs with loops, contractions and element distances.
//!
//! Vertex and edge ids are stable integers. Every operation returns a new
//! graph; nothing is mutated behind a shared reference.

mod distance;
mod iso;
pub mod minor_brute;
mod planarity;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use distance::{dist, Distances, Elem};
pub use iso::{are_isomorphic, check_isomorphism};
pub use minor_brute::{is_minor_brute, Witness};
pub use planarity::is_planar;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Undirected multigraph. A loop is an edge whose endpoints coincide.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Multigraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` without edges.
    pub fn with_vertices(n: usize) -> Self {
        Multigraph {
            vertices: (0..n).collect(),
            edges: BTreeMap::new(),
        }
    }

    /// Simple graph on `0..n` from an edge list; edge ids follow list order.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.push_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        self.vertices.insert(v)
    }

    pub fn add_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if !self.vertices.contains(&u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.vertices.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        if self.edges.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        self.edges.insert(id, (u.min(v), u.max(v)));
        Ok(())
    }

    /// Adds an edge with the next free id and returns that id.
    pub fn push_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let id = self.next_edge_id();
        self.add_edge(id, u, v)?;
        Ok(id)
    }

    pub fn next_edge_id(&self) -> EdgeId {
        self.edges.keys().next_back().map_or(0, |&e| e + 1)
    }

    pub fn next_vertex_id(&self) -> VertexId {
        self.vertices.iter().next_back().map_or(0, |&v| v + 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    /// `(id, u, v)` with `u <= v`, ordered by id.
    pub fn edges(&self) -> impl DoubleEndedIterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(u, v))| (e, u, v))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        matches!(self.edges.get(&e), Some((u, v)) if u == v)
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.values().all(|&(u, v)| u != v && seen.insert((u, v)))
    }

    /// Smallest edge id joining `u` and `v`, if any.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().find_map(|(&e, &ends)| (ends == key).then_some(e))
    }

    /// Neighbor lists (with multiplicity, loops listed once) keyed by vertex.
    pub fn adjacency(&self) -> BTreeMap<VertexId, Vec<(VertexId, EdgeId)>> {
        let mut adj: BTreeMap<VertexId, Vec<(VertexId, EdgeId)>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for (&e, &(u, v)) in &self.edges {
            adj.get_mut(&u).expect("endpoint").push((v, e));
            if u != v {
                adj.get_mut(&v).expect("endpoint").push((u, e));
            }
        }
        adj
    }

    /// Distinct neighbors of every vertex, loops ignored.
    pub fn neighbor_sets(&self) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            self.vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        for &(u, v) in self.edges.values() {
            if u != v {
                adj.get_mut(&u).expect("endpoint").insert(v);
                adj.get_mut(&v).expect("endpoint").insert(u);
            }
        }
        adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .values()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbor_sets().values().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Drops loops and keeps the smallest id among parallel edges.
    pub fn simplify(&self) -> Multigraph {
        let mut seen = BTreeSet::new();
        let edges = self
            .edges
            .iter()
            .filter(|(_, &(u, v))| u != v && seen.insert((u, v)))
            .map(|(&e, &ends)| (e, ends))
            .collect();
        Multigraph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// Subgraph induced by `keep` (edge ids preserved).
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Multigraph {
        Multigraph {
            vertices: self.vertices.intersection(keep).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(_, (u, v))| keep.contains(u) && keep.contains(v))
                .map(|(&e, &ends)| (e, ends))
                .collect(),
        }
    }

    /// Subgraph on all vertices with only the listed edges.
    pub fn edge_subgraph(&self, keep: &BTreeSet<EdgeId>) -> Multigraph {
        Multigraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .filter(|(e, _)| keep.contains(e))
                .map(|(&e, &ends)| (e, ends))
                .collect(),
        }
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let adj = self.neighbor_sets();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[&u] {
                    if seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS distances from `source`; unreachable vertices are absent.
    pub fn bfs(&self, source: VertexId) -> BTreeMap<VertexId, usize> {
        let adj = self.neighbor_sets();
        let mut dist = BTreeMap::from([(source, 0)]);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            for &w in &adj[&u] {
                dist.entry(w).or_insert_with(|| {
                    queue.push_back(w);
                    d + 1
                });
            }
        }
        dist
    }

    /// Contracts a single non-loop edge. The merged vertex keeps the smaller
    /// endpoint id; loops and parallel edges created by the merge are deleted.
    pub fn contract_edge(&self, e: EdgeId) -> Result<(Multigraph, BTreeMap<VertexId, VertexId>)> {
        let (u, v) = self.endpoints(e).ok_or(Error::UnknownEdge(e))?;
        if u == v {
            return Err(Error::LoopContraction(e));
        }
        Ok(self.quotient(|x| if x == v { u } else { x }))
    }

    /// Contracts every edge of `set`. Each merged class is named by its
    /// smallest vertex id, so the result does not depend on any order.
    pub fn contract_edge_set(&self, set: &BTreeSet<EdgeId>) -> Result<(Multigraph, BTreeMap<VertexId, VertexId>)> {
        let index: BTreeMap<VertexId, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let ids: Vec<VertexId> = self.vertices.iter().copied().collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &e in set {
            let (u, v) = self.endpoints(e).ok_or(Error::UnknownEdge(e))?;
            if u == v {
                return Err(Error::LoopContraction(e));
            }
            let (a, b) = (find(&mut parent, index[&u]), find(&mut parent, index[&v]));
            // Indices follow id order, so the smaller root is the smaller id.
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let rep: BTreeMap<VertexId, VertexId> = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, ids[find(&mut parent, i)]))
            .collect();
        Ok(self.quotient(|x| rep[&x]))
    }

    fn quotient(&self, f: impl Fn(VertexId) -> VertexId) -> (Multigraph, BTreeMap<VertexId, VertexId>) {
        let mapping: BTreeMap<VertexId, VertexId> = self.vertices.iter().map(|&v| (v, f(v))).collect();
        let mut g = Multigraph {
            vertices: mapping.values().copied().collect(),
            edges: BTreeMap::new(),
        };
        let mut seen = BTreeSet::new();
        for (&e, &(u, v)) in &self.edges {
            let (a, b) = (mapping[&u], mapping[&v]);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if seen.insert(key) {
                g.edges.insert(e, key);
            }
        }
        (g, mapping)
    }

    /// Adds one loop per vertex. Loop ids continue after the largest edge id,
    /// in vertex order.
    pub fn with_loops(&self) -> Result<LoopedGraph> {
        if !self.is_simple() {
            return Err(Error::NotSimple("loops are only added to simple graphs".into()));
        }
        let mut full = self.clone();
        let mut loop_of = BTreeMap::new();
        for (next, &v) in (self.next_edge_id()..).zip(&self.vertices) {
            full.edges.insert(next, (v, v));
            loop_of.insert(v, next);
        }
        Ok(LoopedGraph::assemble(self.clone(), full, loop_of))
    }
}

/// A simple graph together with one added loop per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopedGraph {
    base: Multigraph,
    full: Multigraph,
    loop_of: BTreeMap<VertexId, EdgeId>,
    vertex_of_loop: BTreeMap<EdgeId, VertexId>,
}

impl LoopedGraph {
    fn assemble(base: Multigraph, full: Multigraph, loop_of: BTreeMap<VertexId, EdgeId>) -> Self {
        let vertex_of_loop = loop_of.iter().map(|(&v, &e)| (e, v)).collect();
        LoopedGraph {
            base,
            full,
            loop_of,
            vertex_of_loop,
        }
    }

    /// Reads a graph that already carries exactly one loop per vertex.
    pub fn from_full(full: Multigraph) -> Result<Self> {
        let mut base = full.clone();
        let mut loop_of = BTreeMap::new();
        for (e, u, v) in full.edges() {
            if u == v {
                if loop_of.insert(u, e).is_some() {
                    return Err(Error::invalid(format!("vertex {u} carries more than one loop")));
                }
                base.edges.remove(&e);
            }
        }
        if loop_of.len() != full.vertex_count() {
            return Err(Error::invalid("every vertex needs exactly one loop"));
        }
        if !base.is_simple() {
            return Err(Error::NotSimple("base of a looped graph".into()));
        }
        Ok(Self::assemble(base, full, loop_of))
    }

    /// The simple graph without the added loops.
    pub fn base(&self) -> &Multigraph {
        &self.base
    }

    /// The graph including the added loops.
    pub fn full(&self) -> &Multigraph {
        &self.full
    }

    pub fn loop_of(&self, v: VertexId) -> Option<EdgeId> {
        self.loop_of.get(&v).copied()
    }

    pub fn loops(&self) -> &BTreeMap<VertexId, EdgeId> {
        &self.loop_of
    }

    /// The vertex carrying loop `e`, or `None` when `e` is not an added loop.
    pub fn loop_vertex(&self, e: EdgeId) -> Option<VertexId> {
        self.vertex_of_loop.get(&e).copied()
    }

    pub fn is_added_loop(&self, e: EdgeId) -> bool {
        self.vertex_of_loop.contains_key(&e)
    }

    /// Vertices touched by the edges of `set`.
    pub fn covered(&self, set: &BTreeSet<EdgeId>) -> BTreeSet<VertexId> {
        set.iter()
            .filter_map(|&e| self.full.endpoints(e))
            .flat_map(|(u, v)| [u, v])
            .collect()
    }

    /// Solidity of an edge set: any two covered vertices are joined by a walk
    /// inside `set` in which loops and ordinary edges alternate, starting and
    /// ending with a loop. Equivalently, every covered vertex has its loop in
    /// `set` and the ordinary edges of `set` connect all covered vertices.
    pub fn is_solid(&self, set: &BTreeSet<EdgeId>) -> bool {
        let covered = self.covered(set);
        if !covered.iter().all(|v| set.contains(&self.loop_of[v])) {
            return false;
        }
        let Some(&start) = covered.iter().next() else {
            return true;
        };
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &e in set {
            if let Some((u, v)) = self.full.endpoints(e) {
                if u != v {
                    adj.entry(u).or_default().push(v);
                    adj.entry(v).or_default().push(u);
                }
            }
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in adj.get(&u).into_iter().flatten() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == covered.len()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexId>,
    edges: Vec<[usize; 3]>,
}

impl TryFrom<GraphJson> for Multigraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        let mut g = Multigraph::new();
        for v in raw.vertices {
            g.add_vertex(v);
        }
        for [e, u, v] in raw.edges {
            g.add_edge(e, u, v)?;
        }
        Ok(g)
    }
}

impl From<Multigraph> for GraphJson {
    fn from(g: Multigraph) -> Self {
        GraphJson {
            vertices: g.vertices.iter().copied().collect(),
            edges: g.edges().map(|(e, u, v)| [e, u, v]).collect(),
        }
    }
}

/// Dense re-indexing of a simple view of a graph, used by the bitmask
/// routines. Index `i` stands for vertex `ids[i]`.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub ids: Vec<VertexId>,
    pub index: BTreeMap<VertexId, usize>,
    pub adj: Vec<Vec<usize>>,
}

impl Dense {
    pub fn new(g: &Multigraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for (u, ns) in g.neighbor_sets() {
            adj[index[&u]] = ns.iter().map(|w| index[w]).collect();
        }
        Dense { ids, index, adj }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    /// Adjacency as bitmasks; requires at most 64 vertices.
    pub fn masks(&self) -> Vec<u64> {
        assert!(self.len() <= 64, "bitmask view needs at most 64 vertices");
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Multigraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn contracting_triangle_edge_leaves_single_edge() {
        let k3 = cycle(3);
        let (g, map) = k3.contract_edge(0).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(map[&0], map[&1]);
        assert!(g.is_simple());
    }

    #[test]
    fn contracting_path_edge() {
        let (g, map) = path(3).contract_edge(0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(map, BTreeMap::from([(0, 0), (1, 0), (2, 2)]));
    }

    #[test]
    fn contracting_c4_edge_gives_triangle() {
        let (g, _) = cycle(4).contract_edge(0).unwrap();
        assert!(are_isomorphic(&g, &cycle(3)));
    }

    #[test]
    fn loop_contraction_is_rejected() {
        let mut g = Multigraph::with_vertices(1);
        g.push_edge(0, 0).unwrap();
        assert!(matches!(g.contract_edge(0), Err(Error::LoopContraction(0))));
        assert!(matches!(g.contract_edge(7), Err(Error::UnknownEdge(7))));
    }

    #[test]
    fn edge_set_contractions() {
        // L_2 as the cycle 0-1-3-2 with horizontal edges 0-1 and 2-3.
        let l2 = Multigraph::from_edges(4, &[(0, 1), (2, 3), (0, 2), (1, 3)]).unwrap();
        let (g, _) = l2.contract_edge_set(&BTreeSet::from([0, 1])).unwrap();
        assert!(are_isomorphic(&g, &path(2)));

        let tree = Multigraph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let all: BTreeSet<_> = tree.edge_ids().collect();
        let (g, _) = tree.contract_edge_set(&all).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));

        let (same, map) = l2.contract_edge_set(&BTreeSet::new()).unwrap();
        assert_eq!(same, l2);
        assert!(map.iter().all(|(a, b)| a == b));

        assert!(matches!(
            l2.contract_edge_set(&BTreeSet::from([9])),
            Err(Error::UnknownEdge(9))
        ));
    }

    #[test]
    fn loops_added_per_vertex() {
        let k3 = cycle(3).with_loops().unwrap();
        assert_eq!((k3.full().vertex_count(), k3.full().edge_count()), (3, 6));
        let single = Multigraph::with_vertices(1).with_loops().unwrap();
        assert_eq!(single.full().edge_count(), 1);
        assert_eq!(path(3).with_loops().unwrap().full().edge_count(), 5);

        let mut multi = path(2);
        multi.push_edge(0, 1).unwrap();
        assert!(matches!(multi.with_loops(), Err(Error::NotSimple(_))));
    }

    #[test]
    fn solid_sets() {
        let gl = path(2).with_loops().unwrap();
        let (lu, lv) = (gl.loop_of(0).unwrap(), gl.loop_of(1).unwrap());
        assert!(gl.is_solid(&BTreeSet::from([lu])));
        assert!(!gl.is_solid(&BTreeSet::from([0])));
        assert!(gl.is_solid(&BTreeSet::from([lu, 0, lv])));
        assert!(!gl.is_solid(&BTreeSet::from([lu, 0])));
        assert!(!gl.is_solid(&BTreeSet::from([lu, lv])));
        assert!(gl.is_solid(&BTreeSet::new()));
    }

    #[test]
    fn json_round_trip_keeps_loops() {
        let mut g = path(3);
        g.push_edge(1, 1).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"vertices":[0,1,2],"edges":[[0,0,1],[1,1,2],[2,1,1]]}"#);
        let back: Multigraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Multigraph>(r#"{"vertices":[0],"edges":[[0,0,4]]}"#).is_err());
    }
}
