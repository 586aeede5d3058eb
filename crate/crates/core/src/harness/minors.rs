//! Minor testing by explicit deletions and contractions, carrying an
//! edge-mapping model along. This is the model side of the minor
//! equivalence check; the branch-set oracle is the other side.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::graph::{are_isomorphic, EdgeId, Multigraph, VertexId};
use crate::minor::{Image, MinorModel};

/// Image of a source edge in the current graph `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum XImage {
    Vertex(VertexId),
    Edge(VertexId, VertexId),
    Star,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

#[derive(Clone)]
struct State {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    images: Vec<XImage>,
}

impl State {
    fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    fn graph(&self) -> Multigraph {
        let mut g = Multigraph::new();
        for &v in self.adj.keys() {
            g.add_vertex(v);
        }
        for (&u, ns) in &self.adj {
            for &w in ns.range(u + 1..) {
                g.push_edge(u, w).expect("vertices exist");
            }
        }
        g
    }

    fn delete_vertex(&self, v: VertexId) -> State {
        let mut next = self.clone();
        for w in next.adj.remove(&v).expect("vertex") {
            next.adj.get_mut(&w).expect("neighbor").remove(&v);
        }
        for img in &mut next.images {
            match *img {
                XImage::Vertex(x) if x == v => *img = XImage::Star,
                XImage::Edge(a, b) if a == v || b == v => *img = XImage::Star,
                _ => {}
            }
        }
        next
    }

    /// Contracts `uv` into the smaller end. An edge that becomes parallel
    /// loses its preimage to the star.
    fn contract(&self, u: VertexId, v: VertexId) -> State {
        let (keep, gone) = key(u, v);
        let mut next = self.clone();
        let moved = next.adj.remove(&gone).expect("vertex");
        for &w in &moved {
            next.adj.get_mut(&w).expect("neighbor").remove(&gone);
        }
        let before: BTreeSet<VertexId> = next.adj[&keep].clone();
        for &w in moved.iter().filter(|&&w| w != keep) {
            next.adj.get_mut(&keep).expect("keep").insert(w);
            next.adj.get_mut(&w).expect("neighbor").insert(keep);
        }
        for img in &mut next.images {
            match *img {
                XImage::Vertex(x) if x == gone => *img = XImage::Vertex(keep),
                XImage::Edge(a, b) if key(a, b) == (keep, gone) => *img = XImage::Vertex(keep),
                XImage::Edge(a, b) if a == gone || b == gone => {
                    let w = if a == gone { b } else { a };
                    *img = if before.contains(&w) {
                        XImage::Star
                    } else {
                        let (x, y) = key(keep, w);
                        XImage::Edge(x, y)
                    };
                }
                _ => {}
            }
        }
        next
    }
}

/// Invariant for bucketing isomorphism classes.
fn signature(s: &State) -> Vec<(usize, Vec<usize>)> {
    let mut sig: Vec<(usize, Vec<usize>)> = s
        .adj
        .values()
        .map(|ns| {
            let mut d: Vec<usize> = ns.iter().map(|w| s.adj[w].len()).collect();
            d.sort_unstable();
            (ns.len(), d)
        })
        .collect();
    sig.sort();
    sig
}

/// A bijection `V(h) -> V(x)` that carries every edge of `h` onto an edge
/// of `x`.
fn spanning_embedding(
    h: &Multigraph,
    x: &BTreeMap<VertexId, BTreeSet<VertexId>>,
) -> Option<BTreeMap<VertexId, VertexId>> {
    let hv: Vec<VertexId> = h.vertices().collect();
    let hadj = h.neighbor_sets();
    let xv: Vec<VertexId> = x.keys().copied().collect();
    fn go(
        i: usize,
        hv: &[VertexId],
        hadj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
        xv: &[VertexId],
        x: &BTreeMap<VertexId, BTreeSet<VertexId>>,
        map: &mut BTreeMap<VertexId, VertexId>,
        used: &mut BTreeSet<VertexId>,
    ) -> bool {
        if i == hv.len() {
            return true;
        }
        let a = hv[i];
        for &cand in xv {
            if used.contains(&cand) || x[&cand].len() < hadj[&a].iter().filter(|&&b| b != a).count() {
                continue;
            }
            let fits = hadj[&a]
                .iter()
                .all(|b| map.get(b).is_none_or(|&y| x[&cand].contains(&y)));
            if fits {
                map.insert(a, cand);
                used.insert(cand);
                if go(i + 1, hv, hadj, xv, x, map, used) {
                    return true;
                }
                map.remove(&a);
                used.remove(&cand);
            }
        }
        false
    }
    let mut map = BTreeMap::new();
    go(0, &hv, &hadj, &xv, x, &mut map, &mut BTreeSet::new()).then_some(map)
}

/// Searches for `h` as a minor of `g` by deleting vertices and contracting
/// edges down to `|V(h)|` vertices, then embedding `h` as a spanning
/// subgraph. A hit is returned as an edge-mapping model of `g^l` onto `h`.
///
/// Both graphs must be simple.
pub fn minor_by_operations(h: &Multigraph, g: &Multigraph) -> Result<Option<MinorModel>> {
    if !h.is_simple() {
        return Err(crate::error::Error::NotSimple("pattern graph".into()));
    }
    let looped = g.with_loops()?;
    let full = looped.full();
    let width = full.edge_ids().max().map_or(0, |e| e + 1);
    let mut images = vec![XImage::Star; width];
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = g.vertices().map(|v| (v, BTreeSet::new())).collect();
    for (e, u, v) in full.edges() {
        images[e] = if looped.is_added_loop(e) {
            XImage::Vertex(u)
        } else {
            adj.get_mut(&u).expect("u").insert(v);
            adj.get_mut(&v).expect("v").insert(u);
            let (x, y) = key(u, v);
            XImage::Edge(x, y)
        };
    }
    let start = State { adj, images };
    let (hn, hm) = (h.vertex_count(), h.edge_count());
    if start.adj.len() < hn {
        return Ok(None);
    }

    let mut seen: BTreeMap<Vec<(usize, Vec<usize>)>, Vec<Multigraph>> = BTreeMap::new();
    let mut stack = vec![start];
    while let Some(s) = stack.pop() {
        if s.edge_count() < hm {
            continue;
        }
        let graph = s.graph();
        let bucket = seen.entry(signature(&s)).or_default();
        if bucket.iter().any(|other| are_isomorphic(other, &graph)) {
            continue;
        }
        bucket.push(graph);
        if s.adj.len() == hn {
            if let Some(map) = spanning_embedding(h, &s.adj) {
                return Ok(Some(finish(h, &looped, &s, &map)));
            }
            continue;
        }
        let vertices: Vec<VertexId> = s.adj.keys().copied().collect();
        for &v in &vertices {
            stack.push(s.delete_vertex(v));
        }
        for (&u, ns) in &s.adj {
            for &w in ns.range(u + 1..) {
                stack.push(s.contract(u, w));
            }
        }
    }
    Ok(None)
}

fn finish(
    h: &Multigraph,
    looped: &crate::graph::LoopedGraph,
    s: &State,
    map: &BTreeMap<VertexId, VertexId>,
) -> MinorModel {
    let back: BTreeMap<VertexId, VertexId> = map.iter().map(|(&a, &x)| (x, a)).collect();
    let edge_of: BTreeMap<(VertexId, VertexId), EdgeId> =
        h.edges().map(|(f, a, b)| (key(map[&a], map[&b]), f)).collect();
    let images = looped
        .full()
        .edge_ids()
        .map(|e| {
            let img = match s.images[e] {
                XImage::Vertex(x) => Image::Vertex(back[&x]),
                XImage::Edge(a, b) => edge_of.get(&(a, b)).map_or(Image::Star, |&f| Image::Edge(f)),
                XImage::Star => Image::Star,
            };
            (e, img)
        })
        .collect();
    MinorModel::new(looped.clone(), h.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minor::validate_minor_model;

    fn complete(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn cycles_contract_to_triangles() {
        let m = minor_by_operations(&complete(3), &cycle(6)).unwrap().unwrap();
        assert_eq!(validate_minor_model(&m), Ok(()));
        assert!(minor_by_operations(&complete(4), &cycle(6)).unwrap().is_none());
    }

    #[test]
    fn k4_in_the_3x3_grid() {
        let grid = crate::gridminor::make_grid(3).unwrap();
        let m = minor_by_operations(&complete(4), grid.graph()).unwrap().unwrap();
        assert_eq!(validate_minor_model(&m), Ok(()));
        assert!(minor_by_operations(&complete(5), grid.graph()).unwrap().is_none());
    }

    #[test]
    fn multigraphs_are_rejected() {
        let g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(minor_by_operations(&complete(2), &g).is_err());
        assert!(minor_by_operations(&g, &complete(3)).is_err());
    }
}
