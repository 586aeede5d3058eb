//! Vertex cover: a brute-force oracle, a tree decomposition DP, and the
//! win/win solver that either certifies a large grid minor or runs the DP.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexId};
use crate::intersect::{arrangement_chain, Chain};
use crate::treewidth::{rooted_order, treewidth_lower, treewidth_upper, validate_decomposition, TreeDecomposition};

/// A minimum vertex cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub size: usize,
    pub vertices: BTreeSet<VertexId>,
}

pub fn is_vertex_cover(g: &Multigraph, set: &BTreeSet<VertexId>) -> bool {
    g.edges().all(|(_, u, v)| set.contains(&u) || set.contains(&v))
}

/// Exact minimum vertex cover by branching on an uncovered edge.
pub fn vc_brute(g: &Multigraph, cap: usize) -> Result<Cover> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "brute-force vertex cover",
            size: n,
            cap,
        });
    }
    let ids: Vec<VertexId> = g.vertices().collect();
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = g.edges().map(|(_, u, v)| (index[&u], index[&v])).collect();

    fn go(edges: &[(usize, usize)], chosen: u64, size: usize, best: &mut (usize, u64)) {
        if size >= best.0 {
            return;
        }
        let open = edges
            .iter()
            .find(|&&(u, v)| chosen & (1 << u) == 0 && chosen & (1 << v) == 0);
        let Some(&(u, v)) = open else {
            *best = (size, chosen);
            return;
        };
        go(edges, chosen | 1 << u, size + 1, best);
        if u != v {
            go(edges, chosen | 1 << v, size + 1, best);
        }
    }
    let mut best = (n + 1, (1u64 << n) - 1);
    go(&edges, 0, 0, &mut best);
    let vertices: BTreeSet<VertexId> = (0..n).filter(|i| best.1 & (1 << i) != 0).map(|i| ids[i]).collect();
    Ok(Cover {
        size: vertices.len(),
        vertices,
    })
}

/// Exact minimum vertex cover by dynamic programming over a tree
/// decomposition, rooted at its smallest node.
pub fn vc_dp(g: &Multigraph, d: &TreeDecomposition) -> Result<Cover> {
    validate_decomposition(g, d).map_err(|v| Error::InvalidDecomposition(v.message))?;
    const MAX_BAG: usize = 24;
    if let Some(big) = d.bags().values().find(|b| b.len() > MAX_BAG) {
        return Err(Error::CapExceeded {
            what: "vertex cover DP bag",
            size: big.len(),
            cap: MAX_BAG,
        });
    }
    let order = rooted_order(d);
    if order.is_empty() {
        return Ok(Cover {
            size: 0,
            vertices: BTreeSet::new(),
        });
    }
    let bag: BTreeMap<usize, Vec<VertexId>> = d
        .bags()
        .iter()
        .map(|(&t, b)| (t, b.iter().copied().collect()))
        .collect();
    let mut children: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(t, p) in &order {
        if let Some(p) = p {
            children.entry(p).or_default().push(t);
        }
    }
    let adj = g.neighbor_sets();
    let mask_of = |t: usize, set: &dyn Fn(VertexId) -> bool| -> usize {
        bag[&t]
            .iter()
            .enumerate()
            .filter(|(_, &v)| set(v))
            .fold(0, |m, (i, _)| m | 1 << i)
    };

    // table[t][S] = smallest cover of the subtree graph meeting bag(t) in S.
    const NONE: usize = usize::MAX;
    let mut table: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    // Per child: for each projection onto the shared vertices, the best
    // child state.
    let mut pick: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for &(t, _) in order.iter().rev() {
        let b = &bag[&t];
        let k = b.len();
        // Edges inside the bag as pairs of bit positions.
        let mut inner = Vec::new();
        for (i, &u) in b.iter().enumerate() {
            for (j, &v) in b.iter().enumerate().skip(i) {
                if adj[&u].contains(&v) {
                    inner.push((i, j));
                }
            }
        }
        let mut row: Vec<usize> = (0..1usize << k)
            .map(|s| {
                if inner.iter().all(|&(i, j)| s & (1 << i) != 0 || s & (1 << j) != 0) {
                    s.count_ones() as usize
                } else {
                    NONE
                }
            })
            .collect();
        for &c in children.get(&t).map(Vec::as_slice).unwrap_or(&[]) {
            let in_parent = mask_of(c, &|v| b.contains(&v));
            let to_parent = mask_of(t, &|v| bag[&c].contains(&v));
            // Shared-vertex states of the child and parent, as child masks
            // and parent masks.
            let project = |cs: usize| -> usize {
                bag[&c]
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| cs & in_parent & (1 << i) != 0)
                    .fold(0, |m, (_, v)| m | 1 << b.iter().position(|x| x == v).expect("shared"))
            };
            let mut best: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
            for (cs, &val) in table[&c].iter().enumerate() {
                if val == NONE {
                    continue;
                }
                let key = project(cs);
                let cost = val - (cs & in_parent).count_ones() as usize;
                if best.get(&key).is_none_or(|&(v, _)| cost < v) {
                    best.insert(key, (cost, cs));
                }
            }
            for (s, slot) in row.iter_mut().enumerate() {
                if *slot == NONE {
                    continue;
                }
                match best.get(&(s & to_parent)) {
                    Some(&(cost, _)) => *slot += cost,
                    None => *slot = NONE,
                }
            }
            pick.insert(c, best.into_iter().map(|(k, (_, cs))| (k, cs)).collect());
        }
        table.insert(t, row);
    }

    let root = order[0].0;
    let (root_state, &size) = table[&root]
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != NONE)
        .min_by_key(|(_, &v)| v)
        .ok_or_else(|| Error::invalid("no vertex cover state at the root"))?;
    let mut state: BTreeMap<usize, usize> = BTreeMap::from([(root, root_state)]);
    let mut vertices = BTreeSet::new();
    for &(t, parent) in &order {
        if let Some(p) = parent {
            let to_parent = mask_of(p, &|v| bag[&t].contains(&v));
            state.insert(t, pick[&t][&(state[&p] & to_parent)]);
        }
        let s = state[&t];
        vertices.extend(
            bag[&t]
                .iter()
                .enumerate()
                .filter(|(i, _)| s & (1 << i) != 0)
                .map(|(_, &v)| v),
        );
    }
    debug_assert_eq!(vertices.len(), size);
    Ok(Cover {
        size: vertices.len(),
        vertices,
    })
}

/// `vc(L_r) = floor(r^2 / 2)`.
pub fn grid_vertex_cover(r: usize) -> usize {
    r * r / 2
}

/// Least `r` whose grid needs more than `k` cover vertices.
pub fn r_min(k: usize) -> usize {
    (1..).find(|&r| grid_vertex_cover(r) > k).expect("grids grow")
}

/// Least `t` whose chain reaches `r_min`.
pub fn t_threshold(r_min: usize, xi: usize) -> usize {
    // r'' >= r  <=>  r' >= 2(c2+1)(r-1) + 1  <=>  t >= 18(c1+1) r' + c1.
    let (c1, c2) = (1, xi + 1);
    let need = 2 * (c2 + 1) * r_min.saturating_sub(1) + 1;
    let t = 18 * (c1 + 1) * need + c1;
    debug_assert!(arrangement_chain(t, xi).r_double >= r_min as i64);
    debug_assert!(t == 0 || arrangement_chain(t - 1, xi).r_double < r_min as i64);
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Dp,
    GridNoCertificate,
    DpFallback,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Dp => "dp",
            Route::GridNoCertificate => "grid-no-certificate",
            Route::DpFallback => "dp-fallback",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", content = "cover", rename_all = "UPPERCASE")]
pub enum Answer {
    Yes(BTreeSet<VertexId>),
    No,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinWinOutcome {
    pub k: usize,
    pub xi: usize,
    pub answer: Answer,
    pub route: Route,
    /// Minimum cover size when the DP ran.
    pub optimum: Option<usize>,
    /// Width of the decomposition used by the DP.
    pub width: Option<usize>,
    pub r_min: usize,
    pub t_threshold: usize,
    pub tw_lower: usize,
    pub tw_upper: usize,
    /// The chain evaluated at `tw_lower`.
    pub chain: Chain,
}

impl WinWinOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self.answer, Answer::Yes(_))
    }
}

/// Decides whether `gb`, the intersection graph of an arrangement with
/// parameter `xi`, has a vertex cover of size at most `k`.
pub fn winwin_vc(gb: &Multigraph, xi: usize, k: usize, _limits: &Limits) -> Result<WinWinOutcome> {
    let r_min = r_min(k);
    let t_threshold = t_threshold(r_min, xi);
    let tw_lower = treewidth_lower(gb);
    let chain = arrangement_chain(tw_lower, xi);
    let (tw_upper, dec) = treewidth_upper(gb);
    let mut out = WinWinOutcome {
        k,
        xi,
        answer: Answer::No,
        route: Route::GridNoCertificate,
        optimum: None,
        width: None,
        r_min,
        t_threshold,
        tw_lower,
        tw_upper,
        chain,
    };
    if tw_lower >= t_threshold {
        return Ok(out);
    }
    out.route = if tw_upper < t_threshold {
        Route::Dp
    } else {
        Route::DpFallback
    };
    let cover = vc_dp(gb, &dec)?;
    out.optimum = Some(cover.size);
    out.width = Some(dec.width());
    if cover.size <= k {
        out.answer = Answer::Yes(cover.vertices);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridminor::make_grid;
    use crate::treewidth::treewidth_exact;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Multigraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn brute_force_values() {
        assert_eq!(vc_brute(&cycle(4), 20).unwrap().size, 2);
        assert_eq!(vc_brute(make_grid(3).unwrap().graph(), 20).unwrap().size, 4);
        let star = Multigraph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let c = vc_brute(&star, 20).unwrap();
        assert_eq!(c.vertices, BTreeSet::from([0]));
        assert!(vc_brute(&Multigraph::with_vertices(21), 20).is_err());
    }

    #[test]
    fn dp_matches_brute_force() {
        let p4 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (_, d) = treewidth_upper(&p4);
        assert_eq!(d.width(), 1);
        assert_eq!(vc_dp(&p4, &d).unwrap().size, 2);
        let l4 = make_grid(4).unwrap();
        let (_, d) = treewidth_upper(l4.graph());
        assert_eq!(vc_dp(l4.graph(), &d).unwrap().size, 8);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(0..11);
            let g = random_graph(n, rng.gen_range(0.1..0.7), &mut rng);
            let exact = vc_brute(&g, 20).unwrap();
            for d in [
                TreeDecomposition::trivial(&g),
                treewidth_upper(&g).1,
                treewidth_exact(&g, 16).unwrap().1,
            ] {
                let c = vc_dp(&g, &d).unwrap();
                assert_eq!(c.size, exact.size);
                assert!(is_vertex_cover(&g, &c.vertices));
            }
        }
    }

    #[test]
    fn grid_covers() {
        for r in 2..=4 {
            let g = make_grid(r).unwrap();
            assert_eq!(vc_brute(g.graph(), 20).unwrap().size, grid_vertex_cover(r));
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(r_min(0), 2);
        assert_eq!(r_min(1), 2);
        assert_eq!(r_min(2), 3);
        assert_eq!(r_min(4), 4);
        for xi in 0..5 {
            for r in 1..6 {
                let t = t_threshold(r, xi);
                assert!(arrangement_chain(t, xi).r_double >= r as i64);
                assert!(t == 0 || arrangement_chain(t - 1, xi).r_double < r as i64);
            }
        }
    }

    #[test]
    fn winwin_agrees_with_the_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let limits = Limits::default();
        for _ in 0..30 {
            let n = rng.gen_range(1..10);
            let g = random_graph(n, 0.4, &mut rng);
            let exact = vc_brute(&g, 20).unwrap().size;
            let mut said_yes = false;
            for k in 0..=n {
                let out = winwin_vc(&g, 2, k, &limits).unwrap();
                assert_eq!(out.is_yes(), exact <= k);
                assert!(!said_yes || out.is_yes());
                said_yes = out.is_yes();
                if let Answer::Yes(c) = &out.answer {
                    assert!(c.len() <= k && is_vertex_cover(&g, c));
                }
            }
        }
    }

    #[test]
    fn dense_graphs_take_the_grid_route() {
        // K_n has degeneracy n - 1, and any cover of it misses one vertex.
        let n = t_threshold(r_min(0), 0) + 1;
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let g = Multigraph::from_edges(n, &edges).unwrap();
        let limits = Limits::default();
        assert_eq!(r_min(1), 2);
        for k in [0, 1] {
            let out = winwin_vc(&g, 0, k, &limits).unwrap();
            assert_eq!(out.route, Route::GridNoCertificate);
            assert!(!out.is_yes());
            assert!(out.tw_lower >= out.t_threshold);
            assert!(out.chain.r_double as usize >= out.r_min);
        }
    }
}
