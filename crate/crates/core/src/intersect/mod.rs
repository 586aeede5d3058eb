//! From geometry to graphs: intersection graphs, the planarization gadget
//! with its two contraction models, and polysegment models of bodies.

mod bodies;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::geometry::{xi, Arrangement};
use crate::graph::{are_isomorphic, is_planar, EdgeId, Multigraph, VertexId};
use crate::minor::{CContractionModel, ContractionModel, MinorModel, ModelJson};
use crate::treewidth::treewidth_exact;

pub use bodies::{
    body_intersection_graph, contact_points, model_fat_convex, model_rho_convex, ContactPointSet, CrossingCount,
    FatModel, RhoModel, RhoOptions,
};

/// One vertex per polysegment, one edge per touching pair.
pub fn intersection_graph(arr: &Arrangement) -> Multigraph {
    let pairs: BTreeSet<(usize, usize)> = arr.crossings().iter().map(|c| (c.a, c.b)).collect();
    let edges: Vec<(usize, usize)> = pairs.into_iter().collect();
    Multigraph::from_edges(arr.len(), &edges).expect("pairs index polysegments")
}

/// The planarization of an arrangement.
///
/// Vertex ids: polysegment `i` runs from `i` to `n + i`; crossing `q` (in
/// arrangement order) puts `2n + 2q` on its first polysegment and
/// `2n + 2q + 1` on its second, joined by a gadget edge in `m`.
#[derive(Clone, Debug)]
pub struct PlanarizationBundle {
    pub g: Multigraph,
    pub m: BTreeSet<EdgeId>,
    pub h: Multigraph,
    pub gb: Multigraph,
    pub model_h: CContractionModel,
    pub model_gb: CContractionModel,
    pub xi: usize,
    /// Vertices of each subdivided polysegment, in order along it.
    pub chains: Vec<Vec<VertexId>>,
}

/// Builds the planarization. Crossings at polysegment end points, and point
/// polysegments, are treated as if the polysegment were stretched slightly
/// past the crossing, so both end vertices always exist.
pub fn planarize(arr: &Arrangement) -> Result<PlanarizationBundle> {
    let n = arr.len();
    let mut on: Vec<Vec<(usize, crate::geometry::Q, VertexId)>> = vec![Vec::new(); n];
    for (q, c) in arr.crossings().iter().enumerate() {
        for (side, id) in [(c.a, 2 * n + 2 * q), (c.b, 2 * n + 2 * q + 1)] {
            let (seg, t) = arr.polysegments()[side]
                .position(&c.point)
                .ok_or_else(|| Error::invalid("crossing point is not on its polysegment"))?;
            on[side].push((seg, t, id));
        }
    }
    let chains: Vec<Vec<VertexId>> = on
        .into_iter()
        .enumerate()
        .map(|(i, mut hits)| {
            hits.sort();
            std::iter::once(i)
                .chain(hits.into_iter().map(|h| h.2))
                .chain([n + i])
                .collect()
        })
        .collect();

    let mut g = Multigraph::with_vertices(2 * n + 2 * arr.crossings().len());
    for chain in &chains {
        for w in chain.windows(2) {
            g.push_edge(w[0], w[1])?;
        }
    }
    let mut m = BTreeSet::new();
    for q in 0..arr.crossings().len() {
        m.insert(g.push_edge(2 * n + 2 * q, 2 * n + 2 * q + 1)?);
    }

    // H is drawn directly: chains whose crossing vertices are shared.
    let merged = |v: VertexId| if v >= 2 * n && (v - 2 * n) % 2 == 1 { v - 1 } else { v };
    let mut h = Multigraph::new();
    for v in g.vertices() {
        h.add_vertex(merged(v));
    }
    for chain in &chains {
        for w in chain.windows(2) {
            let (a, b) = (merged(w[0]), merged(w[1]));
            if h.edge_between(a, b).is_none() {
                h.push_edge(a, b)?;
            }
        }
    }
    let gb = intersection_graph(arr);

    let (_, to_h) = g.contract_edge_set(&m)?;
    let rest: BTreeSet<EdgeId> = g.edge_ids().filter(|e| !m.contains(e)).collect();
    let (_, to_gb) = g.contract_edge_set(&rest)?;
    let xi = xi(arr);
    let model_h = CContractionModel::new(ContractionModel::from_quotient(&g, &h, &to_h)?, 1)?;
    let model_gb = CContractionModel::new(ContractionModel::from_quotient(&g, &gb, &to_gb)?, xi + 1)?;
    Ok(PlanarizationBundle {
        g,
        m,
        h,
        gb,
        model_h,
        model_gb,
        xi,
        chains,
    })
}

/// Outcome of checking every bundle invariant with independent tools.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleCheck {
    pub h_planar: bool,
    pub h_matches_contraction: bool,
    pub gb_matches_contraction: bool,
    pub gb_matches_intersection_graph: bool,
    pub max_subdivision: usize,
    pub subdivision_within_bound: bool,
    pub model_h_valid: bool,
    pub model_gb_valid: bool,
}

impl BundleCheck {
    pub fn passed(&self) -> bool {
        self.h_planar
            && self.h_matches_contraction
            && self.gb_matches_contraction
            && self.gb_matches_intersection_graph
            && self.subdivision_within_bound
            && self.model_h_valid
            && self.model_gb_valid
    }
}

pub fn check_bundle(b: &PlanarizationBundle, arr: &Arrangement) -> Result<BundleCheck> {
    let (gm, _) = b.g.contract_edge_set(&b.m)?;
    let rest: BTreeSet<EdgeId> = b.g.edge_ids().filter(|e| !b.m.contains(e)).collect();
    let (gr, _) = b.g.contract_edge_set(&rest)?;
    let max_subdivision = b.chains.iter().map(|c| c.len() - 1).max().unwrap_or(0);
    Ok(BundleCheck {
        h_planar: is_planar(&b.h),
        h_matches_contraction: are_isomorphic(&gm, &b.h),
        gb_matches_contraction: are_isomorphic(&gr.simplify(), &b.gb),
        gb_matches_intersection_graph: are_isomorphic(&b.gb, &intersection_graph(arr)),
        max_subdivision,
        subdivision_within_bound: max_subdivision <= b.xi + 1,
        model_h_valid: crate::minor::validate_c_contraction(b.model_h.model(), 1).is_ok(),
        model_gb_valid: crate::minor::validate_c_contraction(b.model_gb.model(), b.xi + 1).is_ok(),
    })
}

/// The exact floor chain from the treewidth of a contraction to the grid
/// size it forces: `r' = floor(((t+1)/(c1+1) - 1)/18)` and
/// `r'' = floor((r'-1)/(2(c2+1))) + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub t: usize,
    pub c1: usize,
    pub c2: usize,
    pub r_prime: i64,
    pub r_double: i64,
}

pub fn chain(t: usize, c1: usize, c2: usize) -> Chain {
    let (t, c1i, c2i) = (t as i64, c1 as i64, c2 as i64);
    // (t+1)/(c1+1) - 1 = (t - c1)/(c1+1)
    let r_prime = (t - c1i).div_euclid(18 * (c1i + 1));
    let r_double = (r_prime - 1).div_euclid(2 * (c2i + 1)) + 1;
    Chain {
        t: t as usize,
        c1,
        c2,
        r_prime,
        r_double,
    }
}

/// The chain for a planarized arrangement: `c1 = 1`, `c2 = xi + 1`.
pub fn arrangement_chain(t: usize, xi: usize) -> Chain {
    chain(t, 1, xi + 1)
}

/// How a grid-minor value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum BgCertificate {
    Exact(usize),
    LowerBound(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub xi: usize,
    pub tw: usize,
    pub bg: usize,
    pub chain: Chain,
    pub holds: bool,
}

/// Evaluates the chain at the exact treewidth of `gb` and checks
/// `r'' <= bg`.
pub fn theorem1_bound(bundle: &PlanarizationBundle, bg: BgCertificate, limits: &Limits) -> Result<ChainReport> {
    let BgCertificate::Exact(bg) = bg else {
        return Err(Error::invalid("the chain check needs an exactly certified bg"));
    };
    let (tw, _) = treewidth_exact(&bundle.gb, limits.tw_exact)?;
    let chain = arrangement_chain(tw, bundle.xi);
    Ok(ChainReport {
        xi: bundle.xi,
        tw,
        bg,
        chain,
        holds: chain.r_double <= bg as i64,
    })
}

#[derive(Serialize, Deserialize)]
struct BundleJson {
    xi: usize,
    g: Multigraph,
    m: BTreeSet<EdgeId>,
    h: Multigraph,
    gb: Multigraph,
    model_h: ModelJson,
    model_gb: ModelJson,
    chains: Vec<Vec<VertexId>>,
}

impl Serialize for PlanarizationBundle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BundleJson {
            xi: self.xi,
            g: self.g.clone(),
            m: self.m.clone(),
            h: self.h.clone(),
            gb: self.gb.clone(),
            model_h: self.model_h.model().into(),
            model_gb: self.model_gb.model().into(),
            chains: self.chains.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlanarizationBundle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BundleJson::deserialize(d)?;
        let load = |m: ModelJson, c: usize| -> Result<CContractionModel> {
            CContractionModel::new(ContractionModel::new(MinorModel::try_from(m)?)?, c)
        };
        let e = serde::de::Error::custom;
        Ok(PlanarizationBundle {
            model_h: load(raw.model_h, 1).map_err(e)?,
            model_gb: load(raw.model_gb, raw.xi + 1).map_err(e)?,
            g: raw.g,
            m: raw.m,
            h: raw.h,
            gb: raw.gb,
            xi: raw.xi,
            chains: raw.chains,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_arrangement, Point, Polysegment};
    use crate::graph::Multigraph;

    fn seg(a: (i64, i64), b: (i64, i64)) -> Polysegment {
        Polysegment::new(vec![Point::int(a.0, a.1), Point::int(b.0, b.1)]).unwrap()
    }

    #[test]
    fn intersection_graphs() {
        let arr = build_arrangement(vec![seg((0, 0), (2, 2)), seg((0, 2), (2, 0))]).unwrap();
        assert_eq!(intersection_graph(&arr), Multigraph::from_edges(2, &[(0, 1)]).unwrap());
        let tri = build_arrangement(vec![seg((0, 0), (4, 0)), seg((0, -1), (3, 3)), seg((4, -1), (1, 3))]).unwrap();
        assert_eq!(intersection_graph(&tri).edge_count(), 3);
        let zig = Polysegment::new(vec![Point::int(0, 0), Point::int(1, 2), Point::int(2, 0)]).unwrap();
        let twice = build_arrangement(vec![zig, seg((0, 1), (2, 1))]).unwrap();
        let g = intersection_graph(&twice);
        assert!(g.is_simple());
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn planarize_two_segments() {
        let arr = build_arrangement(vec![seg((0, 0), (2, 2)), seg((0, 2), (2, 0))]).unwrap();
        let b = planarize(&arr).unwrap();
        assert_eq!(b.g.vertex_count(), 6);
        assert_eq!(b.m.len(), 1);
        assert_eq!(b.gb, Multigraph::from_edges(2, &[(0, 1)]).unwrap());
        assert_eq!(b.chains, vec![vec![0, 4, 2], vec![1, 5, 3]]);
        assert!(check_bundle(&b, &arr).unwrap().passed());
    }

    #[test]
    fn planarize_without_crossings() {
        let arr = build_arrangement(vec![seg((0, 0), (1, 0)), seg((0, 1), (1, 1))]).unwrap();
        let b = planarize(&arr).unwrap();
        assert!(b.m.is_empty());
        assert_eq!(b.h, b.g);
        assert_eq!(b.gb.edge_count(), 0);
        assert!(check_bundle(&b, &arr).unwrap().passed());
    }

    #[test]
    fn planarize_triangle_and_endpoint_contacts() {
        let tri = build_arrangement(vec![seg((0, 0), (4, 0)), seg((0, -1), (3, 3)), seg((4, -1), (1, 3))]).unwrap();
        let b = planarize(&tri).unwrap();
        assert_eq!(b.xi, 2);
        assert!(are_isomorphic(
            &b.gb,
            &Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
        ));
        assert_eq!(b.model_gb.c(), 3);
        assert!(check_bundle(&b, &tri).unwrap().passed());

        // A T-junction and a shared end point.
        let t = build_arrangement(vec![seg((0, 0), (4, 0)), seg((2, 0), (2, 3)), seg((2, 3), (5, 5))]).unwrap();
        let b = planarize(&t).unwrap();
        assert!(check_bundle(&b, &t).unwrap().passed());
    }

    #[test]
    fn multiple_crossings_between_a_pair() {
        let zig = Polysegment::new(vec![
            Point::int(0, 0),
            Point::int(1, 2),
            Point::int(2, 0),
            Point::int(3, 2),
        ])
        .unwrap();
        let arr = build_arrangement(vec![zig, seg((0, 1), (3, 1))]).unwrap();
        let b = planarize(&arr).unwrap();
        assert_eq!(b.xi, 3);
        assert_eq!(b.chains[0].len(), 5);
        assert!(check_bundle(&b, &arr).unwrap().passed());
    }

    #[test]
    fn chain_arithmetic() {
        let c = chain(215, 1, 6);
        assert_eq!((c.r_prime, c.r_double), (5, 1));
        let small = arrangement_chain(3, 2);
        assert!(small.r_prime <= 0 && small.r_double <= 1);
        assert_eq!(arrangement_chain(0, 0).r_double, 0);
    }

    #[test]
    fn chain_report_on_a_hash() {
        let tri = build_arrangement(vec![seg((0, 0), (4, 0)), seg((0, -1), (3, 3)), seg((4, -1), (1, 3))]).unwrap();
        let b = planarize(&tri).unwrap();
        let limits = Limits::default();
        let report = theorem1_bound(&b, BgCertificate::Exact(1), &limits).unwrap();
        assert_eq!(report.tw, 2);
        assert!(report.holds);
        assert!(theorem1_bound(&b, BgCertificate::LowerBound(1), &limits).is_err());
    }

    #[test]
    fn bundle_json_round_trip() {
        let tri = build_arrangement(vec![seg((0, 0), (4, 0)), seg((0, -1), (3, 3)), seg((4, -1), (1, 3))]).unwrap();
        let b = planarize(&tri).unwrap();
        let text = serde_json::to_string(&b).unwrap();
        let back: PlanarizationBundle = serde_json::from_str(&text).unwrap();
        assert_eq!(back.g, b.g);
        assert_eq!(back.model_gb, b.model_gb);
    }
}
