//! Edge-mapping certificates for minors, distance minors and contractions.
//!
//! A model maps every edge of the looped source graph `G^l` to a vertex of
//! the target, an edge of the target, or `Star` (discarded). Validation
//! checks the defining conditions and reports the first failure together with
//! the elements involved.

mod construct;
mod transfer;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Distances, EdgeId, LoopedGraph, Multigraph, VertexId};

pub use construct::{
    cdist_witness_check, compose_models, model_from_witness, random_c_contraction, witness_from_model,
};
pub use transfer::{
    claim_star_violations, grid_transfer, threaded_path, transfer_side, Direction, GridTransfer, ThreadedPath,
    TransferOptions, USet,
};

/// Image of a source edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Image {
    #[serde(rename = "v")]
    Vertex(VertexId),
    #[serde(rename = "e")]
    Edge(EdgeId),
    #[serde(rename = "star")]
    Star,
}

/// Which defining condition a model breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// The map is not total on `E(G^l)`, or names unknown target elements.
    WellFormed,
    /// (1) every target vertex has a non-empty solid preimage.
    SolidPreimage,
    /// (2) preimages of distinct target vertices share no endpoint.
    DisjointPreimages,
    /// (3) preimage edges of a target edge are ordinary edges joining the two
    /// endpoint preimages.
    EdgeEndpoints,
    /// (4) every target edge has exactly one preimage.
    UniquePreimage,
    /// (5) target distances never exceed source distances.
    Distance,
    /// Contractions discard nothing.
    NoStar,
    /// A preimage holds more ordinary edges than the contraction parameter.
    PartSize,
}

impl Condition {
    /// Numbered condition, where one exists.
    pub fn index(self) -> Option<u8> {
        match self {
            Condition::SolidPreimage => Some(1),
            Condition::DisjointPreimages => Some(2),
            Condition::EdgeEndpoints => Some(3),
            Condition::UniquePreimage => Some(4),
            Condition::Distance => Some(5),
            _ => None,
        }
    }
}

/// First violated condition plus the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub target_vertices: Vec<VertexId>,
    pub target_edges: Vec<EdgeId>,
    pub source_edges: Vec<EdgeId>,
    pub message: String,
}

impl Violation {
    fn new(condition: Condition, message: impl Into<String>) -> Self {
        Violation {
            condition,
            target_vertices: Vec::new(),
            target_edges: Vec::new(),
            source_edges: Vec::new(),
            message: message.into(),
        }
    }

    fn vertices(mut self, v: impl IntoIterator<Item = VertexId>) -> Self {
        self.target_vertices.extend(v);
        self
    }

    fn target_edges(mut self, e: impl IntoIterator<Item = EdgeId>) -> Self {
        self.target_edges.extend(e);
        self
    }

    fn source_edges(mut self, e: impl IntoIterator<Item = EdgeId>) -> Self {
        self.source_edges.extend(e);
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.condition.index() {
            Some(i) => write!(f, "condition ({i}) {:?}: {}", self.condition, self.message),
            None => write!(f, "{:?}: {}", self.condition, self.message),
        }
    }
}

/// `Ok(())` or the first violation found.
pub type Validation = std::result::Result<(), Violation>;

/// Edge map `E(G^l) -> V(H) ∪ E(H) ∪ {Star}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    source: LoopedGraph,
    target: Multigraph,
    map: BTreeMap<EdgeId, Image>,
}

impl MinorModel {
    pub fn new(source: LoopedGraph, target: Multigraph, map: BTreeMap<EdgeId, Image>) -> Self {
        MinorModel { source, target, map }
    }

    pub fn source(&self) -> &LoopedGraph {
        &self.source
    }

    pub fn target(&self) -> &Multigraph {
        &self.target
    }

    pub fn map(&self) -> &BTreeMap<EdgeId, Image> {
        &self.map
    }

    pub fn image(&self, e: EdgeId) -> Option<Image> {
        self.map.get(&e).copied()
    }

    /// Preimage of a target vertex.
    pub fn vertex_preimage(&self, v: VertexId) -> BTreeSet<EdgeId> {
        self.preimage(Image::Vertex(v))
    }

    pub fn preimage(&self, image: Image) -> BTreeSet<EdgeId> {
        self.map.iter().filter(|(_, &i)| i == image).map(|(&e, _)| e).collect()
    }

    /// Source vertices covered by the preimage of target vertex `v`.
    pub fn branch_set(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.source.covered(&self.vertex_preimage(v))
    }

    fn preimages(&self) -> (BTreeMap<VertexId, BTreeSet<EdgeId>>, BTreeMap<EdgeId, BTreeSet<EdgeId>>) {
        let mut pv: BTreeMap<VertexId, BTreeSet<EdgeId>> =
            self.target.vertices().map(|v| (v, BTreeSet::new())).collect();
        let mut pe: BTreeMap<EdgeId, BTreeSet<EdgeId>> = self.target.edge_ids().map(|e| (e, BTreeSet::new())).collect();
        for (&e, &img) in &self.map {
            match img {
                Image::Vertex(v) => {
                    if let Some(s) = pv.get_mut(&v) {
                        s.insert(e);
                    }
                }
                Image::Edge(f) => {
                    if let Some(s) = pe.get_mut(&f) {
                        s.insert(e);
                    }
                }
                Image::Star => {}
            }
        }
        (pv, pe)
    }

    fn check_well_formed(&self) -> Validation {
        if !self.target.is_simple() {
            return Err(Violation::new(Condition::WellFormed, "target graph is not simple"));
        }
        let full = self.source.full();
        if let Some(e) = full.edge_ids().find(|e| !self.map.contains_key(e)) {
            return Err(
                Violation::new(Condition::WellFormed, format!("source edge {e} has no image")).source_edges([e]),
            );
        }
        for (&e, &img) in &self.map {
            if !full.has_edge(e) {
                return Err(
                    Violation::new(Condition::WellFormed, format!("edge {e} is not in the source")).source_edges([e]),
                );
            }
            let known = match img {
                Image::Vertex(v) => self.target.has_vertex(v),
                Image::Edge(f) => self.target.has_edge(f),
                Image::Star => true,
            };
            if !known {
                return Err(Violation::new(
                    Condition::WellFormed,
                    format!("edge {e} maps to {img:?}, which is not in the target"),
                )
                .source_edges([e]));
            }
        }
        Ok(())
    }

    /// Conditions (1)-(3), shared by minors and contractions.
    ///
    /// Overlapping parts are reported as (2) even though the part that lacks
    /// the shared loop is also not solid; the overlap is the sharper message.
    fn check_common(&self) -> Validation {
        self.check_well_formed()?;
        let (pv, pe) = self.preimages();
        for (&v, set) in &pv {
            if set.is_empty() {
                return Err(
                    Violation::new(Condition::SolidPreimage, format!("vertex {v} has an empty preimage")).vertices([v]),
                );
            }
        }
        let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut covered: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for (&v, set) in &pv {
            let cov = self.source.covered(set);
            for &x in &cov {
                if let Some(&w) = owner.get(&x) {
                    return Err(Violation::new(
                        Condition::DisjointPreimages,
                        format!("preimages of {w} and {v} share source vertex {x}"),
                    )
                    .vertices([w, v]));
                }
                owner.insert(x, v);
            }
            covered.insert(v, cov);
        }
        for (&v, set) in &pv {
            if !self.source.is_solid(set) {
                return Err(
                    Violation::new(Condition::SolidPreimage, format!("preimage of vertex {v} is not solid"))
                        .vertices([v])
                        .source_edges(set.iter().copied()),
                );
            }
        }
        let full = self.source.full();
        for (&f, set) in &pe {
            let (a, b) = self.target.endpoints(f).expect("target edge");
            for &e in set {
                let (x, y) = full.endpoints(e).expect("source edge");
                let joins = |p: VertexId, q: VertexId| covered[&a].contains(&p) && covered[&b].contains(&q);
                if x == y || !(joins(x, y) || joins(y, x)) {
                    return Err(Violation::new(
                        Condition::EdgeEndpoints,
                        format!("source edge {e} does not join the preimages of {a} and {b}"),
                    )
                    .vertices([a, b])
                    .target_edges([f])
                    .source_edges([e]));
                }
            }
        }
        Ok(())
    }

    /// Number of ordinary (non-loop) edges in the preimage of each vertex.
    pub fn part_sizes(&self) -> BTreeMap<VertexId, usize> {
        let full = self.source.full();
        let mut sizes: BTreeMap<VertexId, usize> = self.target.vertices().map(|v| (v, 0)).collect();
        for (&e, &img) in &self.map {
            if let (Image::Vertex(v), Some((x, y))) = (img, full.endpoints(e)) {
                if x != y {
                    *sizes.entry(v).or_default() += 1;
                }
            }
        }
        sizes
    }
}

/// Conditions (1)-(4).
pub fn validate_minor_model(m: &MinorModel) -> Validation {
    m.check_common()?;
    let (_, pe) = m.preimages();
    for (&f, set) in &pe {
        if set.len() != 1 {
            return Err(Violation::new(
                Condition::UniquePreimage,
                format!("target edge {f} has {} preimages", set.len()),
            )
            .target_edges([f])
            .source_edges(set.iter().copied()));
        }
    }
    Ok(())
}

/// Condition (5) over all pairs of ordinary source edges that are not
/// discarded. Fails with an error when (1)-(4) do not hold.
pub fn validate_distance_minor(m: &MinorModel) -> Result<Validation> {
    validate_minor_model(m).map_err(Error::InvalidModel)?;
    Ok(check_distances(m))
}

#[derive(Clone, Copy)]
enum Ends {
    Vertex(usize),
    Edge(usize, usize),
}

fn dense_dist(
    table: &Distances<'_>,
    index: &BTreeMap<VertexId, usize>,
    ids: &[VertexId],
    a: Ends,
    b: Ends,
    same: bool,
) -> Option<usize> {
    let _ = index;
    let d = |x: usize, y: usize| table.vertex_distance(ids[x], ids[y]);
    match (a, b) {
        (Ends::Vertex(x), Ends::Vertex(y)) => d(x, y),
        (Ends::Vertex(w), Ends::Edge(u, v)) | (Ends::Edge(u, v), Ends::Vertex(w)) => {
            if w == u || w == v {
                Some(1)
            } else {
                [d(w, u), d(w, v)].into_iter().flatten().min().map(|x| x + 1)
            }
        }
        (Ends::Edge(a0, a1), Ends::Edge(b0, b1)) => {
            if same {
                Some(1)
            } else if (a0.min(a1), a0.max(a1)) == (b0.min(b1), b0.max(b1)) {
                None
            } else {
                [d(a0, b0), d(a0, b1), d(a1, b0), d(a1, b1)]
                    .into_iter()
                    .flatten()
                    .min()
                    .map(|x| x + 2)
            }
        }
    }
}

fn check_distances(m: &MinorModel) -> Validation {
    let g = m.source.base();
    let h = &m.target;
    let gd = Distances::new(g);
    let hd = Distances::new(h);
    let g_ids: Vec<VertexId> = g.vertices().collect();
    let g_index: BTreeMap<VertexId, usize> = g_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let h_ids: Vec<VertexId> = h.vertices().collect();
    let h_index: BTreeMap<VertexId, usize> = h_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    // (source edge, source ends, image ends, image id for equality)
    let mut items: Vec<(EdgeId, Ends, Ends, Image)> = Vec::new();
    for (e, x, y) in g.edges() {
        let img = m.map[&e];
        let img_ends = match img {
            Image::Star => continue,
            Image::Vertex(v) => Ends::Vertex(h_index[&v]),
            Image::Edge(f) => {
                let (a, b) = h.endpoints(f).expect("target edge");
                Ends::Edge(h_index[&a], h_index[&b])
            }
        };
        items.push((e, Ends::Edge(g_index[&x], g_index[&y]), img_ends, img));
    }
    for (i, &(e1, s1, t1, img1)) in items.iter().enumerate() {
        for &(e2, s2, t2, img2) in &items[i..] {
            let in_source = dense_dist(&gd, &g_index, &g_ids, s1, s2, e1 == e2);
            let in_target = dense_dist(&hd, &h_index, &h_ids, t1, t2, img1 == img2);
            let ok = match (in_target, in_source) {
                (_, None) => true,
                (None, Some(_)) => false,
                (Some(t), Some(s)) => t <= s,
            };
            if !ok {
                let mut v = Violation::new(
                    Condition::Distance,
                    format!("dist_H({img1:?}, {img2:?}) = {in_target:?} exceeds dist_G({e1}, {e2}) = {in_source:?}"),
                )
                .source_edges([e1, e2]);
                for img in [img1, img2] {
                    match img {
                        Image::Vertex(x) => v.target_vertices.push(x),
                        Image::Edge(f) => v.target_edges.push(f),
                        Image::Star => {}
                    }
                }
                return Err(v);
            }
        }
    }
    Ok(())
}

/// Conditions (1)-(3) with nothing mapped to `Star`.
pub fn validate_contraction_model(m: &MinorModel) -> Validation {
    if let Some((&e, _)) = m.map.iter().find(|(_, &i)| i == Image::Star) {
        return Err(Violation::new(Condition::NoStar, format!("edge {e} is discarded")).source_edges([e]));
    }
    m.check_common()
}

/// Contraction model whose every part holds at most `c` ordinary edges.
pub fn validate_c_contraction(m: &MinorModel, c: usize) -> Validation {
    validate_contraction_model(m)?;
    for (v, size) in m.part_sizes() {
        if size > c {
            return Err(Violation::new(
                Condition::PartSize,
                format!("part of vertex {v} has {size} edges, more than {c}"),
            )
            .vertices([v])
            .source_edges(m.vertex_preimage(v)));
        }
    }
    Ok(())
}

/// A validated contraction model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionModel(MinorModel);

impl ContractionModel {
    pub fn new(model: MinorModel) -> Result<Self> {
        validate_contraction_model(&model).map_err(Error::InvalidModel)?;
        Ok(ContractionModel(model))
    }

    pub fn model(&self) -> &MinorModel {
        &self.0
    }

    pub fn into_model(self) -> MinorModel {
        self.0
    }

    /// Largest part size, i.e. the smallest `c` this model certifies.
    pub fn parameter(&self) -> usize {
        self.0.part_sizes().values().copied().max().unwrap_or(0)
    }

    /// Vertex partition of the source: the part of every target vertex.
    pub fn parts(&self) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
        self.0.target.vertices().map(|v| (v, self.0.branch_set(v))).collect()
    }

    /// Builds the model of contracting the classes of `mapping` (source vertex
    /// to target vertex), as produced by [`Multigraph::contract_edge_set`].
    pub fn from_quotient(
        source: &Multigraph,
        target: &Multigraph,
        mapping: &BTreeMap<VertexId, VertexId>,
    ) -> Result<Self> {
        let looped = source.with_loops()?;
        let mut map = BTreeMap::new();
        for (e, x, y) in looped.full().edges() {
            let (a, b) = (mapping[&x], mapping[&y]);
            let img = if a == b {
                Image::Vertex(a)
            } else {
                Image::Edge(
                    target
                        .edge_between(a, b)
                        .ok_or_else(|| Error::invalid(format!("quotient has no edge between {a} and {b}")))?,
                )
            };
            map.insert(e, img);
        }
        Self::new(MinorModel::new(looped, target.clone(), map))
    }
}

/// A contraction model with a certified part-size bound `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CContractionModel {
    base: ContractionModel,
    c: usize,
}

impl CContractionModel {
    pub fn new(base: ContractionModel, c: usize) -> Result<Self> {
        validate_c_contraction(base.model(), c).map_err(Error::InvalidModel)?;
        Ok(CContractionModel { base, c })
    }

    pub fn base(&self) -> &ContractionModel {
        &self.base
    }

    pub fn model(&self) -> &MinorModel {
        self.base.model()
    }

    pub fn c(&self) -> usize {
        self.c
    }
}

/// Serialized form: the looped source, the target and the edge map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelJson {
    pub source: Multigraph,
    pub target: Multigraph,
    pub map: BTreeMap<EdgeId, Image>,
}

impl From<&MinorModel> for ModelJson {
    fn from(m: &MinorModel) -> Self {
        ModelJson {
            source: m.source.full().clone(),
            target: m.target.clone(),
            map: m.map.clone(),
        }
    }
}

impl TryFrom<ModelJson> for MinorModel {
    type Error = Error;

    fn try_from(raw: ModelJson) -> Result<Self> {
        Ok(MinorModel::new(
            LoopedGraph::from_full(raw.source)?,
            raw.target,
            raw.map,
        ))
    }
}

impl Serialize for MinorModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModelJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MinorModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ModelJson::deserialize(d)?;
        MinorModel::try_from(raw).map_err(serde::de::Error::custom)
    }
}

/// The identity model of a simple graph onto itself.
pub fn identity_model(g: &Multigraph) -> Result<MinorModel> {
    let looped = g.with_loops()?;
    let mut map = BTreeMap::new();
    for (e, x, y) in looped.full().edges() {
        map.insert(e, if x == y { Image::Vertex(x) } else { Image::Edge(e) });
    }
    Ok(MinorModel::new(looped, g.clone(), map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Multigraph {
        Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn identity_is_valid() {
        let m = identity_model(&k3()).unwrap();
        assert_eq!(validate_minor_model(&m), Ok(()));
        assert_eq!(validate_distance_minor(&m).unwrap(), Ok(()));
        assert_eq!(validate_contraction_model(&m), Ok(()));
        assert_eq!(validate_c_contraction(&m, 0), Ok(()));
    }

    #[test]
    fn adjacent_edges_in_distinct_parts_break_condition_2() {
        // P3 = 0-1-2 with edge 0-1 in part a and edge 1-2 in part b.
        let p3 = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let gl = p3.with_loops().unwrap();
        let l = |v| gl.loop_of(v).unwrap();
        let map = BTreeMap::from([
            (0, Image::Vertex(0)),
            (1, Image::Star),
            (l(0), Image::Vertex(0)),
            (l(1), Image::Vertex(0)),
            (l(2), Image::Vertex(1)),
        ]);
        let ok = MinorModel::new(gl.clone(), Multigraph::with_vertices(2), map.clone());
        assert_eq!(validate_minor_model(&ok), Ok(()));

        let mut bad = map;
        bad.insert(1, Image::Vertex(1));
        let m = MinorModel::new(gl, Multigraph::with_vertices(2), bad);
        let err = validate_minor_model(&m).unwrap_err();
        assert_eq!(err.condition, Condition::DisjointPreimages);
        assert_eq!(err.condition.index(), Some(2));
        assert_eq!(err.target_vertices, vec![0, 1]);
    }

    #[test]
    fn part_without_its_loops_breaks_condition_1() {
        let p2 = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        let gl = p2.with_loops().unwrap();
        let l = |v| gl.loop_of(v).unwrap();
        let map = BTreeMap::from([(0, Image::Vertex(0)), (l(0), Image::Vertex(0)), (l(1), Image::Star)]);
        let m = MinorModel::new(gl, Multigraph::with_vertices(1), map);
        let err = validate_minor_model(&m).unwrap_err();
        assert_eq!(err.condition, Condition::SolidPreimage);
    }

    #[test]
    fn doubled_edge_preimage_breaks_condition_4() {
        // C4 onto K2 with both rungs mapped to the single target edge.
        let c4 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let gl = c4.with_loops().unwrap();
        let l = |v| gl.loop_of(v).unwrap();
        let target = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        let map = BTreeMap::from([
            (0, Image::Vertex(0)),
            (1, Image::Edge(0)),
            (2, Image::Vertex(1)),
            (3, Image::Edge(0)),
            (l(0), Image::Vertex(0)),
            (l(1), Image::Vertex(0)),
            (l(2), Image::Vertex(1)),
            (l(3), Image::Vertex(1)),
        ]);
        let m = MinorModel::new(gl, target, map);
        let err = validate_minor_model(&m).unwrap_err();
        assert_eq!(err.condition, Condition::UniquePreimage);
        assert_eq!(err.target_edges, vec![0]);
        assert_eq!(err.source_edges, vec![1, 3]);
        assert_eq!(validate_c_contraction(&m, 1), Ok(()));
        assert_eq!(
            validate_c_contraction(&m, 0).unwrap_err().condition,
            Condition::PartSize
        );
    }

    #[test]
    fn discarded_shortcut_breaks_condition_5() {
        // Path 0-1-2-3-4 realizes the target path v0..v4. Vertex 5 joins the
        // part of v0, vertex 6 the part of v4, and the discarded edge 5-6 is a
        // shortcut: dist_G(0-5, 4-6) = 3 while dist_H(v0, v4) = 4.
        let h5 = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let g = Multigraph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (4, 6), (5, 6)]).unwrap();
        let gl = g.with_loops().unwrap();
        let l = |v| gl.loop_of(v).unwrap();
        let mut map = BTreeMap::from([
            (0, Image::Edge(0)),
            (1, Image::Edge(1)),
            (2, Image::Edge(2)),
            (3, Image::Edge(3)),
            (4, Image::Vertex(0)),
            (5, Image::Vertex(4)),
            (6, Image::Star),
        ]);
        for v in 0..5 {
            map.insert(l(v), Image::Vertex(v));
        }
        map.insert(l(5), Image::Vertex(0));
        map.insert(l(6), Image::Vertex(4));
        let m = MinorModel::new(gl, h5, map);
        assert_eq!(validate_minor_model(&m), Ok(()));
        let err = validate_distance_minor(&m).unwrap().unwrap_err();
        assert_eq!(err.condition, Condition::Distance);
        assert_eq!(err.source_edges, vec![4, 5]);
        assert_eq!(err.target_vertices, vec![0, 4]);
    }

    #[test]
    fn contraction_without_shortcut_is_a_distance_minor() {
        // C5 onto P3 with the closing edge discarded: distances only shrink.
        let g = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let gl = g.with_loops().unwrap();
        let l = |v| gl.loop_of(v).unwrap();
        let h = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let map = BTreeMap::from([
            (0, Image::Edge(0)),
            (1, Image::Vertex(1)),
            (2, Image::Vertex(1)),
            (3, Image::Edge(1)),
            (4, Image::Star),
            (l(0), Image::Vertex(0)),
            (l(1), Image::Vertex(1)),
            (l(2), Image::Vertex(1)),
            (l(3), Image::Vertex(1)),
            (l(4), Image::Vertex(2)),
        ]);
        let m = MinorModel::new(gl, h, map);
        assert_eq!(validate_distance_minor(&m).unwrap(), Ok(()));
    }

    #[test]
    fn distance_check_requires_valid_minor() {
        let g = k3();
        let gl = g.with_loops().unwrap();
        let m = MinorModel::new(gl, g, BTreeMap::new());
        assert!(matches!(validate_distance_minor(&m), Err(Error::InvalidModel(_))));
        assert_eq!(validate_minor_model(&m).unwrap_err().condition, Condition::WellFormed);
    }

    #[test]
    fn model_json_round_trip() {
        let m = identity_model(&k3()).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains(r#""0":{"e":0}"#));
        assert!(text.contains(r#""3":{"v":0}"#));
        let back: MinorModel = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&Image::Star).unwrap(), r#""star""#);
    }
}
