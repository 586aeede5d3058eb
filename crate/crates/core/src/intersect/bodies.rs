use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num::bigint::BigInt;
use num::{FromPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::intersection_graph;
use crate::error::{Error, Result};
use crate::geometry::{
    build_arrangement, collinear_triples, fatness, geodesic_path, intersect_segments, perturb_general_position_within,
    settle, to_f64, Arrangement, Location, Point, Polysegment, SegmentHit, SimplePolygon, Q,
};
use crate::graph::Multigraph;

/// One vertex per body, one edge per pair of closed bodies that meet.
pub fn body_intersection_graph(bodies: &[SimplePolygon]) -> Multigraph {
    let n = bodies.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let edges: Vec<(usize, usize)> = pairs
        .into_par_iter()
        .filter(|&(i, j)| bodies[i].meets(&bodies[j]))
        .collect();
    Multigraph::from_edges(n, &edges).expect("pairs index bodies")
}

/// A point inside every body and one inside every touching pair, in general
/// position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactPointSet {
    pub body: Vec<Point>,
    pub pair: BTreeMap<(usize, usize), Point>,
}

impl ContactPointSet {
    /// `p_i` followed by the pair points of `i` in order of the other index.
    pub fn points_of(&self, i: usize) -> Vec<Point> {
        std::iter::once(self.body[i].clone())
            .chain(
                self.pair
                    .iter()
                    .filter(|((a, b), _)| *a == i || *b == i)
                    .map(|(_, p)| p.clone()),
            )
            .collect()
    }

    pub fn all_points(&self) -> Vec<Point> {
        self.body.iter().chain(self.pair.values()).cloned().collect()
    }

    /// Largest number of touching partners of a body.
    pub fn max_degree(&self) -> usize {
        (0..self.body.len())
            .map(|i| self.points_of(i).len() - 1)
            .max()
            .unwrap_or(0)
    }

    /// Checks containment in the bodies and general position.
    pub fn validate(&self, bodies: &[SimplePolygon]) -> Result<()> {
        if self.body.len() != bodies.len() {
            return Err(Error::invalid("one body point per body is required"));
        }
        for (i, p) in self.body.iter().enumerate() {
            if bodies[i].locate(p) != Location::Inside {
                return Err(Error::Modeling(format!("point of body {i} is not inside it")));
            }
        }
        for (&(i, j), p) in &self.pair {
            if bodies[i].locate(p) != Location::Inside || bodies[j].locate(p) != Location::Inside {
                return Err(Error::Modeling(format!(
                    "contact point of {i} and {j} is not inside both"
                )));
            }
        }
        let all = self.all_points();
        if all.iter().collect::<BTreeSet<_>>().len() != all.len() {
            return Err(Error::Modeling("contact points repeat".into()));
        }
        if !collinear_triples(&all).is_empty() {
            return Err(Error::Modeling("three contact points are collinear".into()));
        }
        Ok(())
    }
}

/// Picks `p_i` inside each body and `p_ij` inside each touching pair, then
/// perturbs them into general position without leaving their bodies.
pub fn contact_points(bodies: &[SimplePolygon], seed: u64) -> Result<ContactPointSet> {
    let n = bodies.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    type Found = Option<((usize, usize), Point)>;
    let found: Vec<Result<Found>> = pairs
        .into_par_iter()
        .map(|(i, j)| {
            if !bodies[i].meets(&bodies[j]) {
                return Ok(None);
            }
            let p = bodies[i]
                .interior_common_point(&bodies[j])
                .ok_or(Error::EmptyInteriorContact(i, j))?;
            Ok(Some(((i, j), p)))
        })
        .collect();
    let mut pair = BTreeMap::new();
    for f in found {
        if let Some((key, p)) = f? {
            pair.insert(key, p);
        }
    }
    let keys: Vec<(usize, usize)> = pair.keys().copied().collect();
    let owners = |idx: usize| if idx < n { (idx, idx) } else { keys[idx - n] };
    let accept = |idx: usize, p: &Point| {
        let (i, j) = owners(idx);
        bodies[i].locate(p) == Location::Inside && bodies[j].locate(p) == Location::Inside
    };
    // Structured inputs put many picks on common lines; a small seeded
    // jitter inside the allowed region makes degeneracies rare.
    let scale = to_f64(&feature_scale(bodies));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<Point> = bodies
        .iter()
        .map(SimplePolygon::interior_point)
        .chain(pair.into_values())
        .collect();
    let mut points: Vec<Point> = Vec::with_capacity(raw.len());
    for (idx, p) in raw.into_iter().enumerate() {
        let f = p.to_f64();
        let mut reach = scale / 64.0;
        let mut placed = None;
        for _ in 0..24 {
            let c = (
                f.0 + reach * rng.gen_range(-1.0..1.0),
                f.1 + reach * rng.gen_range(-1.0..1.0),
            );
            placed = settle(c, |x| accept(idx, x));
            if placed.is_some() {
                break;
            }
            reach /= 2.0;
        }
        points.push(placed.unwrap_or(p));
    }
    if !points.is_empty() {
        let mut eps = feature_scale(bodies) / Q::from_integer(BigInt::from(256));
        let mut attempt = 0;
        points = loop {
            match perturb_general_position_within(&points, &eps, seed.wrapping_add(attempt), &accept) {
                Ok(p) => break p,
                Err(e) if attempt >= 24 => return Err(e),
                Err(_) => {
                    eps /= Q::from_integer(BigInt::from(2));
                    attempt += 1;
                }
            }
        };
    }
    let set = ContactPointSet {
        body: points[..n].to_vec(),
        pair: keys.into_iter().zip(points[n..].iter().cloned()).collect(),
    };
    set.validate(bodies)?;
    Ok(set)
}

/// Smallest bounding-box side over all bodies.
fn feature_scale(bodies: &[SimplePolygon]) -> Q {
    bodies
        .iter()
        .map(|b| {
            let (lo, hi) = crate::geometry::bbox(b.ring());
            let (w, h) = (&hi.x - &lo.x, &hi.y - &lo.y);
            if w < h {
                w
            } else {
                h
            }
        })
        .min()
        .unwrap_or_else(|| Q::from_integer(BigInt::from(1)))
}

/// How crossing numbers are counted for the ρ-convex report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossingCount {
    /// Crossings of the emitted polysegments.
    #[default]
    OffsetWalk,
    /// Twice the common points of the tree drawings.
    TreeDrawing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoOptions {
    pub rho: usize,
    pub count: CrossingCount,
}

impl RhoOptions {
    pub fn new(rho: usize) -> Self {
        RhoOptions {
            rho,
            count: CrossingCount::OffsetWalk,
        }
    }
}

/// Polysegment `i` models body `i`.
#[derive(Clone, Debug, Serialize)]
pub struct RhoModel {
    pub arrangement: Arrangement,
    pub rho: usize,
    pub delta: usize,
    /// Straight pieces of each polysegment.
    pub lengths: Vec<usize>,
    pub length_bound: usize,
    /// Segments of the longest geodesic seen while checking `rho`.
    pub max_geodesic_segments: usize,
    pub count: CrossingCount,
    pub crossings: Vec<usize>,
    /// `(2 rho delta)^2 delta`.
    pub crossing_bound: usize,
    /// Segments of each tree drawing, as point pairs.
    pub trees: Vec<Vec<(Point, Point)>>,
}

impl RhoModel {
    pub fn max_length(&self) -> usize {
        self.lengths.iter().copied().max().unwrap_or(0)
    }

    pub fn xi(&self) -> usize {
        self.crossings.iter().copied().max().unwrap_or(0)
    }

    pub fn within_length_bound(&self) -> bool {
        self.max_length() <= self.length_bound
    }

    pub fn within_crossing_bound(&self) -> bool {
        self.xi() <= self.crossing_bound
    }
}

/// Models ρ-convex bodies by polysegments: per body a tree through its
/// contact points, drawn with at most `rho` segments per branch where the
/// body allows it, then walked around at a small offset.
pub fn model_rho_convex(bodies: &[SimplePolygon], contacts: &ContactPointSet, options: RhoOptions) -> Result<RhoModel> {
    contacts.validate(bodies)?;
    if options.rho == 0 {
        return Err(Error::invalid("rho must be positive"));
    }
    let n = bodies.len();
    let pts: Vec<Vec<Point>> = (0..n).map(|i| contacts.points_of(i)).collect();
    let geodesics: Vec<Result<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut worst = 0;
            for p in &pts[i][1..] {
                let s = geodesic_path(&bodies[i], &pts[i][0], p)?.length();
                if s > options.rho {
                    return Err(Error::Modeling(format!(
                        "body {i} needs a geodesic with {s} segments, more than rho = {}",
                        options.rho
                    )));
                }
                worst = worst.max(s);
            }
            Ok(worst)
        })
        .collect();
    let mut max_geodesic_segments = 0;
    for g in geodesics {
        max_geodesic_segments = max_geodesic_segments.max(g?);
    }
    let trees: Vec<Tree> = (0..n)
        .into_par_iter()
        .map(|i| Tree::grow(&bodies[i], &pts[i]))
        .collect::<Result<_>>()?;

    let expected = body_intersection_graph(bodies);
    let mut eps = feature_scale(bodies) / Q::from_integer(BigInt::from(64));
    let mut last_err = Error::Modeling("offset walk never validated".into());
    for _ in 0..40 {
        let walks: Vec<Result<Polysegment>> = (0..n)
            .into_par_iter()
            .map(|i| trees[i].offset_walk(&bodies[i], &eps))
            .collect();
        let attempt = (|| -> Result<Arrangement> {
            let polys = walks.into_iter().collect::<Result<Vec<_>>>()?;
            let arr = build_arrangement(polys)?;
            if intersection_graph(&arr) != expected {
                return Err(Error::Modeling("offset walks changed the touching pairs".into()));
            }
            Ok(arr)
        })();
        match attempt {
            Ok(arr) => {
                let delta = expected.max_degree();
                let lengths = arr.polysegments().iter().map(Polysegment::length).collect();
                let crossings = match options.count {
                    CrossingCount::OffsetWalk => arr.crossing_counts(),
                    CrossingCount::TreeDrawing => tree_crossings(&trees, &expected),
                };
                let length_bound = 2 * options.rho * delta;
                return Ok(RhoModel {
                    arrangement: arr,
                    rho: options.rho,
                    delta,
                    lengths,
                    length_bound,
                    max_geodesic_segments,
                    count: options.count,
                    crossings,
                    crossing_bound: length_bound * length_bound * delta,
                    trees: trees.iter().map(Tree::segments).collect(),
                });
            }
            Err(e) => {
                last_err = e;
                eps /= Q::from_integer(BigInt::from(2));
            }
        }
    }
    Err(last_err)
}

fn tree_crossings(trees: &[Tree], g: &Multigraph) -> Vec<usize> {
    let segs: Vec<Vec<(Point, Point)>> = trees.iter().map(Tree::segments).collect();
    let mut counts = vec![0; trees.len()];
    for (_, i, j) in g.edges() {
        let mut common = BTreeSet::new();
        for (a, b) in &segs[i] {
            for (c, d) in &segs[j] {
                match intersect_segments(a, b, c, d) {
                    SegmentHit::None => {}
                    SegmentHit::Point(p) => {
                        common.insert(p);
                    }
                    SegmentHit::Overlap(p, q) => {
                        common.insert(p);
                        common.insert(q);
                    }
                }
            }
        }
        if segs[i].is_empty() && segs[j].is_empty() {
            common.insert(trees[i].nodes[0].clone());
        }
        counts[i] += 2 * common.len();
        counts[j] += 2 * common.len();
    }
    counts
}

/// A straight-line tree drawn strictly inside a body.
struct Tree {
    nodes: Vec<Point>,
    adj: Vec<Vec<usize>>,
    /// Whether a node is a contact point.
    marked: Vec<bool>,
}

#[derive(PartialEq)]
struct Item {
    hops: usize,
    len: f64,
    node: usize,
}

impl Eq for Item {}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .hops
            .cmp(&self.hops)
            .then(other.len.total_cmp(&self.len))
            .then(other.node.cmp(&self.node))
    }
}

fn exact(x: f64) -> Q {
    Q::from_f64(x).expect("finite")
}

fn dist(a: &Point, b: &Point) -> f64 {
    let (a, b) = (a.to_f64(), b.to_f64());
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

/// Reflex corners moved a little into the body, so paths may bend there
/// while staying off the boundary.
fn pulled_corners(body: &SimplePolygon) -> Vec<Point> {
    let ring = body.ring();
    let n = ring.len();
    body.reflex_corners()
        .into_iter()
        .filter_map(|i| {
            let v = ring[i].to_f64();
            let (a, b) = (ring[(i + n - 1) % n].to_f64(), ring[(i + 1) % n].to_f64());
            let unit = |p: (f64, f64)| {
                let (dx, dy) = (p.0 - v.0, p.1 - v.1);
                let l = (dx * dx + dy * dy).sqrt();
                (dx / l, dy / l)
            };
            let (ua, ub) = (unit(a), unit(b));
            let mut d = (-(ua.0 + ub.0), -(ua.1 + ub.1));
            let l = (d.0 * d.0 + d.1 * d.1).sqrt();
            if l < 1e-12 {
                return None;
            }
            d = (d.0 / l, d.1 / l);
            let reach = dist(&ring[i], &ring[(i + 1) % n]).min(dist(&ring[i], &ring[(i + n - 1) % n]));
            let mut delta = reach / 64.0;
            for _ in 0..30 {
                let p = Point::new(&ring[i].x + exact(d.0 * delta), &ring[i].y + exact(d.1 * delta));
                if body.locate(&p) == Location::Inside {
                    return Some(p);
                }
                delta /= 2.0;
            }
            None
        })
        .collect()
}

impl Tree {
    /// Joins the points one by one, each by a path with the fewest segments
    /// that stays strictly inside the body and meets the drawing only at its
    /// last point, which is a node of the drawing.
    fn grow(body: &SimplePolygon, pts: &[Point]) -> Result<Tree> {
        let corners = pulled_corners(body);
        let mut tree = Tree {
            nodes: vec![pts[0].clone()],
            adj: vec![Vec::new()],
            marked: vec![true],
        };
        let mut corner_node: Vec<Option<usize>> = vec![None; corners.len()];
        for p in &pts[1..] {
            if let Some(k) = tree.nodes.iter().position(|x| x == p) {
                tree.marked[k] = true;
                continue;
            }
            // Search nodes: 0 is `p`, then the corners; tree nodes end paths.
            let free: Vec<usize> = (0..corners.len()).filter(|&c| corner_node[c].is_none()).collect();
            let m = 1 + free.len();
            let position = |k: usize| -> &Point {
                if k == 0 {
                    p
                } else if k < m {
                    &corners[free[k - 1]]
                } else {
                    &tree.nodes[k - m]
                }
            };
            let total = m + tree.nodes.len();
            let mut best: Vec<(usize, f64)> = vec![(usize::MAX, f64::INFINITY); total];
            let mut prev = vec![usize::MAX; total];
            let mut heap = BinaryHeap::from([Item {
                hops: 0,
                len: 0.0,
                node: 0,
            }]);
            best[0] = (0, 0.0);
            let mut goal = None;
            while let Some(Item { hops, len, node }) = heap.pop() {
                if (hops, len) != best[node] {
                    continue;
                }
                if node >= m {
                    goal = Some(node);
                    break;
                }
                for next in 1..total {
                    if next == node {
                        continue;
                    }
                    let cand = (hops + 1, len + dist(position(node), position(next)));
                    let better = cand.0 < best[next].0 || (cand.0 == best[next].0 && cand.1 < best[next].1 - 1e-12);
                    if better && tree.clear(body, position(node), position(next), next >= m) {
                        best[next] = cand;
                        prev[next] = node;
                        heap.push(Item {
                            hops: cand.0,
                            len: cand.1,
                            node: next,
                        });
                    }
                }
            }
            let goal = goal.ok_or_else(|| Error::Modeling("no path joins a contact point to its tree".into()))?;
            let mut path = vec![goal];
            while *path.last().expect("non-empty") != 0 {
                path.push(prev[*path.last().expect("non-empty")]);
            }
            // path runs from the tree node back to `p`.
            let placed: Vec<(usize, Point)> = path[1..].iter().map(|&k| (k, position(k).clone())).collect();
            let mut at = goal - m;
            for (k, point) in placed {
                let id = tree.nodes.len();
                tree.nodes.push(point);
                tree.adj.push(vec![at]);
                tree.adj[at].push(id);
                tree.marked.push(k == 0);
                if k > 0 {
                    corner_node[free[k - 1]] = Some(id);
                }
                at = id;
            }
        }
        Ok(tree)
    }

    fn clear(&self, body: &SimplePolygon, a: &Point, b: &Point, b_on_tree: bool) -> bool {
        if !body.contains_segment(a, b, true) {
            return false;
        }
        for (u, vs) in self.adj.iter().enumerate() {
            for &v in vs {
                if u > v {
                    continue;
                }
                match intersect_segments(a, b, &self.nodes[u], &self.nodes[v]) {
                    SegmentHit::None => {}
                    SegmentHit::Point(x) if b_on_tree && x == *b => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn segments(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for (u, vs) in self.adj.iter().enumerate() {
            for &v in vs {
                if u < v {
                    out.push((self.nodes[u].clone(), self.nodes[v].clone()));
                }
            }
        }
        out
    }

    /// Walks around the tree at distance about `eps`, passing through each
    /// contact point once, and cuts the closed walk open at the first point.
    fn offset_walk(&self, body: &SimplePolygon, eps: &Q) -> Result<Polysegment> {
        if self.nodes.len() == 1 {
            return Ok(Polysegment::point(self.nodes[0].clone()));
        }
        let angle = |v: usize, w: usize| {
            let (a, b) = (self.nodes[v].to_f64(), self.nodes[w].to_f64());
            (b.1 - a.1).atan2(b.0 - a.0)
        };
        // Neighbours in counterclockwise order, compared exactly.
        let sorted: Vec<Vec<usize>> = (0..self.nodes.len())
            .map(|v| {
                let mut ns = self.adj[v].clone();
                ns.sort_by(|&a, &b| ccw_cmp(&self.nodes[a].sub(&self.nodes[v]), &self.nodes[b].sub(&self.nodes[v])));
                ns
            })
            .collect();
        let eps_f = to_f64(eps);
        let start = (0, sorted[0][0]);
        let (mut u, mut v) = start;
        let mut seen = vec![false; self.nodes.len()];
        let mut ring: Vec<Point> = Vec::new();
        let mut root_at = None;
        loop {
            let deg = sorted[v].len();
            let k = sorted[v].iter().position(|&x| x == u).expect("tree edge");
            let w = sorted[v][(k + deg - 1) % deg];
            if self.marked[v] && !seen[v] {
                seen[v] = true;
                if v == 0 {
                    root_at = Some(ring.len());
                }
                ring.push(self.nodes[v].clone());
            } else {
                let au = angle(v, u);
                let mut sweep = (au - angle(v, w)).rem_euclid(std::f64::consts::TAU);
                if w == u || sweep == 0.0 {
                    sweep = std::f64::consts::TAU;
                }
                let bis = au - sweep / 2.0;
                let reach = if w == u {
                    eps_f
                } else {
                    eps_f * (1.0 / (sweep / 2.0).sin()).min(4.0)
                };
                let at = &self.nodes[v];
                ring.push(Point::new(
                    &at.x + exact(reach * bis.cos()),
                    &at.y + exact(reach * bis.sin()),
                ));
            }
            (u, v) = (v, w);
            if (u, v) == start {
                break;
            }
        }
        let r = root_at.expect("the root is a contact point");
        ring.rotate_left(r);
        let walk = Polysegment::new(ring).map_err(|_| Error::Modeling("offset walk crosses itself".into()))?;
        if !body.contains_polysegment(&walk) {
            return Err(Error::Modeling("offset walk leaves its body".into()));
        }
        Ok(walk)
    }
}

/// Counterclockwise order of direction vectors starting from the positive
/// x axis.
fn ccw_cmp(a: &(Q, Q), b: &(Q, Q)) -> Ordering {
    let half = |d: &(Q, Q)| !(d.1 > Q::zero() || (d.1.is_zero() && d.0 > Q::zero()));
    half(a).cmp(&half(b)).then_with(|| (&b.0 * &a.1).cmp(&(&a.0 * &b.1)))
}

/// Polysegment `i` models body `i`.
#[derive(Clone, Debug, Serialize)]
pub struct FatModel {
    pub arrangement: Arrangement,
    pub alpha: f64,
    pub delta: usize,
    pub h: usize,
    /// `16 alpha^2 h`.
    pub degree_bound: f64,
    pub degree_check: bool,
}

/// Models convex bodies by threading each body's contact points in
/// lexicographic order. The degree check reports whether the instance is
/// consistent with being `h`-vertex-subgraph-free at its fatness.
pub fn model_fat_convex(bodies: &[SimplePolygon], contacts: &ContactPointSet, h: usize) -> Result<FatModel> {
    contacts.validate(bodies)?;
    if let Some(i) = bodies.iter().position(|b| !b.is_convex()) {
        return Err(Error::Modeling(format!("body {i} is not convex")));
    }
    let polys = (0..bodies.len())
        .map(|i| {
            let mut p = contacts.points_of(i);
            p.sort();
            Polysegment::new(p)
        })
        .collect::<Result<Vec<_>>>()?;
    let arrangement = build_arrangement(polys)?;
    let alpha = if bodies.is_empty() { 1.0 } else { fatness(bodies)?.alpha };
    let delta = contacts.max_degree();
    let degree_bound = 16.0 * alpha * alpha * h as f64;
    Ok(FatModel {
        arrangement,
        alpha,
        delta,
        h,
        degree_bound,
        degree_check: delta as f64 <= degree_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{q, xi};

    fn rect(x0: i64, y0: i64, x1: i64, y1: i64) -> SimplePolygon {
        SimplePolygon::rectangle(q(x0), q(y0), q(x1), q(y1)).unwrap()
    }

    fn l_shape(x: i64, y: i64, s: i64) -> SimplePolygon {
        let p = |a: i64, b: i64| Point::int(x + a * s, y + b * s);
        SimplePolygon::new(vec![p(0, 0), p(4, 0), p(4, 1), p(1, 1), p(1, 4), p(0, 4)]).unwrap()
    }

    #[test]
    fn contact_points_of_squares() {
        let bodies = vec![rect(0, 0, 2, 2), rect(1, 1, 3, 3), rect(10, 10, 11, 11)];
        let c = contact_points(&bodies, 1).unwrap();
        assert_eq!(c.pair.len(), 1);
        let p = &c.pair[&(0, 1)];
        assert!(p.x > q(1) && p.x < q(2) && p.y > q(1) && p.y < q(2));
        assert_eq!(c.points_of(2).len(), 1);
        assert_eq!(c.max_degree(), 1);
        let tangent = vec![rect(0, 0, 1, 1), rect(1, 0, 2, 1)];
        assert!(matches!(
            contact_points(&tangent, 1),
            Err(Error::EmptyInteriorContact(0, 1))
        ));
        assert!(contact_points(&[], 1).unwrap().body.is_empty());
    }

    #[test]
    fn rho_model_of_convex_pairs() {
        let bodies = vec![
            rect(0, 0, 4, 4),
            rect(3, 3, 7, 7),
            rect(6, 0, 10, 4),
            rect(20, 20, 21, 21),
        ];
        let c = contact_points(&bodies, 3).unwrap();
        let m = model_rho_convex(&bodies, &c, RhoOptions::new(1)).unwrap();
        assert_eq!(intersection_graph(&m.arrangement), body_intersection_graph(&bodies));
        assert_eq!(m.arrangement.polysegments()[3].length(), 0);
        assert!(m.within_length_bound());
        assert!(m.within_crossing_bound());
    }

    #[test]
    fn rho_model_of_l_shapes() {
        let bodies = vec![l_shape(0, 0, 2), l_shape(5, 1, 2), l_shape(10, 2, 2)];
        let c = contact_points(&bodies, 5).unwrap();
        assert!(model_rho_convex(&bodies, &c, RhoOptions::new(1)).is_err() || c.max_degree() == 0);
        let m = model_rho_convex(&bodies, &c, RhoOptions::new(2)).unwrap();
        assert_eq!(intersection_graph(&m.arrangement), body_intersection_graph(&bodies));
        assert_eq!(m.delta, 2);
        assert!(xi(&m.arrangement) <= m.crossing_bound);
        let tree = model_rho_convex(
            &bodies,
            &c,
            RhoOptions {
                rho: 2,
                count: CrossingCount::TreeDrawing,
            },
        )
        .unwrap();
        assert!(tree.xi() <= tree.crossing_bound);
    }

    #[test]
    fn single_body_is_a_point() {
        let bodies = vec![rect(0, 0, 1, 1)];
        let c = contact_points(&bodies, 0).unwrap();
        let m = model_rho_convex(&bodies, &c, RhoOptions::new(1)).unwrap();
        assert_eq!(m.lengths, vec![0]);
    }

    #[test]
    fn fat_models() {
        let bodies: Vec<SimplePolygon> = (0..3)
            .flat_map(|i| (0..3).map(move |j| rect(3 * i, 3 * j, 3 * i + 2, 3 * j + 2)))
            .chain([rect(1, 1, 4, 4)])
            .collect();
        let c = contact_points(&bodies, 2).unwrap();
        let m = model_fat_convex(&bodies, &c, 3).unwrap();
        assert_eq!(intersection_graph(&m.arrangement), body_intersection_graph(&bodies));
        assert!(m.degree_check);

        let lonely = vec![rect(0, 0, 1, 1), rect(5, 5, 6, 6)];
        let c = contact_points(&lonely, 2).unwrap();
        let m = model_fat_convex(&lonely, &c, 3).unwrap();
        assert_eq!(m.delta, 0);
        assert!(m.degree_check);

        let l = vec![l_shape(0, 0, 1)];
        let c = contact_points(&l, 0).unwrap();
        assert!(model_fat_convex(&l, &c, 3).is_err());
    }

    #[test]
    fn stacked_disks_fail_the_degree_check() {
        let disks: Vec<SimplePolygon> = (0..50)
            .map(|i| SimplePolygon::regular(64, (i as f64 * 0.01, i as f64 * 0.007), 1.0, 0.0).unwrap())
            .collect();
        let c = contact_points(&disks, 4).unwrap();
        let m = model_fat_convex(&disks, &c, 3).unwrap();
        assert_eq!(m.delta, 49);
        assert!(!m.degree_check);
        assert_eq!(intersection_graph(&m.arrangement), body_intersection_graph(&disks));
    }
}
