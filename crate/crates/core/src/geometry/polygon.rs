use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{cross, dot, intersect_segments, orient, orient_with, q, Point, Polysegment, SegmentHit, F2, Q};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// A simple polygon stored counterclockwise.
#[derive(Clone, Debug)]
pub struct SimplePolygon {
    ring: Vec<Point>,
    approx: Vec<F2>,
    convex: bool,
}

impl PartialEq for SimplePolygon {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
    }
}

impl Eq for SimplePolygon {}

/// `x > y`, decided in floating point when the rounded values differ.
fn greater(x: &Q, fx: f64, y: &Q, fy: f64) -> bool {
    match fx.partial_cmp(&fy) {
        Some(Ordering::Greater) => true,
        Some(Ordering::Less) => false,
        _ => x > y,
    }
}

/// A dyadic point near `f` accepted by `ok`, with as few bits as possible.
pub(crate) fn settle(f: F2, ok: impl Fn(&Point) -> bool) -> Option<Point> {
    for bits in (32..=52).step_by(4) {
        let s = (1u64 << bits) as f64;
        let r = Point::new(
            Q::new(
                num::BigInt::from((f.0 * s).round() as i128),
                num::BigInt::from(1u64 << bits),
            ),
            Q::new(
                num::BigInt::from((f.1 * s).round() as i128),
                num::BigInt::from(1u64 << bits),
            ),
        );
        if ok(&r) {
            return Some(r);
        }
    }
    None
}

impl SimplePolygon {
    /// Accepts either orientation; a repeated closing point is dropped.
    pub fn new(mut ring: Vec<Point>) -> Result<Self> {
        if ring.len() > 1 && ring.first() == ring.last() {
            ring.pop();
        }
        if ring.len() < 3 {
            return Err(Error::geometry("a polygon needs at least three corners"));
        }
        let n = ring.len();
        for i in 0..n {
            if ring[i] == ring[(i + 1) % n] {
                return Err(Error::geometry("consecutive polygon corners coincide"));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let hit = intersect_segments(&ring[i], &ring[(i + 1) % n], &ring[j], &ring[(j + 1) % n]);
                let ok = match hit {
                    SegmentHit::None => !adjacent,
                    SegmentHit::Point(p) => adjacent && (p == ring[(i + 1) % n] || p == ring[i]),
                    SegmentHit::Overlap(..) => false,
                };
                if !ok {
                    return Err(Error::geometry("polygon boundary is not simple"));
                }
            }
        }
        let mut poly = SimplePolygon {
            approx: Vec::new(),
            ring,
            convex: false,
        };
        match poly.area2().cmp(&Q::zero()) {
            Ordering::Equal => return Err(Error::geometry("polygon has zero area")),
            Ordering::Less => poly.ring.reverse(),
            Ordering::Greater => {}
        }
        poly.approx = poly.ring.iter().map(Point::to_f64).collect();
        let n = poly.ring.len();
        poly.convex = (0..n)
            .all(|i| orient(&poly.ring[(i + n - 1) % n], &poly.ring[i], &poly.ring[(i + 1) % n]) != Ordering::Less);
        Ok(poly)
    }

    pub fn rectangle(x0: Q, y0: Q, x1: Q, y1: Q) -> Result<Self> {
        Self::new(vec![
            Point::new(x0.clone(), y0.clone()),
            Point::new(x1.clone(), y0),
            Point::new(x1, y1.clone()),
            Point::new(x0, y1),
        ])
    }

    /// Regular `n`-gon with circumradius `radius` around `center`, snapped
    /// to rationals.
    pub fn regular(n: usize, center: (f64, f64), radius: f64, phase: f64) -> Result<Self> {
        let ring = (0..n)
            .map(|i| {
                let a = phase + 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                Point::from_f64(center.0 + radius * a.cos(), center.1 + radius * a.sin())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring)
    }

    pub fn ring(&self) -> &[Point] {
        &self.ring
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        let n = self.ring.len();
        (0..n).map(move |i| (&self.ring[i], &self.ring[(i + 1) % n]))
    }

    /// Twice the signed area.
    pub fn area2(&self) -> Q {
        self.edges()
            .fold(Q::zero(), |acc, (a, b)| acc + &a.x * &b.y - &a.y * &b.x)
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    /// Indices of corners with an interior angle above 180 degrees.
    pub fn reflex_corners(&self) -> Vec<usize> {
        let n = self.ring.len();
        (0..n)
            .filter(|&i| orient(&self.ring[(i + n - 1) % n], &self.ring[i], &self.ring[(i + 1) % n]) == Ordering::Less)
            .collect()
    }

    pub fn locate(&self, p: &Point) -> Location {
        let fp = p.to_f64();
        let n = self.ring.len();
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (&self.ring[i], &self.ring[(i + 1) % n]);
            let (fa, fb) = (self.approx[i], self.approx[(i + 1) % n]);
            let in_box =
                !(fp.0 < fa.0.min(fb.0) || fp.0 > fa.0.max(fb.0) || fp.1 < fa.1.min(fb.1) || fp.1 > fa.1.max(fb.1));
            let a_above = greater(&a.y, fa.1, &p.y, fp.1);
            let b_above = greater(&b.y, fb.1, &p.y, fp.1);
            if !in_box && a_above == b_above {
                continue;
            }
            let o = orient_with(a, b, p, fa, fb, fp);
            if o == Ordering::Equal && in_box && super::on_segment(p, a, b) {
                return Location::Boundary;
            }
            if a_above != b_above && o == if b_above { Ordering::Greater } else { Ordering::Less } {
                inside = !inside;
            }
        }
        if inside {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// Whether the closed segment `ab` lies in the closed polygon; with
    /// `strict`, whether it avoids the boundary altogether.
    pub fn contains_segment(&self, a: &Point, b: &Point, strict: bool) -> bool {
        let ends = [self.locate(a), self.locate(b)];
        if strict && ends.iter().any(|&l| l != Location::Inside) {
            return false;
        }
        if ends.contains(&Location::Outside) {
            return false;
        }
        if a == b {
            return true;
        }
        let r = b.sub(a);
        let rr = dot(&r, &r);
        let param = |p: &Point| dot(&p.sub(a), &r) / &rr;
        let mut ts: BTreeSet<Q> = BTreeSet::from([Q::zero(), q(1)]);
        for (c, d) in self.edges() {
            match intersect_segments(a, b, c, d) {
                SegmentHit::None => {}
                SegmentHit::Point(p) => {
                    if strict {
                        return false;
                    }
                    ts.insert(param(&p));
                }
                SegmentHit::Overlap(p, s) => {
                    if strict {
                        return false;
                    }
                    ts.insert(param(&p));
                    ts.insert(param(&s));
                }
            }
        }
        let ts: Vec<Q> = ts.into_iter().collect();
        ts.windows(2).all(|w| {
            let mid = a.lerp(b, &((&w[0] + &w[1]) / q(2)));
            match self.locate(&mid) {
                Location::Outside => false,
                Location::Boundary => !strict,
                Location::Inside => true,
            }
        })
    }

    /// Whether the polysegment lies in the closed polygon.
    pub fn contains_polysegment(&self, p: &Polysegment) -> bool {
        match p.points().len() {
            1 => self.locate(p.first()) != Location::Outside,
            _ => p.segments().all(|(a, b)| self.contains_segment(a, b, false)),
        }
    }

    /// Ear-clipping triangulation.
    pub fn triangulate(&self) -> Vec<[Point; 3]> {
        let mut idx: Vec<usize> = (0..self.ring.len()).collect();
        let mut out = Vec::new();
        while idx.len() > 3 {
            let m = idx.len();
            let ear = (0..m).find(|&k| {
                let (a, b, c) = (
                    &self.ring[idx[(k + m - 1) % m]],
                    &self.ring[idx[k]],
                    &self.ring[idx[(k + 1) % m]],
                );
                orient(a, b, c) == Ordering::Greater
                    && idx.iter().all(|&o| {
                        let p = &self.ring[o];
                        p == a || p == b || p == c || !in_closed_triangle(p, a, b, c)
                    })
            });
            let Some(k) = ear else { break };
            out.push([
                self.ring[idx[(k + m - 1) % m]].clone(),
                self.ring[idx[k]].clone(),
                self.ring[idx[(k + 1) % m]].clone(),
            ]);
            idx.remove(k);
        }
        if idx.len() == 3 {
            out.push([
                self.ring[idx[0]].clone(),
                self.ring[idx[1]].clone(),
                self.ring[idx[2]].clone(),
            ]);
        }
        out
    }

    /// A point strictly inside: the vertex average of a convex polygon, or
    /// else the centroid of the largest ear triangle.
    pub fn interior_point(&self) -> Point {
        if self.convex {
            let n = q(self.ring.len() as i64);
            let sx = self.ring.iter().fold(Q::zero(), |acc, p| acc + &p.x);
            let sy = self.ring.iter().fold(Q::zero(), |acc, p| acc + &p.y);
            return Point::new(sx / &n, sy / n);
        }
        let tri = self
            .triangulate()
            .into_iter()
            .max_by(|s, t| tri_area2(s).abs().cmp(&tri_area2(t).abs()))
            .expect("a simple polygon has a triangle");
        centroid(&tri)
    }

    /// Whether the closed polygons share a point.
    pub fn meets(&self, other: &SimplePolygon) -> bool {
        let (a, b) = (super::bbox(&self.ring), super::bbox(&other.ring));
        if !super::boxes_meet(&a, &b) {
            return false;
        }
        if self.convex && other.convex {
            // Disjoint convex polygons are strictly separated by the line
            // through an edge of one of them.
            let separates = |p: &SimplePolygon, r: &SimplePolygon| {
                let n = p.ring.len();
                (0..n).any(|i| {
                    let j = (i + 1) % n;
                    (0..r.ring.len()).all(|k| {
                        orient_with(
                            &p.ring[i],
                            &p.ring[j],
                            &r.ring[k],
                            p.approx[i],
                            p.approx[j],
                            r.approx[k],
                        ) == Ordering::Less
                    })
                })
            };
            return !separates(self, other) && !separates(other, self);
        }
        self.edges().any(|(a, b)| {
            other
                .edges()
                .any(|(c, d)| intersect_segments(a, b, c, d) != SegmentHit::None)
        }) || other.locate(&self.ring[0]) != Location::Outside
            || self.locate(&other.ring[0]) != Location::Outside
    }

    fn pieces(&self) -> Vec<Vec<Point>> {
        if self.convex {
            vec![self.ring.clone()]
        } else {
            self.triangulate().into_iter().map(|t| t.to_vec()).collect()
        }
    }

    /// A point strictly inside both polygons, if their intersection has
    /// interior. Convex pieces of the two are overlapped in floating point
    /// first and the pick is confirmed exactly; the exact overlap of the
    /// pieces is the fallback.
    pub fn interior_common_point(&self, other: &SimplePolygon) -> Option<Point> {
        let mine = self.pieces();
        let theirs = other.pieces();
        let ok = |p: &Point| self.locate(p) == Location::Inside && other.locate(p) == Location::Inside;
        let fl = |v: &Vec<Point>| v.iter().map(Point::to_f64).collect::<Vec<F2>>();
        let (mf, tf): (Vec<Vec<F2>>, Vec<Vec<F2>>) = (mine.iter().map(fl).collect(), theirs.iter().map(fl).collect());
        let mut best: Option<(f64, F2)> = None;
        for s in &mf {
            for t in &tf {
                let piece = clip_convex_f64(s, t);
                if piece.len() < 3 {
                    continue;
                }
                let area = ring_area2_f64(&piece).abs();
                if best.is_none_or(|(a, _)| area > a) {
                    let k = piece.len() as f64;
                    let c = (
                        piece.iter().map(|p| p.0).sum::<f64>() / k,
                        piece.iter().map(|p| p.1).sum::<f64>() / k,
                    );
                    best = Some((area, c));
                }
            }
        }
        if let Some(p) = best.filter(|b| b.0 > 0.0).and_then(|(_, c)| settle(c, ok)) {
            return Some(p);
        }
        let mut best: Option<(Q, Vec<Point>)> = None;
        for s in &mine {
            for t in &theirs {
                let piece = clip_convex(s, t);
                if piece.len() < 3 {
                    continue;
                }
                let area = ring_area2(&piece).abs();
                if area.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(a, _)| area > *a) {
                    best = Some((area, piece));
                }
            }
        }
        best.map(|(_, piece)| {
            let n = q(piece.len() as i64);
            let sx = piece.iter().fold(Q::zero(), |acc, p| acc + &p.x);
            let sy = piece.iter().fold(Q::zero(), |acc, p| acc + &p.y);
            Point::new(sx / &n, sy / n)
        })
    }

    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        self.ring.iter().map(Point::to_f64).collect()
    }
}

fn in_closed_triangle(p: &Point, a: &Point, b: &Point, c: &Point) -> bool {
    let o = [orient(a, b, p), orient(b, c, p), orient(c, a, p)];
    !o.contains(&Ordering::Less)
}

fn tri_area2(t: &[Point; 3]) -> Q {
    cross(&t[1].sub(&t[0]), &t[2].sub(&t[0]))
}

fn ring_area2(ring: &[Point]) -> Q {
    let n = ring.len();
    (0..n).fold(Q::zero(), |acc, i| {
        let (a, b) = (&ring[i], &ring[(i + 1) % n]);
        acc + &a.x * &b.y - &a.y * &b.x
    })
}

fn centroid(t: &[Point; 3]) -> Point {
    Point::new(
        (&t[0].x + &t[1].x + &t[2].x) / q(3),
        (&t[0].y + &t[1].y + &t[2].y) / q(3),
    )
}

fn ring_area2_f64(ring: &[F2]) -> f64 {
    let n = ring.len();
    (0..n)
        .map(|i| ring[i].0 * ring[(i + 1) % n].1 - ring[i].1 * ring[(i + 1) % n].0)
        .sum()
}

fn clip_convex_f64(subject: &[F2], clip: &[F2]) -> Vec<F2> {
    let mut out = subject.to_vec();
    let m = clip.len();
    for i in 0..m {
        if out.is_empty() {
            break;
        }
        let (a, b) = (clip[i], clip[(i + 1) % m]);
        let side = |p: F2| (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
        let input = std::mem::take(&mut out);
        let k = input.len();
        for j in 0..k {
            let (p, s) = (input[j], input[(j + 1) % k]);
            let (sp, ss) = (side(p), side(s));
            if sp >= 0.0 {
                out.push(p);
            }
            if (sp >= 0.0) != (ss >= 0.0) {
                let t = sp / (sp - ss);
                out.push((p.0 + t * (s.0 - p.0), p.1 + t * (s.1 - p.1)));
            }
        }
    }
    out
}

/// Sutherland-Hodgman clipping of a convex polygon by a counterclockwise
/// convex polygon.
fn clip_convex(subject: &[Point], clip: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = subject.to_vec();
    let m = clip.len();
    for i in 0..m {
        if out.is_empty() {
            break;
        }
        let (a, b) = (&clip[i], &clip[(i + 1) % m]);
        let input = std::mem::take(&mut out);
        let k = input.len();
        for j in 0..k {
            let (p, s) = (&input[j], &input[(j + 1) % k]);
            let p_in = orient(a, b, p) != Ordering::Less;
            let s_in = orient(a, b, s) != Ordering::Less;
            if p_in {
                out.push(p.clone());
            }
            if p_in != s_in {
                let r = s.sub(p);
                let denom = cross(&b.sub(a), &r);
                if !denom.is_zero() {
                    let t = cross(&b.sub(a), &a.sub(p)) / denom;
                    out.push(p.lerp(s, &t));
                }
            }
        }
        out.dedup();
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
    }
    out
}

/// Per-body radii: circumscribed `big_r` and a certified lower bound `r`
/// on the inscribed radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BodyFatness {
    pub big_r: f64,
    pub r: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FatnessReport {
    pub bodies: Vec<BodyFatness>,
    /// Largest circumradius.
    pub big_r: f64,
    /// Smallest inscribed radius.
    pub r: f64,
    /// `big_r / r`.
    pub alpha: f64,
}

/// Circumscribed radius by the minimum enclosing circle of the corners; the
/// inscribed radius is the best boundary distance found by grid sampling
/// followed by compass search, which is a lower bound on the true value.
pub fn fatness(bodies: &[SimplePolygon]) -> Result<FatnessReport> {
    if bodies.is_empty() {
        return Err(Error::geometry("fatness needs at least one body"));
    }
    let per: Vec<BodyFatness> = bodies
        .iter()
        .map(|b| {
            let pts = b.to_f64();
            BodyFatness {
                big_r: enclosing_radius(&pts),
                r: inscribed_radius(&pts),
            }
        })
        .collect();
    let big_r = per.iter().map(|b| b.big_r).fold(0.0, f64::max);
    let r = per.iter().map(|b| b.r).fold(f64::INFINITY, f64::min);
    if r <= 0.0 {
        return Err(Error::geometry("a body has no interior"));
    }
    Ok(FatnessReport {
        bodies: per,
        big_r,
        r,
        alpha: big_r / r,
    })
}

type P2 = (f64, f64);

fn d2(a: P2, b: P2) -> f64 {
    (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)
}

fn circle2(a: P2, b: P2) -> (P2, f64) {
    let c = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
    (c, d2(a, c).sqrt())
}

fn circle3(a: P2, b: P2, c: P2) -> Option<(P2, f64)> {
    let d = 2.0 * (a.0 * (b.1 - c.1) + b.0 * (c.1 - a.1) + c.0 * (a.1 - b.1));
    if d.abs() < 1e-300 {
        return None;
    }
    let sa = a.0 * a.0 + a.1 * a.1;
    let sb = b.0 * b.0 + b.1 * b.1;
    let sc = c.0 * c.0 + c.1 * c.1;
    let x = (sa * (b.1 - c.1) + sb * (c.1 - a.1) + sc * (a.1 - b.1)) / d;
    let y = (sa * (c.0 - b.0) + sb * (a.0 - c.0) + sc * (b.0 - a.0)) / d;
    Some(((x, y), d2(a, (x, y)).sqrt()))
}

fn enclosing_radius(pts: &[P2]) -> f64 {
    let inside = |c: &(P2, f64), p: P2| d2(c.0, p).sqrt() <= c.1 * (1.0 + 1e-12) + 1e-15;
    let mut circ = (pts[0], 0.0);
    for i in 1..pts.len() {
        if inside(&circ, pts[i]) {
            continue;
        }
        circ = (pts[i], 0.0);
        for j in 0..i {
            if inside(&circ, pts[j]) {
                continue;
            }
            circ = circle2(pts[i], pts[j]);
            for k in 0..j {
                if !inside(&circ, pts[k]) {
                    circ = circle3(pts[i], pts[j], pts[k]).unwrap_or(circ);
                }
            }
        }
    }
    circ.1
}

fn seg_dist(p: P2, a: P2, b: P2) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    d2(p, (a.0 + t * dx, a.1 + t * dy)).sqrt()
}

fn inside_f64(pts: &[P2], p: P2) -> bool {
    let n = pts.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        if (a.1 > p.1) != (b.1 > p.1) {
            let x = a.0 + (p.1 - a.1) * (b.0 - a.0) / (b.1 - a.1);
            if p.0 < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Distance to the boundary for inside points, 0 outside.
fn clearance(pts: &[P2], p: P2) -> f64 {
    if !inside_f64(pts, p) {
        return 0.0;
    }
    let n = pts.len();
    (0..n)
        .map(|i| seg_dist(p, pts[i], pts[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

fn inscribed_radius(pts: &[P2]) -> f64 {
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for &p in pts {
        lo = (lo.0.min(p.0), lo.1.min(p.1));
        hi = (hi.0.max(p.0), hi.1.max(p.1));
    }
    const STEPS: usize = 24;
    let mut starts: Vec<(f64, P2)> = Vec::new();
    for i in 0..=STEPS {
        for j in 0..=STEPS {
            let p = (
                lo.0 + (hi.0 - lo.0) * i as f64 / STEPS as f64,
                lo.1 + (hi.1 - lo.1) * j as f64 / STEPS as f64,
            );
            let c = clearance(pts, p);
            if c > 0.0 {
                starts.push((c, p));
            }
        }
    }
    let avg = (
        pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64,
        pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64,
    );
    starts.push((clearance(pts, avg), avg));
    starts.sort_by(|a, b| b.0.total_cmp(&a.0));
    starts.truncate(6);
    const D: f64 = std::f64::consts::FRAC_1_SQRT_2;
    let mut best = 0.0f64;
    for (mut val, mut p) in starts {
        let mut step = (hi.0 - lo.0).max(hi.1 - lo.1) / STEPS as f64;
        while step > 1e-13 * (1.0 + val) {
            let mut moved = false;
            for (dx, dy) in [
                (1.0, 0.0),
                (-1.0, 0.0),
                (0.0, 1.0),
                (0.0, -1.0),
                (D, D),
                (-D, D),
                (D, -D),
                (-D, -D),
            ] {
                let cand = (p.0 + dx * step, p.1 + dy * step);
                let c = clearance(pts, cand);
                if c > val {
                    val = c;
                    p = cand;
                    moved = true;
                }
            }
            if !moved {
                step /= 2.0;
            }
        }
        best = best.max(val);
    }
    best
}

#[derive(PartialEq)]
struct Entry(f64, usize, usize);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then(other.1.cmp(&self.1))
            .then(other.2.cmp(&self.2))
    }
}

/// Shortest path inside the closed polygon over the visibility graph of the
/// two end points and the reflex corners.
pub fn geodesic_path(poly: &SimplePolygon, p: &Point, q: &Point) -> Result<Polysegment> {
    let nodes: Vec<Point> = [p.clone(), q.clone()]
        .into_iter()
        .chain(poly.reflex_corners().into_iter().map(|i| poly.ring[i].clone()))
        .collect();
    shortest_visible_path(
        &nodes,
        |a, b| poly.contains_segment(a, b, false),
        |x| poly.locate(x) != Location::Outside,
    )
}

/// Dijkstra from `nodes[0]` to `nodes[1]` over pairs accepted by `visible`,
/// by Euclidean length, then number of pieces.
pub(crate) fn shortest_visible_path(
    nodes: &[Point],
    visible: impl Fn(&Point, &Point) -> bool,
    admissible: impl Fn(&Point) -> bool,
) -> Result<Polysegment> {
    let (p, q) = (&nodes[0], &nodes[1]);
    if !admissible(p) || !admissible(q) {
        return Err(Error::geometry("geodesic end point lies outside the polygon"));
    }
    if p == q {
        return Ok(Polysegment::point(p.clone()));
    }
    let n = nodes.len();
    let fl: Vec<P2> = nodes.iter().map(Point::to_f64).collect();
    let mut dist = vec![f64::INFINITY; n];
    let mut hops = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::from([Entry(0.0, 0, 0)]);
    dist[0] = 0.0;
    hops[0] = 0;
    while let Some(Entry(d, h, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == 1 {
            break;
        }
        for v in 0..n {
            if done[v] || v == u || nodes[v] == nodes[u] || !visible(&nodes[u], &nodes[v]) {
                continue;
            }
            let nd = d + d2(fl[u], fl[v]).sqrt();
            if nd < dist[v] - 1e-12 || ((nd - dist[v]).abs() <= 1e-12 && h + 1 < hops[v]) {
                dist[v] = nd;
                hops[v] = h + 1;
                prev[v] = u;
                heap.push(Entry(nd, h + 1, v));
            }
        }
    }
    if !done[1] {
        return Err(Error::geometry("no path inside the polygon"));
    }
    let mut chain = vec![1];
    while *chain.last().expect("non-empty") != 0 {
        chain.push(prev[*chain.last().expect("non-empty")]);
    }
    chain.reverse();
    Polysegment::new(chain.into_iter().map(|i| nodes[i].clone()).collect())
}

#[derive(Serialize, Deserialize)]
struct PolygonJson(Vec<Point>);

impl Serialize for SimplePolygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.ring.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplePolygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let PolygonJson(ring) = PolygonJson::deserialize(d)?;
        SimplePolygon::new(ring).map_err(serde::de::Error::custom)
    }
}
