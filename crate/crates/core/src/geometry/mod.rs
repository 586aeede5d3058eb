//! Exact planar geometry over rationals: points, polysegments, arrangements,
//! simple polygons, geodesics, fatness and general position.

mod arrangement;
mod polygon;
mod position;

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use arrangement::{build_arrangement, segment_crossings, xi, Arrangement, Crossing};
pub(crate) use polygon::settle;
pub use polygon::{fatness, geodesic_path, BodyFatness, FatnessReport, Location, SimplePolygon};
pub use position::{collinear_triples, perturb_general_position, perturb_general_position_within};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Denominator used when snapping floating-point input.
const SNAP: f64 = 1_048_576.0;

/// Nearest multiple of `2^-20`.
pub fn snap(x: f64) -> Result<Q> {
    if !x.is_finite() {
        return Err(Error::geometry(format!("coordinate {x} is not finite")));
    }
    let n = (x * SNAP).round();
    let n = BigInt::from(n as i128);
    Ok(Q::new(n, BigInt::from(SNAP as i64)))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: q(x), y: q(y) }
    }

    pub fn from_f64(x: f64, y: f64) -> Result<Self> {
        Ok(Point {
            x: snap(x)?,
            y: snap(y)?,
        })
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }

    pub fn sub(&self, o: &Point) -> (Q, Q) {
        (&self.x - &o.x, &self.y - &o.y)
    }

    pub fn lerp(&self, o: &Point, t: &Q) -> Point {
        Point {
            x: &self.x + (&o.x - &self.x) * t,
            y: &self.y + (&o.y - &self.y) * t,
        }
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        Point {
            x: (&self.x + &o.x) / q(2),
            y: (&self.y + &o.y) / q(2),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub(crate) fn cross(a: &(Q, Q), b: &(Q, Q)) -> Q {
    &a.0 * &b.1 - &a.1 * &b.0
}

pub(crate) fn dot(a: &(Q, Q), b: &(Q, Q)) -> Q {
    &a.0 * &b.0 + &a.1 * &b.1
}

pub(crate) type F2 = (f64, f64);

/// The turn sign computed in floating point, when it is certain despite
/// rounding of the inputs and of the arithmetic.
pub(crate) fn orient_f64(a: F2, b: F2, c: F2) -> Option<Ordering> {
    let (ux, uy, vx, vy) = (b.0 - a.0, b.1 - a.1, c.0 - a.0, c.1 - a.1);
    let det = ux * vy - uy * vx;
    let m = [a.0, a.1, b.0, b.1, c.0, c.1]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let bound = 1e-13 * m * (ux.abs() + uy.abs() + vx.abs() + vy.abs()) + 1e-28 * m * m;
    if !det.is_finite() || !bound.is_finite() {
        return None;
    }
    if det > bound {
        Some(Ordering::Greater)
    } else if det < -bound {
        Some(Ordering::Less)
    } else {
        None
    }
}

pub(crate) fn orient_exact(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&b.sub(a), &c.sub(a)).cmp(&Q::zero())
}

/// `orient` with floating-point copies of the points at hand.
pub(crate) fn orient_with(a: &Point, b: &Point, c: &Point, fa: F2, fb: F2, fc: F2) -> Ordering {
    orient_f64(fa, fb, fc).unwrap_or_else(|| orient_exact(a, b, c))
}

/// Sign of the turn `a -> b -> c`: `Greater` for counterclockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    orient_with(a, b, c, a.to_f64(), b.to_f64(), c.to_f64())
}

/// Whether two segments certainly miss each other, judged in floating
/// point. `false` means "unknown".
pub(crate) fn apart_f64(a: F2, b: F2, c: F2, d: F2) -> bool {
    let m = [a.0, a.1, b.0, b.1, c.0, c.1, d.0, d.1]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-13 * m;
    if a.0.max(b.0) + tol < c.0.min(d.0)
        || c.0.max(d.0) + tol < a.0.min(b.0)
        || a.1.max(b.1) + tol < c.1.min(d.1)
        || c.1.max(d.1) + tol < a.1.min(b.1)
    {
        return true;
    }
    let same_side = |p: F2, q: F2, r: F2, s: F2| match (orient_f64(p, q, r), orient_f64(p, q, s)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    };
    same_side(a, b, c, d) || same_side(c, d, a, b)
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Intersection of two closed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentHit {
    None,
    Point(Point),
    /// Collinear overlap of positive length, given by its end points.
    Overlap(Point, Point),
}

pub fn intersect_segments(a: &Point, b: &Point, c: &Point, d: &Point) -> SegmentHit {
    if apart_f64(a.to_f64(), b.to_f64(), c.to_f64(), d.to_f64()) {
        return SegmentHit::None;
    }
    intersect_segments_exact(a, b, c, d)
}

pub(crate) fn intersect_segments_exact(a: &Point, b: &Point, c: &Point, d: &Point) -> SegmentHit {
    if a == b {
        return if on_segment(a, c, d) {
            SegmentHit::Point(a.clone())
        } else {
            SegmentHit::None
        };
    }
    if c == d {
        return if on_segment(c, a, b) {
            SegmentHit::Point(c.clone())
        } else {
            SegmentHit::None
        };
    }
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = cross(&r, &s);
    let ca = c.sub(a);
    if denom.is_zero() {
        if !cross(&ca, &r).is_zero() {
            return SegmentHit::None;
        }
        // Collinear: project on the direction of ab.
        let rr = dot(&r, &r);
        let t0 = dot(&ca, &r) / &rr;
        let t1 = dot(&d.sub(a), &r) / &rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let start = lo.max(Q::zero());
        let end = hi.min(Q::one());
        return match start.cmp(&end) {
            Ordering::Greater => SegmentHit::None,
            Ordering::Equal => SegmentHit::Point(a.lerp(b, &start)),
            Ordering::Less => SegmentHit::Overlap(a.lerp(b, &start), a.lerp(b, &end)),
        };
    }
    let t = cross(&ca, &s) / &denom;
    let u = cross(&ca, &r) / &denom;
    let unit = |v: &Q| !v.is_negative() && *v <= Q::one();
    if unit(&t) && unit(&u) {
        SegmentHit::Point(a.lerp(b, &t))
    } else {
        SegmentHit::None
    }
}

/// A non-self-crossing chain of straight segments. A single point is the
/// degenerate chain of length 0.
#[derive(Clone, Debug)]
pub struct Polysegment {
    points: Vec<Point>,
    approx: Vec<F2>,
}

impl PartialEq for Polysegment {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for Polysegment {}

impl Polysegment {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::geometry("a polysegment needs at least one point"));
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::geometry("consecutive polysegment points coincide"));
        }
        let p = Polysegment {
            approx: points.iter().map(Point::to_f64).collect(),
            points,
        };
        if !p.is_simple() {
            return Err(Error::SelfCrossing(0));
        }
        Ok(p)
    }

    pub fn point(p: Point) -> Self {
        Polysegment {
            approx: vec![p.to_f64()],
            points: vec![p],
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Number of straight pieces.
    pub fn length(&self) -> usize {
        self.points.len() - 1
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        self.points.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn first(&self) -> &Point {
        &self.points[0]
    }

    pub fn last(&self) -> &Point {
        self.points.last().expect("non-empty")
    }

    /// Pieces `i` and `j` certainly miss each other.
    pub(crate) fn pieces_apart(&self, i: usize, other: &Polysegment, j: usize) -> bool {
        apart_f64(self.approx[i], self.approx[i + 1], other.approx[j], other.approx[j + 1])
    }

    fn is_simple(&self) -> bool {
        let segs: Vec<(&Point, &Point)> = self.segments().collect();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                if j > i + 1 && self.pieces_apart(i, self, j) {
                    continue;
                }
                let hit = intersect_segments_exact(segs[i].0, segs[i].1, segs[j].0, segs[j].1);
                let ok = match hit {
                    SegmentHit::None => j > i + 1,
                    SegmentHit::Point(p) => j == i + 1 && p == *segs[i].1,
                    SegmentHit::Overlap(..) => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `p` lies on the polysegment.
    pub fn contains(&self, p: &Point) -> bool {
        match self.points.len() {
            1 => self.points[0] == *p,
            _ => self.segments().any(|(a, b)| on_segment(p, a, b)),
        }
    }

    /// Position of a point of the polysegment along it: the segment index
    /// and the parameter in `[0, 1]` on that segment (first match).
    pub fn position(&self, p: &Point) -> Option<(usize, Q)> {
        if self.points.len() == 1 {
            return (self.points[0] == *p).then(|| (0, Q::zero()));
        }
        self.segments().enumerate().find_map(|(i, (a, b))| {
            on_segment(p, a, b).then(|| {
                let r = b.sub(a);
                (i, dot(&p.sub(a), &r) / dot(&r, &r))
            })
        })
    }

    pub fn bbox(&self) -> (Point, Point) {
        bbox(&self.points)
    }
}

pub(crate) fn bbox(points: &[Point]) -> (Point, Point) {
    let mut lo = points[0].clone();
    let mut hi = points[0].clone();
    for p in &points[1..] {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    }
    (lo, hi)
}

pub(crate) fn boxes_meet(a: &(Point, Point), b: &(Point, Point)) -> bool {
    a.0.x <= b.1.x && b.0.x <= a.1.x && a.0.y <= b.1.y && b.0.y <= a.1.y
}

// JSON: a coordinate is `[num, den]`; integers, decimal numbers and "n/d"
// strings are accepted on input. Numbers too large for i64 are written as
// decimal strings.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    fn from_big(b: &BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b.to_string()),
        }
    }

    fn to_big(&self) -> std::result::Result<BigInt, String> {
        match self {
            Int::Small(v) => Ok(BigInt::from(*v)),
            Int::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Pair(Int, Int),
    Int(i64),
    Float(f64),
    Text(String),
}

fn coord_to_json(v: &Q) -> Coord {
    Coord::Pair(Int::from_big(v.numer()), Int::from_big(v.denom()))
}

fn coord_from_json(c: Coord) -> std::result::Result<Q, String> {
    match c {
        Coord::Pair(n, d) => {
            let d = d.to_big()?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Q::new(n.to_big()?, d))
        }
        Coord::Int(v) => Ok(q(v)),
        Coord::Float(f) => snap(f).map_err(|e| e.to_string()),
        Coord::Text(s) => {
            let (n, d) = s.split_once('/').unwrap_or((&s, "1"));
            let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
            let d: BigInt = d.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Q::new(n, d))
        }
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (coord_to_json(&self.x), coord_to_json(&self.y)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (x, y) = <(Coord, Coord)>::deserialize(d)?;
        Ok(Point {
            x: coord_from_json(x).map_err(serde::de::Error::custom)?,
            y: coord_from_json(y).map_err(serde::de::Error::custom)?,
        })
    }
}

impl Serialize for Polysegment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.points.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polysegment {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Polysegment::new(Vec::<Point>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::int(x, y)
    }

    #[test]
    fn segment_hits() {
        assert_eq!(
            intersect_segments(&p(0, 0), &p(1, 1), &p(0, 1), &p(1, 0)),
            SegmentHit::Point(Point::new(ratio(1, 2), ratio(1, 2)))
        );
        assert_eq!(
            intersect_segments(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)),
            SegmentHit::None
        );
        assert_eq!(
            intersect_segments(&p(0, 0), &p(2, 0), &p(2, 0), &p(3, 5)),
            SegmentHit::Point(p(2, 0))
        );
        assert_eq!(
            intersect_segments(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)),
            SegmentHit::Overlap(p(1, 0), p(2, 0))
        );
        assert_eq!(
            intersect_segments(&p(0, 0), &p(1, 0), &p(1, 0), &p(3, 0)),
            SegmentHit::Point(p(1, 0))
        );
        assert_eq!(
            intersect_segments(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)),
            SegmentHit::None
        );
    }

    #[test]
    fn polysegment_validation() {
        assert!(Polysegment::new(vec![p(0, 0), p(2, 0), p(2, 2), p(1, -1)]).is_err());
        assert!(Polysegment::new(vec![p(0, 0), p(2, 0), p(1, 0)]).is_err());
        assert!(Polysegment::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 0)]).is_err());
        assert!(Polysegment::new(vec![p(0, 0), p(0, 0)]).is_err());
        let zig = Polysegment::new(vec![p(0, 0), p(1, 2), p(2, 0), p(3, 2)]).unwrap();
        assert_eq!(zig.length(), 3);
        assert_eq!(Polysegment::point(p(1, 1)).length(), 0);
    }

    #[test]
    fn json_forms() {
        let pt: Point = serde_json::from_str("[[1,2],[3,4]]").unwrap();
        assert_eq!(pt, Point::new(ratio(1, 2), ratio(3, 4)));
        assert_eq!(serde_json::to_string(&pt).unwrap(), "[[1,2],[3,4]]");
        let pt: Point = serde_json::from_str(r#"[0.5, "-7/3"]"#).unwrap();
        assert_eq!(pt, Point::new(ratio(1, 2), ratio(-7, 3)));
        let pt: Point = serde_json::from_str("[2, -1]").unwrap();
        assert_eq!(pt, p(2, -1));
        assert!(serde_json::from_str::<Point>("[[1,0],[1,1]]").is_err());
        let big = Point::new(Q::new(BigInt::from(10).pow(30u32), BigInt::from(3)), q(0));
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<Point>(&text).unwrap(), big);
    }
}
