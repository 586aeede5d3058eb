use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{boxes_meet, intersect_segments_exact, Point, Polysegment, SegmentHit};
use crate::error::{Error, Result};

/// All common points of two polysegments, sorted and without repeats.
/// `None` when they overlap along a piece of positive length.
pub(crate) fn common_points(a: &Polysegment, b: &Polysegment) -> Option<Vec<Point>> {
    if !boxes_meet(&a.bbox(), &b.bbox()) {
        return Some(Vec::new());
    }
    let mut out = BTreeSet::new();
    match (a.points().len(), b.points().len()) {
        (1, _) => {
            if b.contains(a.first()) {
                out.insert(a.first().clone());
            }
        }
        (_, 1) => {
            if a.contains(b.first()) {
                out.insert(b.first().clone());
            }
        }
        _ => {
            for (i, (p, q)) in a.segments().enumerate() {
                for (j, (r, s)) in b.segments().enumerate() {
                    if a.pieces_apart(i, b, j) {
                        continue;
                    }
                    match intersect_segments_exact(p, q, r, s) {
                        SegmentHit::None => {}
                        SegmentHit::Point(x) => {
                            out.insert(x);
                        }
                        SegmentHit::Overlap(..) => return None,
                    }
                }
            }
        }
    }
    Some(out.into_iter().collect())
}

/// Common points of two polysegments; a shared piece of positive length is
/// an error, since it is not a finite point set.
pub fn segment_crossings(a: &Polysegment, b: &Polysegment) -> Result<Vec<Point>> {
    common_points(a, b).ok_or_else(|| Error::geometry("polysegments overlap along a piece"))
}

/// A point shared by exactly two polysegments `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub a: usize,
    pub b: usize,
    pub point: Point,
}

/// A validated family of polysegments with all their crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    polysegments: Vec<Polysegment>,
    crossings: Vec<Crossing>,
}

impl Arrangement {
    pub fn polysegments(&self) -> &[Polysegment] {
        &self.polysegments
    }

    /// Sorted by polysegment pair, then point.
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.polysegments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polysegments.is_empty()
    }

    /// Crossing points on every polysegment.
    pub fn crossing_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.polysegments.len()];
        for c in &self.crossings {
            counts[c.a] += 1;
            counts[c.b] += 1;
        }
        counts
    }
}

/// Computes all pairwise crossings and checks that no point lies on three
/// or more polysegments.
pub fn build_arrangement(polysegments: Vec<Polysegment>) -> Result<Arrangement> {
    for (i, p) in polysegments.iter().enumerate() {
        if Polysegment::new(p.points().to_vec()).is_err() {
            return Err(Error::SelfCrossing(i));
        }
    }
    let n = polysegments.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let found: Vec<Result<Vec<Crossing>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let points = common_points(&polysegments[a], &polysegments[b]).ok_or(Error::Overlap(a, b))?;
            Ok(points.into_iter().map(|point| Crossing { a, b, point }).collect())
        })
        .collect();
    let mut crossings = Vec::new();
    for r in found {
        crossings.extend(r?);
    }
    let mut at: BTreeMap<&Point, BTreeSet<usize>> = BTreeMap::new();
    for c in &crossings {
        at.entry(&c.point).or_default().extend([c.a, c.b]);
    }
    if let Some((point, ids)) = at.iter().find(|(_, ids)| ids.len() > 2) {
        return Err(Error::TriplePoint {
            ids: ids.iter().copied().collect(),
            point: point.to_string(),
        });
    }
    crossings.sort();
    Ok(Arrangement {
        polysegments,
        crossings,
    })
}

/// Largest number of crossing points on a single polysegment.
pub fn xi(arr: &Arrangement) -> usize {
    arr.crossing_counts().into_iter().max().unwrap_or(0)
}

#[derive(Serialize, Deserialize)]
struct ArrangementJson {
    polysegments: Vec<Polysegment>,
}

impl Serialize for Arrangement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ArrangementJson {
            polysegments: self.polysegments.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Arrangement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ArrangementJson::deserialize(d)?;
        build_arrangement(raw.polysegments).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ratio, Point};

    fn p(x: i64, y: i64) -> Point {
        Point::int(x, y)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Polysegment {
        Polysegment::new(vec![p(a.0, a.1), p(b.0, b.1)]).unwrap()
    }

    #[test]
    fn unit_cross_and_parallels() {
        let a = seg((0, 0), (1, 1));
        let b = seg((0, 1), (1, 0));
        assert_eq!(
            segment_crossings(&a, &b).unwrap(),
            vec![Point::new(ratio(1, 2), ratio(1, 2))]
        );
        assert!(segment_crossings(&seg((0, 0), (1, 0)), &seg((0, 1), (1, 1)))
            .unwrap()
            .is_empty());
        assert!(segment_crossings(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))).is_err());
    }

    #[test]
    fn zigzag_crosses_a_line_three_times() {
        let zig = Polysegment::new(vec![p(0, 0), p(1, 2), p(2, 0), p(3, 2)]).unwrap();
        let line = seg((0, 1), (3, 1));
        let hits = segment_crossings(&zig, &line).unwrap();
        let expect = vec![
            Point::new(ratio(1, 2), ratio(1, 1)),
            Point::new(ratio(3, 2), ratio(1, 1)),
            Point::new(ratio(5, 2), ratio(1, 1)),
        ];
        assert_eq!(hits, expect);
    }

    #[test]
    fn arrangements_and_xi() {
        let arr = build_arrangement(vec![seg((0, 0), (2, 2)), seg((0, 2), (2, 0))]).unwrap();
        assert_eq!(arr.crossings().len(), 1);
        assert_eq!(xi(&arr), 1);

        let star = vec![seg((-1, 0), (1, 0)), seg((0, -1), (0, 1)), seg((-1, -1), (1, 1))];
        assert!(matches!(build_arrangement(star), Err(Error::TriplePoint { .. })));

        let mut family = vec![seg((0, 0), (10, 0))];
        family.extend((0..5).map(|i| seg((2 * i, -1), (2 * i, 1))));
        assert_eq!(xi(&build_arrangement(family).unwrap()), 5);

        let bad = Polysegment::new(vec![p(0, 0), p(2, 0), p(2, 2)]).unwrap();
        let ok = build_arrangement(vec![bad.clone(), seg((5, 5), (6, 6))]).unwrap();
        assert_eq!(xi(&ok), 0);
    }

    #[test]
    fn grid_family_has_xi_r() {
        let r = 4;
        let mut family: Vec<Polysegment> = (0..r).map(|i| seg((2 * i + 1, 0), (2 * i + 1, 2 * r))).collect();
        family.extend((0..r).map(|j| seg((0, 2 * j + 1), (2 * r, 2 * j + 1))));
        let arr = build_arrangement(family).unwrap();
        assert_eq!(xi(&arr), r as usize);
        assert_eq!(arr.crossings().len(), (r * r) as usize);
    }

    #[test]
    fn json_round_trip() {
        let arr = build_arrangement(vec![seg((0, 0), (2, 2)), seg((0, 2), (2, 0))]).unwrap();
        let text = serde_json::to_string(&arr).unwrap();
        let back: Arrangement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, arr);
    }
}
