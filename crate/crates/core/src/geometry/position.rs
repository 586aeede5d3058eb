use std::collections::{BTreeMap, BTreeSet};

use std::cmp::Ordering;
use std::f64::consts::PI;

use num::bigint::BigInt;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{orient, Point, F2, Q};
use crate::error::{Error, Result};

/// All index triples `i < j < k` of distinct points on a common line.
///
/// Directions from each point are sorted by their floating-point angle;
/// only near-equal angles are compared exactly.
pub fn collinear_triples(points: &[Point]) -> Vec<[usize; 3]> {
    let fl: Vec<F2> = points.iter().map(Point::to_f64).collect();
    let m = fl.iter().fold(1.0f64, |m, p| m.max(p.0.abs()).max(p.1.abs()));
    let mut out = BTreeSet::new();
    for i in 0..points.len() {
        let mut dirs: Vec<(f64, f64, usize)> = Vec::new();
        for j in i + 1..points.len() {
            if points[j] == points[i] {
                continue;
            }
            let (dx, dy) = (fl[j].0 - fl[i].0, fl[j].1 - fl[i].1);
            let len = (dx * dx + dy * dy).sqrt();
            let tol = if len > 0.0 { 1e-12 * m / len } else { f64::INFINITY };
            let mut a = dy.atan2(dx);
            if a < 0.0 {
                a += PI;
            }
            if a >= PI {
                a -= PI;
            }
            dirs.push((a, tol.min(PI), j));
        }
        dirs.sort_by(|x, y| x.0.total_cmp(&y.0));
        let widest = dirs.iter().map(|d| d.1).fold(0.0f64, f64::max);
        let mut check = |a: usize, b: usize| {
            let (j, k) = (dirs[a].2.min(dirs[b].2), dirs[a].2.max(dirs[b].2));
            if orient(&points[i], &points[j], &points[k]) == Ordering::Equal {
                out.insert([i, j, k]);
            }
        };
        for a in 0..dirs.len() {
            let reach = dirs[a].1 + widest;
            for b in a + 1..dirs.len() {
                if dirs[b].0 - dirs[a].0 > reach {
                    break;
                }
                check(a, b);
            }
            // Directions just below pi meet those just above 0.
            if dirs[a].0 + reach >= PI {
                for b in 0..a {
                    if dirs[b].0 + PI - dirs[a].0 > reach {
                        break;
                    }
                    check(a, b);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Indices whose move would fix every degeneracy: the later copy of each
/// repeated point and the largest index of each collinear triple.
fn offenders(points: &[Point]) -> BTreeSet<usize> {
    let mut bad: BTreeSet<usize> = collinear_triples(points).into_iter().map(|t| t[2]).collect();
    let mut seen = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        if seen.insert(p, i).is_some() {
            bad.insert(i);
        }
    }
    bad
}

/// Moves points by at most `eps` in each coordinate until no two coincide
/// and no three are collinear. Points already in general position keep
/// their place.
pub fn perturb_general_position(points: &[Point], eps: &Q, seed: u64) -> Result<Vec<Point>> {
    perturb_general_position_within(points, eps, seed, &|_, _| true)
}

/// As [`perturb_general_position`], but a moved point `i` must also pass
/// `accept(i, p)`.
pub fn perturb_general_position_within(
    points: &[Point],
    eps: &Q,
    seed: u64,
    accept: &dyn Fn(usize, &Point) -> bool,
) -> Result<Vec<Point>> {
    if *eps <= Q::zero() {
        return Err(Error::geometry("perturbation radius must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = points.to_vec();
    const DEN: i64 = 1 << 20;
    for _ in 0..64 {
        let bad = offenders(&out);
        if bad.is_empty() {
            return Ok(out);
        }
        for i in bad {
            for _ in 0..256 {
                let mut offset = || Q::new(BigInt::from(rng.gen_range(-DEN..=DEN)), BigInt::from(DEN)) * eps;
                let cand = Point::new(&points[i].x + offset(), &points[i].y + offset());
                if accept(i, &cand) {
                    out[i] = cand;
                    break;
                }
            }
        }
    }
    Err(Error::geometry("could not reach general position"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    fn p(x: i64, y: i64) -> Point {
        Point::int(x, y)
    }

    #[test]
    fn collinear_detection() {
        let pts = vec![p(0, 0), p(1, 1), p(2, 2), p(0, 1), p(0, 5)];
        assert_eq!(collinear_triples(&pts), vec![[0, 1, 2], [0, 3, 4]]);
        assert!(collinear_triples(&[p(0, 0), p(1, 0), p(0, 1)]).is_empty());
    }

    #[test]
    fn perturbation_fixes_grids_and_keeps_good_points() {
        let pts: Vec<Point> = (0..4)
            .flat_map(|i| (0..4).map(move |j| p(i, j)))
            .chain([p(0, 0)])
            .collect();
        let eps = ratio(1, 100);
        let moved = perturb_general_position(&pts, &eps, 7).unwrap();
        assert!(collinear_triples(&moved).is_empty());
        assert_eq!(moved.iter().collect::<BTreeSet<_>>().len(), moved.len());
        for (a, b) in pts.iter().zip(&moved) {
            let (dx, dy) = a.sub(b);
            assert!(num::Signed::abs(&dx) <= eps && num::Signed::abs(&dy) <= eps);
        }
        let good = vec![p(0, 0), p(1, 0), p(0, 1)];
        assert_eq!(perturb_general_position(&good, &eps, 1).unwrap(), good);
        assert_eq!(perturb_general_position(&pts, &eps, 7).unwrap(), moved);
    }

    #[test]
    fn constrained_perturbation() {
        let pts = vec![p(0, 0), p(1, 0), p(2, 0)];
        let moved = perturb_general_position_within(&pts, &ratio(1, 10), 3, &|_, c| c.y >= Q::zero()).unwrap();
        assert!(moved[2].y > Q::zero());
        assert!(perturb_general_position_within(&pts, &ratio(1, 10), 3, &|_, _| false).is_err());
    }
}
