//! Seeded instance generators. Every instance is validated against its
//! family's hypotheses before it is returned.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{
    build_arrangement, collinear_triples, fatness, geodesic_path, ratio, xi, Arrangement, Point, Polysegment,
    SimplePolygon,
};
use crate::graph::Multigraph;
use crate::gridminor::{make_partial_triangulation, PartialTriangulation};
use crate::intersect::{body_intersection_graph, contact_points};

const SIDE: i64 = 1024;

fn random_point(rng: &mut ChaCha8Rng, side: i64) -> Point {
    Point::int(rng.gen_range(0..=side), rng.gen_range(0..=side))
}

fn in_general_position(points: &[Point]) -> bool {
    points.iter().collect::<BTreeSet<_>>().len() == points.len() && collinear_triples(points).is_empty()
}

/// Grows an arrangement one polysegment at a time. A candidate is kept when
/// all corners stay in general position, the arrangement still builds and
/// its crossing parameter stays within `xi_max`.
fn grow_arrangement(
    n: usize,
    xi_max: Option<usize>,
    rng: &mut ChaCha8Rng,
    mut candidate: impl FnMut(&mut ChaCha8Rng) -> Option<Vec<Point>>,
) -> Result<Arrangement> {
    let mut polys: Vec<Polysegment> = Vec::new();
    let mut corners: Vec<Point> = Vec::new();
    for _ in 0..n {
        let mut placed = false;
        for _ in 0..256 {
            let Some(pts) = candidate(rng) else { continue };
            let mut all = corners.clone();
            all.extend(pts.iter().cloned());
            if !in_general_position(&all) {
                continue;
            }
            let Ok(p) = Polysegment::new(pts) else { continue };
            let mut next = polys.clone();
            next.push(p);
            let Ok(arr) = build_arrangement(next.clone()) else {
                continue;
            };
            if xi_max.is_some_and(|m| xi(&arr) > m) {
                continue;
            }
            polys = next;
            corners = all;
            placed = true;
            break;
        }
        if !placed {
            return Err(Error::invalid(
                "could not place a polysegment within the crossing target",
            ));
        }
    }
    build_arrangement(polys)
}

pub fn segments(n: usize, xi_max: Option<usize>, rng: &mut ChaCha8Rng) -> Result<Arrangement> {
    grow_arrangement(n, xi_max, rng, |rng| {
        let a = random_point(rng, SIDE);
        let b = random_point(rng, SIDE);
        (a != b).then(|| vec![a, b])
    })
}

/// Random walks of one to three steps.
pub fn polysegments(n: usize, xi_max: Option<usize>, rng: &mut ChaCha8Rng) -> Result<Arrangement> {
    grow_arrangement(n, xi_max, rng, |rng| {
        let steps = rng.gen_range(1..=3);
        let mut pts = vec![random_point(rng, SIDE)];
        for _ in 0..steps {
            let last = pts.last().expect("start").to_f64();
            let (dx, dy) = (rng.gen_range(-SIDE / 3..=SIDE / 3), rng.gen_range(-SIDE / 3..=SIDE / 3));
            let (x, y) = (last.0 as i64 + dx, last.1 as i64 + dy);
            if !(0..=SIDE).contains(&x) || !(0..=SIDE).contains(&y) {
                return None;
            }
            pts.push(Point::int(x, y));
        }
        Some(pts)
    })
}

/// Axis-parallel shape of the given convexity on a `1/16` lattice: a
/// rectangle, an L or a U.
fn shape(rho: usize, rng: &mut ChaCha8Rng, box_side: i64) -> Result<SimplePolygon> {
    let d = 16;
    let kind = rng.gen_range(1..=rho.min(3));
    let w = rng.gen_range(6 * d..=14 * d);
    let h = rng.gen_range(6 * d..=14 * d);
    let t = rng.gen_range(2 * d..=2 * d + 8);
    let mut ring: Vec<(i64, i64)> = match kind {
        1 => vec![(0, 0), (w, 0), (w, h), (0, h)],
        2 => vec![(0, 0), (w, 0), (w, t), (t, t), (t, h), (0, h)],
        _ => vec![(0, 0), (w, 0), (w, h), (w - t, h), (w - t, t), (t, t), (t, h), (0, h)],
    };
    // Quarter turns keep the lattice and vary the openings.
    for _ in 0..rng.gen_range(0..4) {
        ring = ring.into_iter().map(|(x, y)| (-y, x)).collect();
    }
    let (x0, y0) = (rng.gen_range(0..=box_side * d), rng.gen_range(0..=box_side * d));
    let poly = SimplePolygon::new(
        ring.into_iter()
            .map(|(x, y)| Point::new(ratio(x0 + x, d), ratio(y0 + y, d)))
            .collect(),
    )?;
    Ok(poly)
}

/// Checks that every two corners are joined by a geodesic of at most `rho`
/// segments.
pub fn corners_rho_convex(body: &SimplePolygon, rho: usize) -> bool {
    let ring = body.ring();
    (0..ring.len())
        .all(|i| (i + 1..ring.len()).all(|j| geodesic_path(body, &ring[i], &ring[j]).is_ok_and(|p| p.length() <= rho)))
}

/// Bodies that are rectangles, L- or U-shapes (at most `rho` of the three
/// kinds, in that order), placed so that touching bodies share interior.
pub fn rho_convex(n: usize, rho: usize, rng: &mut ChaCha8Rng) -> Result<Vec<SimplePolygon>> {
    if rho == 0 {
        return Err(Error::invalid("rho must be positive"));
    }
    let box_side = 6 * (n as f64).sqrt().ceil() as i64 + 2;
    for _ in 0..32 {
        let bodies = (0..n).map(|_| shape(rho, rng, box_side)).collect::<Result<Vec<_>>>()?;
        if !bodies.iter().all(|b| corners_rho_convex(b, rho)) {
            continue;
        }
        if contact_points(&bodies, rng.gen()).is_ok() {
            return Ok(bodies);
        }
    }
    Err(Error::invalid(
        "could not place rho-convex bodies with interior contacts",
    ))
}

/// Size of the largest clique, by Bron-Kerbosch with pivoting.
pub fn clique_number(g: &Multigraph) -> usize {
    fn go(
        adj: &BTreeMap<usize, BTreeSet<usize>>,
        r: usize,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        best: &mut usize,
    ) {
        if p.is_empty() {
            *best = (*best).max(r);
            return;
        }
        if r + p.len() <= *best {
            return;
        }
        let pivot = *p
            .union(&x)
            .max_by_key(|u| adj[u].intersection(&p).count())
            .expect("nonempty");
        let candidates: Vec<usize> = p.difference(&adj[&pivot]).copied().collect();
        for v in candidates {
            go(
                adj,
                r + 1,
                p.intersection(&adj[&v]).copied().collect(),
                x.intersection(&adj[&v]).copied().collect(),
                best,
            );
            p.remove(&v);
            x.insert(v);
        }
    }
    let adj: BTreeMap<usize, BTreeSet<usize>> = g
        .neighbor_sets()
        .into_iter()
        .map(|(v, mut s)| {
            s.remove(&v);
            (v, s)
        })
        .collect();
    let mut best = 0;
    go(&adj, 0, g.vertex_set().clone(), BTreeSet::new(), &mut best);
    best
}

/// Regular polygons whose family fatness stays within `alpha`, placed so
/// that the intersection graph has no `K_h`.
pub fn fat_convex(n: usize, alpha: f64, h: usize, rng: &mut ChaCha8Rng) -> Result<Vec<SimplePolygon>> {
    if h < 2 {
        return Err(Error::invalid("h must be at least 2"));
    }
    let sides: Vec<usize> = (4..=12)
        .filter(|&k| 1.0 / (std::f64::consts::PI / k as f64).cos() < alpha)
        .collect();
    let Some(&fewest) = sides.first() else {
        return Err(Error::invalid(format!("no regular polygon is {alpha}-fat")));
    };
    // Radii spread so that max R / min r stays below alpha.
    let spread = (alpha * (std::f64::consts::PI / fewest as f64).cos()).min(2.0);
    let radius = 64.0;
    let box_side = radius * 1.8 * (n as f64).sqrt();
    for _ in 0..32 {
        let mut bodies: Vec<SimplePolygon> = Vec::new();
        for _ in 0..n {
            let mut placed = false;
            for _ in 0..64 {
                let k = *sides.choose(rng).expect("sides");
                let r = radius * rng.gen_range(1.0..spread.max(1.0 + 1e-9));
                let c = (rng.gen_range(0.0..box_side), rng.gen_range(0.0..box_side));
                let body = SimplePolygon::regular(k, c, r, rng.gen_range(0.0..std::f64::consts::TAU))?;
                bodies.push(body);
                if clique_number(&body_intersection_graph(&bodies)) < h {
                    placed = true;
                    break;
                }
                bodies.pop();
            }
            if !placed {
                break;
            }
        }
        if bodies.len() < n || fatness(&bodies)?.alpha > alpha {
            continue;
        }
        if contact_points(&bodies, rng.gen()).is_ok() {
            return Ok(bodies);
        }
    }
    Err(Error::invalid("could not place fat bodies within the targets"))
}

/// Partial triangulation of the `4k x 4k` grid.
pub fn triangulated_grid(k: usize, rng: &mut ChaCha8Rng) -> Result<PartialTriangulation> {
    make_partial_triangulation(4 * k, rng.gen())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn cliques() {
        let k4 = Multigraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        assert_eq!(clique_number(&k4), 4);
        assert_eq!(clique_number(&Multigraph::with_vertices(3)), 1);
        assert_eq!(clique_number(&Multigraph::new()), 0);
    }

    #[test]
    fn shapes_have_their_convexity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for rho in 1..=3 {
            for _ in 0..10 {
                let s = shape(rho, &mut rng, 10).unwrap();
                assert!(corners_rho_convex(&s, rho));
            }
        }
        let u = shape(3, &mut ChaCha8Rng::seed_from_u64(0), 10).unwrap();
        assert!(u.ring().len() <= 8);
    }

    #[test]
    fn generated_arrangements_meet_their_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = segments(10, Some(2), &mut rng).unwrap();
        assert_eq!(a.len(), 10);
        assert!(xi(&a) <= 2);
        let p = polysegments(6, None, &mut rng).unwrap();
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn fat_bodies_respect_alpha_and_h() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let bodies = fat_convex(8, 1.5, 3, &mut rng).unwrap();
        assert!(fatness(&bodies).unwrap().alpha <= 1.5);
        assert!(clique_number(&body_intersection_graph(&bodies)) < 3);
        assert!(fat_convex(3, 1.0, 3, &mut rng).is_err());
    }
}
