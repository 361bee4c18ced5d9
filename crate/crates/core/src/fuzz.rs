//! Seeded random instances.
//!
//! Polygons are built from integer points near a circle, so every instance
//! is exact in the rational backend and reproducible from its seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ball::reorder_parallel;
use crate::geom::{CenteredBall, ConvexPolygon, PairedPolygon, Vec2};
use crate::scalar::Scalar;

pub type FuzzRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FuzzRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counterclockwise convex hull without collinear points (monotone chain).
pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn circle_points(rng: &mut FuzzRng, k: usize, radius: std::ops::Range<f64>) -> Vec<(i64, i64)> {
    let radius = rng.gen_range(radius);
    let offset = (rng.gen_range(-20..=20), rng.gen_range(-20..=20));
    let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
    angles.sort_by(f64::total_cmp);
    angles
        .iter()
        .map(|t| {
            let r = radius * rng.gen_range(0.85..1.15);
            ((r * t.cos()).round() as i64 + offset.0, (r * t.sin()).round() as i64 + offset.1)
        })
        .collect()
}

fn to_vec2<S: Scalar>(points: &[(i64, i64)]) -> Vec<Vec2<S>> {
    points.iter().map(|&(x, y)| Vec2::from_ints(x, y)).collect()
}

/// A convex polygon with `k` vertices in general position.
pub fn random_convex<S: Scalar>(rng: &mut FuzzRng, k: usize) -> ConvexPolygon<S> {
    random_convex_in(rng, k, 12.0..60.0)
}

/// A convex lattice polygon with `k` vertices and small coordinates, which
/// often has pairs of parallel sides.
pub fn random_small_convex<S: Scalar>(rng: &mut FuzzRng, k: usize) -> ConvexPolygon<S> {
    random_convex_in(rng, k, 3.0..7.0)
}

fn random_convex_in<S: Scalar>(rng: &mut FuzzRng, k: usize, radius: std::ops::Range<f64>) -> ConvexPolygon<S> {
    loop {
        let hull = convex_hull(&circle_points(rng, k, radius.clone()));
        if hull.len() == k {
            if let Ok(poly) = ConvexPolygon::new(to_vec2(&hull)) {
                return poly;
            }
        }
    }
}

/// A paired polygon with `n` between `3` and `8`. One in four is a small
/// lattice polygon, the rest are in general position.
pub fn random_paired<S: Scalar>(rng: &mut FuzzRng) -> PairedPolygon<S> {
    loop {
        let k = rng.gen_range(3..=8);
        let poly = if rng.gen_range(0..4) == 0 {
            random_small_convex(rng, k)
        } else {
            random_convex(rng, k)
        };
        match reorder_parallel(&poly) {
            Ok(p) if (3..=8).contains(&p.n()) => return p,
            _ => continue,
        }
    }
}

/// A centrally symmetric ball: the hull of random points and their mirrors.
pub fn random_ball<S: Scalar>(rng: &mut FuzzRng) -> CenteredBall<S> {
    loop {
        let k = rng.gen_range(2..=6);
        let half = circle_points(rng, k, 12.0..60.0);
        let pts: Vec<_> = half.iter().flat_map(|&(x, y)| [(x, y), (-x, -y)]).collect();
        let hull = convex_hull(&pts);
        if hull.len() < 4 {
            continue;
        }
        if let Ok(ball) = CenteredBall::new(to_vec2(&hull)) {
            return ball;
        }
    }
}

/// A rational in `(0, 2]` with denominator `60`.
pub fn random_c<S: Scalar>(rng: &mut FuzzRng) -> S {
    S::from_ratio(rng.gen_range(1..=120), 60)
}
