use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{angle_cmp, det, parallel, parallel_ratio, same_direction, Vec2};

fn lowest_index<S: Scalar>(poly: &[Vec2<S>]) -> usize {
    (0..poly.len())
        .min_by(|&i, &j| {
            let (a, b) = (&poly[i], &poly[j]);
            a.y.partial_cmp(&b.y)
                .unwrap_or(Ordering::Equal)
                .then(a.x.partial_cmp(&b.x).unwrap_or(Ordering::Equal))
        })
        .unwrap_or(0)
}

/// Minkowski sum of two convex counterclockwise vertex lists.
///
/// Either input may be a single point or a segment. The result is convex,
/// counterclockwise, starts at its lowest vertex and has no collinear triples.
pub fn minkowski_sum<S: Scalar>(p: &[Vec2<S>], q: &[Vec2<S>]) -> Vec<Vec2<S>> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let (sp, sq) = (lowest_index(p), lowest_index(q));
    let p: Vec<_> = (0..p.len()).map(|i| p[(sp + i) % p.len()].clone()).collect();
    let q: Vec<_> = (0..q.len()).map(|i| q[(sq + i) % q.len()].clone()).collect();
    let edge = |poly: &[Vec2<S>], i: usize| &poly[(i + 1) % poly.len()] - &poly[i % poly.len()];

    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    let (np, nq) = (if p.len() > 1 { p.len() } else { 0 }, if q.len() > 1 { q.len() } else { 0 });
    out.push(&p[0] + &q[0]);
    while i < np || j < nq {
        let step = match (i < np, j < nq) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => angle_cmp(&edge(&p, i), &edge(&q, j)),
        };
        match step {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
        out.push(&p[i % p.len()] + &q[j % q.len()]);
    }
    out.pop();
    drop_collinear(out)
}

fn drop_collinear<S: Scalar>(mut pts: Vec<Vec2<S>>) -> Vec<Vec2<S>> {
    let mut changed = true;
    while changed && pts.len() > 2 {
        changed = false;
        let k = pts.len();
        for i in 0..k {
            let a = &pts[i] - &pts[(i + k - 1) % k];
            let b = &pts[(i + 1) % k] - &pts[i];
            if a.is_zero() || (parallel(&a, &b) && !b.is_zero() && same_direction(&a, &b)) {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    pts
}

/// Mixed area `A(P, Q) = 1/2 sum [Q_i, P_(i+1) - P_i]` of two closed polygons
/// with corresponding sides parallel. Degenerate sides are allowed.
pub fn mixed_area<S: Scalar>(p: &[Vec2<S>], q: &[Vec2<S>]) -> Result<S> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    let k = p.len();
    let sum = (0..k).fold(S::zero(), |acc, i| {
        acc + det(&q[i], &(&p[(i + 1) % k] - &p[i]))
    });
    Ok(sum.half())
}

/// The second expression of the mixed area, `1/2 sum [P_(i+1), Q_(i+1) - Q_i]`.
pub fn mixed_area_alt<S: Scalar>(p: &[Vec2<S>], q: &[Vec2<S>]) -> Result<S> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    let k = p.len();
    let sum = (0..k).fold(S::zero(), |acc, i| {
        acc + det(&p[(i + 1) % k], &(&q[(i + 1) % k] - &q[i]))
    });
    Ok(sum.half())
}

/// `a_i = scale * b_(i + shift) + translation` for all `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Homothety<S> {
    pub scale: S,
    pub translation: Vec2<S>,
    pub shift: usize,
}

/// Finds a positive homothety mapping the convex polygon `b` onto `a`.
pub fn is_homothetic<S: Scalar>(a: &[Vec2<S>], b: &[Vec2<S>]) -> Option<Homothety<S>> {
    let k = a.len();
    if k != b.len() || k < 3 {
        return None;
    }
    let edge = |poly: &[Vec2<S>], i: usize| &poly[(i + 1) % k] - &poly[i % k];
    let first = edge(a, 0);
    'shifts: for shift in 0..k {
        let scale = match parallel_ratio(&first, &edge(b, shift)) {
            Some(s) if s.is_positive() => s,
            _ => continue,
        };
        for i in 1..k {
            if !edge(a, i).approx_eq(&edge(b, i + shift).scale(&scale)) {
                continue 'shifts;
            }
        }
        let translation = &a[0] - &b[shift].scale(&scale);
        return Some(Homothety { scale, translation, shift });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{polygon_area, ConvexPolygon};
    use crate::scalar::Rational;

    fn v(x: i64, y: i64) -> Vec2<Rational> {
        Vec2::from_ints(x, y)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn square_plus_square_doubles() {
        let sq = [v(0, 0), v(1, 0), v(1, 1), v(0, 1)];
        let sum = minkowski_sum(&sq, &sq);
        assert_eq!(sum, vec![v(0, 0), v(2, 0), v(2, 2), v(0, 2)]);
    }

    #[test]
    fn triangle_plus_reflection_is_hexagon() {
        let tri = [v(0, 0), v(1, 0), v(0, 1)];
        let neg: Vec<_> = tri.iter().map(|p| -p).collect();
        let neg = ConvexPolygon::new(neg).unwrap();
        let sum = minkowski_sum(&tri, neg.vertices());
        assert_eq!(sum.len(), 6);
        assert_eq!(polygon_area(&sum), q(3, 1));
        let hexagon = [v(0, -1), v(1, -1), v(1, 0), v(0, 1), v(-1, 1), v(-1, 0)];
        let h = is_homothetic(&sum, &hexagon).unwrap();
        assert_eq!(h.scale, q(1, 1));
        assert_eq!(h.translation, v(0, 0));
    }

    #[test]
    fn adding_a_point_translates() {
        let tri = [v(0, 0), v(2, 0), v(0, 3)];
        let sum = minkowski_sum(&tri, &[v(5, -1)]);
        assert_eq!(sum, vec![v(5, -1), v(7, -1), v(5, 2)]);
    }

    #[test]
    fn mixed_area_examples() {
        let sq = [v(0, 0), v(1, 0), v(1, 1), v(0, 1)];
        assert_eq!(mixed_area(&sq, &sq).unwrap(), q(1, 1));
        let m = [
            Vec2::new(q(0, 1), q(1, 2)),
            Vec2::new(q(1, 2), q(1, 2)),
            Vec2::new(q(1, 2), q(0, 1)),
            Vec2::new(q(0, 1), q(1, 2)),
            Vec2::new(q(1, 2), q(1, 2)),
            Vec2::new(q(1, 2), q(0, 1)),
        ];
        assert_eq!(mixed_area(&m, &m).unwrap(), q(-1, 4));
        let p = [v(0, 0), v(1, 0), v(1, 0), v(0, 1), v(0, 1), v(0, 0)];
        let u = [v(0, -1), v(1, -1), v(1, 0), v(0, 1), v(-1, 1), v(-1, 0)];
        assert_eq!(mixed_area(&p, &u).unwrap(), q(3, 2));
        assert_eq!(mixed_area_alt(&p, &u).unwrap(), q(3, 2));
        assert!(matches!(mixed_area(&p, &sq), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn homothety_rejects_other_shapes() {
        let sq = [v(0, 0), v(1, 0), v(1, 1), v(0, 1)];
        let rect = [v(0, 0), v(2, 0), v(2, 1), v(0, 1)];
        assert!(is_homothetic(&sq, &rect).is_none());
        let big = [v(3, 3), v(5, 3), v(5, 5), v(3, 5)];
        let h = is_homothetic(&big, &sq).unwrap();
        assert_eq!(h.scale, q(2, 1));
        assert_eq!(h.translation, v(3, 3));
    }
}
