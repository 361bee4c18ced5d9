//! Curvature, evolutes and involutes of constant-width polygons.
//!
//! The Minkowskian normal at `P_i` is the line `P_i + s U_i`; consecutive
//! normals meet at the centers of curvature `E_(i+1/2)`, which form the
//! evolute. The involute runs the other way: it builds from the central
//! equidistant `M` a polygon `N` of constant `V`-width whose evolute is `M`.

use crate::ball::dual_ball;
use crate::cw::{same_side, CentralEquidistant, Cusps};
use crate::error::{Error, Result};
use crate::geom::{
    cyc, det, mixed_area, parallel_ratio, CenteredBall, ChordCensus, ChordCount,
    EdgeIndexed, PairedPolygon, RegionStatus, Vec2,
};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Evolute<S> {
    /// `E_(i+1/2)` in slot `i`.
    pub points: EdgeIndexed<Vec2<S>>,
    /// Curvature radii `mu_(i+1/2)`.
    pub mus: EdgeIndexed<S>,
}

impl<S: Scalar> Evolute<S> {
    pub fn is_degenerate(&self) -> bool {
        let first = &self.points[0];
        self.points.iter().all(|p| p.approx_eq(first))
    }
}

/// Centers and radii of curvature of the polygon `p`, whose sides are
/// parallel to those of `ball`.
///
/// The radius of side `i` is `lambda_(i+1/2) / [B_i, B_(i+1)]`, where
/// `lambda` is the dual length of the side; the defining relation
/// `P_(i+1) - P_i = mu (B_(i+1) - B_i)` is checked against it.
pub fn evolute<S: Scalar>(p: &[Vec2<S>], ball: &CenteredBall<S>) -> Result<Evolute<S>> {
    if p.len() != ball.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: ball.len() });
    }
    let dual = dual_ball(ball);
    let mut points = Vec::with_capacity(p.len());
    let mut mus = Vec::with_capacity(p.len());
    for i in 0..p.len() as isize {
        let side = cyc(p, i + 1) - cyc(p, i);
        let lambda = if side.is_zero() {
            S::zero()
        } else {
            parallel_ratio(&side, dual.vertex(i)).ok_or(Error::NotParallel { index: i as usize })?
        };
        let mu = lambda / ball.edge_det(i);
        if !side.approx_eq(&ball.edge(i).scale(&mu)) {
            return Err(Error::Identity(format!("curvature radius of side {i} is inconsistent")));
        }
        points.push(cyc(p, i) - &ball.vertex(i).scale(&mu));
        mus.push(mu);
    }
    Ok(Evolute { points: EdgeIndexed(points), mus: EdgeIndexed(mus) })
}

/// The two expressions of each center of curvature,
/// `P_i - mu U_i` and `P_(i+1) - mu U_(i+1)`.
pub fn evolute_forms<S: Scalar>(
    p: &[Vec2<S>],
    ball: &CenteredBall<S>,
    e: &Evolute<S>,
) -> Vec<(Vec2<S>, Vec2<S>)> {
    (0..p.len() as isize)
        .map(|i| {
            let mu = e.mus.at(i);
            (
                cyc(p, i) - &ball.vertex(i).scale(mu),
                cyc(p, i + 1) - &ball.vertex(i + 1).scale(mu),
            )
        })
        .collect()
}

/// Vertices `E_(i+1/2)` (`0 <= i < n`) whose neighbours lie strictly on the
/// same side of the line through `E_(i+1/2)` parallel to side `i`. The side
/// direction is taken from the ball, which stays defined where `P` has a
/// repeated vertex.
///
/// Consecutive centers coincide exactly where consecutive radii agree, so the
/// test runs on maximal runs of equal radii: the run is a cusp when its
/// distinct neighbours lie on one side, i.e. when `mu` has a strict local
/// extremum there. Each cusp is reported by the first index of its run.
pub fn evolute_cusps<S: Scalar>(e: &Evolute<S>, ball: &CenteredBall<S>) -> Cusps {
    if e.is_degenerate() {
        return Cusps::Degenerate;
    }
    let len = e.mus.len() as isize;
    let n = ball.n() as isize;
    let same = |i: isize, j: isize| e.mus.at(i).approx_eq(e.mus.at(j));
    // Some run starts here since the radii are not all equal.
    let origin = (0..len).find(|&i| !same(i - 1, i)).expect("radii vary");
    let mut indices = Vec::new();
    let mut start = origin;
    while start < origin + len {
        let mut end = start;
        while same(end, end + 1) {
            end += 1;
        }
        let cusp = if start == end {
            same_side(&ball.edge(start), e.points.at(start), e.points.at(start - 1), e.points.at(start + 1))
        } else {
            let before = e.mus.at(start).clone() - e.mus.at(start - 1).clone();
            let after = e.mus.at(end).clone() - e.mus.at(end + 1).clone();
            before.is_positive() == after.is_positive()
        };
        let slot = start.rem_euclid(len);
        if cusp && slot < n {
            indices.push(slot as usize);
        }
        start = end + 1;
    }
    indices.sort_unstable();
    Cusps::Indices(indices)
}

/// The involute of a doubled polygon, living in the dual world.
#[derive(Clone, Debug, PartialEq)]
pub struct Involute<S> {
    /// `N_(i+1/2) = X_i + beta_i D_(i+1/2)` in slot `i`.
    pub points: EdgeIndexed<Vec2<S>>,
    pub betas: Vec<S>,
}

/// `N_(i+1/2) = M_i + beta_i V_(i+1/2)`, with `dual` the dual of the ball
/// `m` was solved against.
pub fn involute<S: Scalar>(m: &CentralEquidistant<S>, dual: &CenteredBall<S>) -> Involute<S> {
    let points = (0..m.len() as isize)
        .map(|i| m.point(i) + &dual.vertex(i).scale(m.beta(i)))
        .collect();
    Involute { points, betas: m.betas.clone() }
}

/// The second expression `N_(i+1/2) = M_(i+1) + beta_(i+1) V_(i+1/2)`.
pub fn involute_second_form<S: Scalar>(
    m: &CentralEquidistant<S>,
    dual: &CenteredBall<S>,
) -> Vec<Vec2<S>> {
    (0..m.len() as isize)
        .map(|i| m.point(i + 1) + &dual.vertex(i).scale(m.beta(i + 1)))
        .collect()
}

/// `SA(X) = -A(X, X)`.
pub fn signed_area<S: Scalar>(points: &[Vec2<S>]) -> S {
    -mixed_area(points, points).expect("same list")
}

/// `sum_(i<n) beta_i^2 [D_(i-1/2), D_(i+1/2)]`: the drop in signed area from
/// a doubled polygon to its involute.
pub fn signed_area_gap<S: Scalar>(betas: &[S], dual: &CenteredBall<S>) -> S {
    (0..dual.n() as isize).fold(S::zero(), |acc, i| {
        let b = cyc(betas, i).clone();
        acc + b.clone() * b * det(dual.vertex(i - 1), dual.vertex(i))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness<S> {
    pub segment: usize,
    pub t: S,
    pub point: Vec2<S>,
    pub chords: ChordCount,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Containment<S> {
    pub contained: bool,
    pub tested: usize,
    pub witnesses: Vec<Witness<S>>,
}

/// Samples every segment `N_(i-1/2) N_(i+1/2)` (`0 <= i < n`) at
/// `t = j / samples`, `0 <= j < samples`, and checks that no sample is in the exterior of the
/// central equidistant of `region`.
pub fn containment_check<S: Scalar>(
    n_points: &[Vec2<S>],
    region: &PairedPolygon<S>,
    samples: usize,
) -> Containment<S> {
    let samples = samples.max(1);
    let segments = region.n();
    let census = ChordCensus::new(region.distinct_vertices());
    let mut witnesses = Vec::new();
    let mut tested = 0;
    for i in 0..segments as isize {
        let a = cyc(n_points, i - 1);
        let b = cyc(n_points, i);
        for j in 0..samples {
            let t = S::from_ratio(j as i64, samples as i64);
            let x = a + &(b - a).scale(&t);
            tested += 1;
            let test = census.region_test(&x);
            if test.status == RegionStatus::ExteriorOfM {
                witnesses.push(Witness { segment: i as usize, t, point: x, chords: test.chords });
            }
        }
    }
    Containment { contained: witnesses.is_empty(), tested, witnesses }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{reorder_parallel, unit_ball};
    use crate::cw::{central_equidistant, cusps_of_m, equidistant};
    use crate::geom::ConvexPolygon;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn vq(x: (i64, i64), y: (i64, i64)) -> Vec2<Q> {
        Vec2::new(q(x.0, x.1), q(y.0, y.1))
    }

    struct Setup {
        p: PairedPolygon<Q>,
        u: CenteredBall<Q>,
        v: CenteredBall<Q>,
        m: CentralEquidistant<Q>,
    }

    fn triangle() -> Setup {
        let tri = ConvexPolygon::new(vec![
            Vec2::from_ints(0, 0),
            Vec2::from_ints(1, 0),
            Vec2::from_ints(0, 1),
        ])
        .unwrap();
        let p = reorder_parallel(&tri).unwrap();
        let u = unit_ball(&p, &q(1, 2)).unwrap();
        let v = dual_ball(&u);
        let m = central_equidistant(&p, &u).unwrap();
        Setup { p, u, v, m }
    }

    #[test]
    fn triangle_evolute() {
        let s = triangle();
        let e = evolute(s.p.vertices(), &s.u).unwrap();
        let ones: Vec<_> = (0..6).map(|i| if i % 2 == 0 { q(1, 1) } else { q(0, 1) }).collect();
        assert_eq!(e.mus.as_slice(), &ones[..]);
        assert_eq!(e.points[0], Vec2::from_ints(0, 1));
        assert_eq!(e.points[1], Vec2::from_ints(1, 0));
        assert_eq!(e.points[2], Vec2::from_ints(0, 0));
        for (a, b) in evolute_forms(s.p.vertices(), &s.u, &e) {
            assert_eq!(a, b);
        }
        for i in 0..3 {
            assert_eq!(e.mus[i].clone() + e.mus[i + 3].clone(), q(1, 1));
        }
        assert_eq!(evolute_cusps(&e, &s.u), Cusps::Indices(vec![0, 1, 2]));
        assert_eq!(cusps_of_m(&s.m, &s.p).count(), Some(3));
    }

    #[test]
    fn evolute_is_shared_by_equidistants() {
        let s = triangle();
        let e = evolute(s.p.vertices(), &s.u).unwrap();
        for c in [q(1, 1), q(7, 3), q(0, 1), q(-1, 5)] {
            let pc = equidistant(&s.m, &s.u, &c);
            assert_eq!(evolute(&pc, &s.u).unwrap().points, e.points);
        }
    }

    #[test]
    fn ball_evolute_collapses_to_center() {
        let s = triangle();
        let z = vq((3, 1), (-2, 1));
        let ball: Vec<_> = s.u.vertices().iter().map(|w| &z + w).collect();
        let e = evolute(&ball, &s.u).unwrap();
        assert!(e.points.iter().all(|p| *p == z));
        assert_eq!(evolute_cusps(&e, &s.u), Cusps::Degenerate);
    }

    #[test]
    fn triangle_involute() {
        let s = triangle();
        let inv = involute(&s.m, &s.v);
        let expected = [vq((1, 4), (1, 2)), vq((1, 2), (1, 4)), vq((1, 4), (1, 4))];
        for i in 0..6 {
            assert_eq!(inv.points[i], expected[i % 3]);
        }
        assert_eq!(involute_second_form(&s.m, &s.v), inv.points.0);
        assert_eq!(signed_area(&s.m.points), q(1, 4));
        assert_eq!(signed_area(&inv.points.0), q(1, 16));
        assert_eq!(signed_area_gap(&s.m.betas, &s.v), q(3, 16));
    }

    #[test]
    fn involute_has_constant_v_width_and_evolute_m() {
        let s = triangle();
        let inv = involute(&s.m, &s.v);
        for i in 0..6isize {
            let lhs = inv.points.at(i) - inv.points.at(i - 1);
            let rhs = (s.v.vertex(i) - s.v.vertex(i - 1)).scale(s.m.beta(i));
            assert_eq!(lhs, rhs);
            assert!(inv.points.at(i) == inv.points.at(i + 3));
        }
        // Evolute of N against V is M, shifted by one slot.
        let e = evolute(&inv.points.0, &s.v).unwrap();
        for i in 0..6isize {
            assert_eq!(e.points.at(i), s.m.point(i + 1));
        }
    }

    #[test]
    fn triangle_containment() {
        let s = triangle();
        let inv = involute(&s.m, &s.v);
        let c = containment_check(&inv.points.0, &s.p, 16);
        assert!(c.contained, "{:?}", c.witnesses);
        assert_eq!(c.tested, 3 * 16);
    }

    #[test]
    fn point_involute_is_contained() {
        let p = PairedPolygon::new(vec![
            Vec2::from_ints(0, 0),
            Vec2::from_ints(2, 0),
            Vec2::from_ints(2, 2),
            Vec2::from_ints(0, 2),
        ])
        .unwrap();
        let u = unit_ball(&p, &q(1, 2)).unwrap();
        let v = dual_ball(&u);
        let m = central_equidistant(&p, &u).unwrap();
        let inv = involute(&m, &v);
        assert!(inv.points.iter().all(|x| *x == Vec2::from_ints(1, 1)));
        assert_eq!(signed_area(&inv.points.0), q(0, 1));
        assert_eq!(signed_area_gap(&m.betas, &v), q(0, 1));
        assert!(containment_check(&inv.points.0, &p, 4).contained);
    }
}
