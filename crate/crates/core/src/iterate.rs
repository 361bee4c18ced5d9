//! Iterated involutes and the central point.
//!
//! Starting from the evolute `N(0) = E` and the central equidistant `M(0)`,
//! the sequence alternates between the two worlds: `N(k+1)` is the involute
//! of `M(k)` and has constant `V`-width, `M(k+1)` is the involute of `N(k+1)`
//! and has constant `U`-width. The closed regions are nested, the signed
//! areas drop by explicit sums of squares and the polygons shrink to a single
//! point `O`, the central point of `P`.

use crate::ball::{dual_ball, MinkowskiPlane};
use crate::cw::{central_equidistant, equidistant, CentralEquidistant};
use crate::error::{Error, Result};
use crate::evolute::{evolute, signed_area_gap};
use crate::geom::{centroid, diameter_sq, polygon_area, CenteredBall, PairedPolygon, Vec2};
use crate::scalar::Scalar;

/// One round of the iteration.
#[derive(Clone, Debug, PartialEq)]
pub struct Step<S> {
    pub k: usize,
    /// `M(k)`, against the ball `U`.
    pub m: CentralEquidistant<S>,
    /// `N(k)`, against the ball `V` (slot `i` holds `N_(i+1/2)`).
    pub n: CentralEquidistant<S>,
    pub sa_m: S,
    pub sa_n: S,
    /// `sum alpha(k)^2 [U_i, U_(i+1)]` over one half.
    pub alpha_gap: S,
    /// `sum beta(k)^2 [V_(i-1/2), V_(i+1/2)]` over one half.
    pub beta_gap: S,
    pub diameter_sq_m: S,
    pub diameter_sq_n: S,
}

impl<S: Scalar> Step<S> {
    pub fn diameter(&self) -> f64 {
        self.diameter_sq_m.to_f64().max(0.0).sqrt()
    }

    /// `SA(N(k)) - SA(M(k))` equals the alpha sum.
    pub fn alpha_gap_holds(&self) -> bool {
        (self.sa_n.clone() - self.sa_m.clone()).approx_eq(&self.alpha_gap)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationTrace<S> {
    pub plane: MinkowskiPlane<S>,
    pub steps: Vec<Step<S>>,
    pub center: Vec2<S>,
    /// Diameter of the last `M(k)`, an error bound for `center`.
    pub radius: f64,
    pub converged: bool,
}

impl<S: Scalar> IterationTrace<S> {
    pub fn step(&self, k: usize) -> Result<&Step<S>> {
        self.steps.get(k).ok_or(Error::OutOfRange { index: k, len: self.steps.len() })
    }

    /// `SA(M(k)) - SA(N(k+1))` equals the beta sum of step `k`.
    pub fn beta_gaps_hold(&self) -> bool {
        self.steps.windows(2).all(|w| {
            (w[0].sa_m.clone() - w[1].sa_n.clone()).approx_eq(&w[0].beta_gap)
        })
    }

    /// The chain `SA(N(0)) >= SA(M(0)) >= SA(N(1)) >= SA(M(1)) >= ... >= 0`.
    pub fn signed_areas_monotone(&self) -> bool {
        let chain: Vec<&S> = self.steps.iter().flat_map(|s| [&s.sa_n, &s.sa_m]).collect();
        chain.windows(2).all(|w| w[1].le_approx(w[0]))
            && chain.iter().all(|v| S::zero().le_approx(v))
    }

    pub fn diameters_monotone(&self) -> bool {
        self.steps
            .windows(2)
            .all(|w| w[1].diameter_sq_m.le_approx(&w[0].diameter_sq_m))
    }

    /// Running totals of the sum-of-squares bound: after step `k` the
    /// accumulated beta sums of steps `0..=k` plus the alpha sums of steps
    /// `1..=k+1` never exceed `SA(M(0))`. Returns `(accumulated, slack)` per
    /// prefix, where the slack is `SA(M(0))` minus the total.
    pub fn sum_of_squares(&self) -> Vec<(S, S)> {
        let Some(first) = self.steps.first() else {
            return Vec::new();
        };
        let mut total = S::zero();
        let mut out = Vec::new();
        for w in self.steps.windows(2) {
            total = total + w[0].beta_gap.clone() + w[1].alpha_gap.clone();
            out.push((total.clone(), first.sa_m.clone() - total.clone()));
        }
        out
    }

    pub fn bound_holds(&self) -> bool {
        self.sum_of_squares().iter().all(|(_, slack)| S::zero().le_approx(slack))
    }
}

/// Repeats the first half of a doubled list, negated if asked.
fn doubled<T: Clone>(half: Vec<T>, negate: impl Fn(&T) -> T) -> Vec<T> {
    let mut out = half.clone();
    out.extend(half.iter().map(negate));
    out
}

/// The involute of `m` in the dual world: `N_(i+1/2) = M_i + beta_i V_(i+1/2)`,
/// with coefficients `beta_(i+1)` against `v`.
fn involute_into_dual<S: Scalar>(m: &CentralEquidistant<S>, v: &CenteredBall<S>) -> CentralEquidistant<S> {
    let n = m.n() as isize;
    let points = (0..n).map(|i| m.point(i) + &v.vertex(i).scale(m.beta(i))).collect();
    let alphas = (0..n).map(|i| m.beta(i + 1).clone()).collect();
    CentralEquidistant::from_alphas(doubled(points, Clone::clone), doubled(alphas, |a: &S| -a.clone()).into_iter().collect(), v)
}

/// The involute of `n` back in the primal world. The dual of `V` is `U`
/// up to sign and a shift of one slot, so `M_i = N_(i-1/2) - beta'_(i-1) U_i`.
fn involute_into_primal<S: Scalar>(n: &CentralEquidistant<S>, u: &CenteredBall<S>) -> CentralEquidistant<S> {
    let half = n.n() as isize;
    let points = (0..half).map(|i| n.point(i - 1) - &u.vertex(i).scale(n.beta(i - 1))).collect();
    let alphas = (0..half).map(|i| -n.beta(i).clone()).collect();
    CentralEquidistant::from_alphas(doubled(points, Clone::clone), doubled(alphas, |a: &S| -a.clone()).into_iter().collect(), u)
}

/// `SA` of a doubled polygon: its list runs twice around the `n`-gon.
fn doubled_signed_area<S: Scalar>(x: &CentralEquidistant<S>) -> S {
    let area = polygon_area(&x.points[..x.n()]);
    -(area.clone() + area)
}

/// `sum_(i<n) alpha_i^2 [B_i, B_(i+1)]`.
fn alpha_gap<S: Scalar>(x: &CentralEquidistant<S>, ball: &CenteredBall<S>) -> S {
    (0..x.n() as isize).fold(S::zero(), |acc, i| {
        let a = x.alphas.at(i).clone();
        acc + a.clone() * a * ball.edge_det(i)
    })
}

fn make_step<S: Scalar>(
    k: usize,
    m: CentralEquidistant<S>,
    n: CentralEquidistant<S>,
    plane: &MinkowskiPlane<S>,
) -> Step<S> {
    Step {
        k,
        sa_m: doubled_signed_area(&m),
        sa_n: doubled_signed_area(&n),
        alpha_gap: alpha_gap(&m, &plane.u),
        beta_gap: signed_area_gap(&m.betas, &plane.v),
        diameter_sq_m: diameter_sq(&m.points[..m.n()]),
        diameter_sq_n: diameter_sq(&n.points[..n.n()]),
        m,
        n,
    }
}

/// Runs the iteration until the diameter of `M(k)` drops below `tol` or
/// `max_steps` involute rounds have been taken.
pub fn iterate_involutes<S: Scalar>(
    p: &PairedPolygon<S>,
    a: &S,
    max_steps: usize,
    tol: &S,
) -> Result<IterationTrace<S>> {
    if !tol.is_positive() {
        return Err(Error::NonPositive("tol"));
    }
    let plane = MinkowskiPlane::new(p, a.clone())?;
    let m0 = central_equidistant(p, &plane.u)?;
    let e = evolute(p.vertices(), &plane.u)?;
    let n0 = CentralEquidistant::new(e.points.0, &plane.v)?;
    let tol_sq = tol.clone() * tol.clone();

    let mut steps = vec![make_step(0, m0, n0, &plane)];
    let mut converged = steps[0].diameter_sq_m < tol_sq;
    while !converged && steps.len() <= max_steps {
        let last = steps.last().expect("nonempty");
        let n = involute_into_dual(&last.m, &plane.v);
        let m = involute_into_primal(&n, &plane.u);
        let k = steps.len();
        steps.push(make_step(k, m, n, &plane));
        converged = steps[k].diameter_sq_m < tol_sq;
    }
    let last = steps.last().expect("nonempty");
    let center = centroid(&last.m.points[..last.m.n()]);
    let radius = last.diameter();
    Ok(IterationTrace { plane, steps, center, radius, converged })
}

/// The constant-width polygons around step `k`: `P(k, c)_i = M(k)_i + c U_i`
/// of `U`-width `2c` and `Q(k, d) = N(k) + d V` of `V`-width `2d`.
pub fn width_family<S: Scalar>(
    trace: &IterationTrace<S>,
    k: usize,
    c: &S,
    d: &S,
) -> Result<(PairedPolygon<S>, PairedPolygon<S>)> {
    let step = trace.step(k)?;
    let p = PairedPolygon::new(equidistant(&step.m, &trace.plane.u, c))?;
    let q = PairedPolygon::new(equidistant(&step.n, &trace.plane.v, d))?;
    Ok((p, q))
}

/// Largest Euclidean vertex distance between `poly` and `center + c ball`.
pub fn deviation<S: Scalar>(poly: &[Vec2<S>], center: &Vec2<S>, ball: &CenteredBall<S>, c: &S) -> f64 {
    poly.iter()
        .zip(ball.vertices())
        .map(|(p, b)| {
            let target = center + &b.scale(c);
            (p - &target).norm_sq().to_f64().max(0.0).sqrt()
        })
        .fold(0.0, f64::max)
}

/// A strictly convex polygon of constant width around `x`, whose central
/// equidistant is `x` itself: `x + c B` with `c = 2 max |alpha|` (or `1`).
pub fn region_polygon<S: Scalar>(x: &CentralEquidistant<S>, ball: &CenteredBall<S>) -> Result<PairedPolygon<S>> {
    let max = x
        .alphas
        .iter()
        .map(|a| a.abs())
        .fold(S::zero(), |acc, v| if v > acc { v } else { acc });
    let c = if max.is_zero() { S::one() } else { max.clone() + max };
    PairedPolygon::new(equidistant(x, ball, &c))
}

/// The involute of `n` in the dual world computed literally, by taking the
/// dual ball of `V` and undoing its one-slot shift. Used to cross-check the
/// shortcut taken by the iteration.
pub fn involute_via_dual<S: Scalar>(n: &CentralEquidistant<S>, v: &CenteredBall<S>) -> Vec<Vec2<S>> {
    let d = dual_ball(v);
    let len = n.len() as isize;
    (0..len)
        .map(|i| n.point(i - 1) + &d.vertex(i - 1).scale(n.beta(i - 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::reorder_parallel;
    use crate::evolute::{involute, signed_area};
    use crate::geom::ConvexPolygon;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn paired(points: &[(i64, i64)]) -> PairedPolygon<Q> {
        let poly = ConvexPolygon::new(points.iter().map(|&(x, y)| Vec2::from_ints(x, y)).collect()).unwrap();
        reorder_parallel(&poly).unwrap()
    }

    #[test]
    fn symmetric_polygon_converges_at_once() {
        let p = paired(&[(1, 1), (3, 1), (3, 3), (1, 3)]);
        let t = iterate_involutes(&p, &q(1, 2), 8, &q(1, 1000)).unwrap();
        assert!(t.converged);
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.center, Vec2::from_ints(2, 2));
        let (pc, _) = width_family(&t, 0, &q(1, 1), &q(1, 1)).unwrap();
        let expected: Vec<_> = t.plane.u.vertices().iter().map(|u| &t.center + u).collect();
        assert_eq!(pc.vertices(), &expected[..]);
    }

    #[test]
    fn triangle_first_round() {
        let p = paired(&[(0, 0), (1, 0), (0, 1)]);
        let t = iterate_involutes(&p, &q(1, 2), 2, &q(1, 1_000_000)).unwrap();
        let s0 = &t.steps[0];
        assert_eq!(s0.sa_m, q(1, 4));
        let s1 = &t.steps[1];
        assert_eq!(s1.sa_n, q(1, 16));
        assert_eq!(s0.beta_gap, q(3, 16));
        // N(1) is the involute of M(0).
        let inv = involute(&s0.m, &t.plane.v);
        assert_eq!(s1.n.points, inv.points.0);
        assert!(t.beta_gaps_hold());
        assert!(t.steps.iter().all(|s| s.alpha_gap_holds()));
        let (p0, _) = width_family(&t, 0, &q(1, 2), &q(1, 1)).unwrap();
        assert_eq!(p0, p);
    }

    #[test]
    fn involute_of_evolute_is_central_equidistant() {
        let p = paired(&[(0, 0), (5, 1), (6, 4), (1, 3)]);
        let t = iterate_involutes(&p, &q(1, 2), 0, &q(1, 1000)).unwrap();
        let s0 = &t.steps[0];
        assert_eq!(involute_into_primal(&s0.n, &t.plane.u), s0.m);
    }

    #[test]
    fn shortcut_matches_literal_involute() {
        let p = paired(&[(0, 0), (4, 0), (5, 2), (2, 5), (-1, 2)]);
        let t = iterate_involutes(&p, &q(1, 2), 3, &q(1, 1_000_000)).unwrap();
        for w in t.steps.windows(2) {
            let n = &w[1].n;
            assert_eq!(involute_via_dual(n, &t.plane.v), w[1].m.points);
            assert_eq!(CentralEquidistant::new(n.points.clone(), &t.plane.v).unwrap(), *n);
            assert_eq!(CentralEquidistant::new(w[1].m.points.clone(), &t.plane.u).unwrap(), w[1].m);
        }
    }

    #[test]
    fn ledger_is_consistent() {
        let p = paired(&[(0, 0), (4, 0), (5, 2), (2, 5), (-1, 2)]);
        let t = iterate_involutes(&p, &q(1, 2), 6, &q(1, 1_000_000)).unwrap();
        assert!(t.signed_areas_monotone());
        assert!(t.beta_gaps_hold());
        assert!(t.steps.iter().all(|s| s.alpha_gap_holds()));
        assert!(t.bound_holds());
        for ((_, slack), step) in t.sum_of_squares().iter().zip(&t.steps[1..]) {
            assert_eq!(slack, &step.sa_m);
        }
        assert!(t.diameters_monotone());
        for s in &t.steps {
            assert_eq!(s.sa_m, signed_area(&s.m.points));
            assert_eq!(s.sa_n, signed_area(&s.n.points));
        }
    }

    #[test]
    fn width_family_rejects_out_of_range() {
        let p = paired(&[(0, 0), (1, 0), (0, 1)]);
        let t = iterate_involutes(&p, &q(1, 2), 1, &q(1, 1000)).unwrap();
        assert!(matches!(width_family(&t, 9, &q(1, 1), &q(1, 1)), Err(Error::OutOfRange { index: 9, .. })));
    }
}
