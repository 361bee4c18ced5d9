//! Constant-width polygons around their central equidistant.
//!
//! Every polygon of constant `U`-width is `P(c)_i = M_i + c U_i` for its
//! central equidistant `M_i = (P_i + P_(i+n)) / 2`, a doubled `n`-gon
//! (`M_(i+n) = M_i`). The edge coefficients `alpha` and the half sums `beta`
//! defined here drive everything downstream: V-lengths, the half-polygon
//! area identity, and the involute.

use std::cmp::Ordering;

use crate::ball::dual_ball;
use crate::error::{Error, Result};
use crate::geom::{cyc, det, parallel_ratio, polygon_area, CenteredBall, EdgeIndexed, PairedPolygon, Vec2};
use crate::scalar::Scalar;

/// A doubled polygon `X_(i+n) = X_i` whose sides are parallel to those of a
/// centered ball `B`: `X_(i+1) - X_i = alpha_i (B_(i+1) - B_i)`.
///
/// With `B = U` this is the central equidistant `M`; the same structure in the
/// dual world (with `B = V`) describes the involute `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralEquidistant<S> {
    pub points: Vec<Vec2<S>>,
    /// `alpha_(i+1/2)` in slot `i`.
    pub alphas: EdgeIndexed<S>,
    /// `beta_i = 1/2 sum_(j=i)^(i+n-1) alpha_(j+1/2) [B_j, B_(j+1)]`.
    pub betas: Vec<S>,
    n: usize,
}

impl<S: Scalar> CentralEquidistant<S> {
    /// Solves the edge coefficients of a doubled polygon against `ball`.
    pub fn new(points: Vec<Vec2<S>>, ball: &CenteredBall<S>) -> Result<Self> {
        if points.len() != ball.len() {
            return Err(Error::LengthMismatch { left: points.len(), right: ball.len() });
        }
        let len = points.len();
        let alphas: EdgeIndexed<S> = (0..len as isize)
            .map(|i| {
                let step = cyc(&points, i + 1) - cyc(&points, i);
                if step.is_zero() {
                    return Ok(S::zero());
                }
                parallel_ratio(&step, &ball.edge(i)).ok_or(Error::NotParallel { index: i as usize })
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .collect();
        Ok(Self::from_alphas(points, alphas, ball))
    }

    /// Builds the structure from known edge coefficients.
    pub fn from_alphas(points: Vec<Vec2<S>>, alphas: EdgeIndexed<S>, ball: &CenteredBall<S>) -> Self {
        let len = points.len();
        let n = ball.n();
        let weighted: Vec<S> = (0..len as isize)
            .map(|j| alphas.at(j).clone() * ball.edge_det(j))
            .collect();
        let first = weighted[..n.min(len)]
            .iter()
            .fold(S::zero(), |acc, w| acc + w.clone())
            .half();
        let mut betas = Vec::with_capacity(len);
        betas.push(first);
        for w in &weighted[..len.saturating_sub(1)] {
            let next = betas.last().expect("nonempty").clone() - w.clone();
            betas.push(next);
        }
        CentralEquidistant { points, alphas, betas, n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: isize) -> &Vec2<S> {
        cyc(&self.points, i)
    }

    pub fn beta(&self, i: isize) -> &S {
        cyc(&self.betas, i)
    }

    /// All points coincide: the polygon is a ball and the theory collapses
    /// to its center.
    pub fn is_degenerate(&self) -> bool {
        self.points.iter().all(|p| p.approx_eq(&self.points[0]))
    }

    /// The smallest `c` for which the equidistant `X + cB` is convex.
    pub fn min_convex_c(&self) -> S {
        self.alphas
            .iter()
            .map(|a| -a.clone())
            .fold(S::zero(), |acc, v| if v > acc { v } else { acc })
    }

    /// `beta_(i+1) - beta_i = -alpha_(i+1/2) [B_i, B_(i+1)]`.
    pub fn ladder_holds(&self, ball: &CenteredBall<S>) -> bool {
        (0..self.len() as isize).all(|i| {
            let lhs = self.beta(i + 1).clone() - self.beta(i).clone();
            let rhs = -(self.alphas.at(i).clone() * ball.edge_det(i));
            lhs.approx_eq(&rhs)
        })
    }
}

/// The central equidistant of a constant-width polygon with ball `u`.
pub fn central_equidistant<S: Scalar>(
    p: &PairedPolygon<S>,
    u: &CenteredBall<S>,
) -> Result<CentralEquidistant<S>> {
    let n = p.n() as isize;
    let points = (0..p.len() as isize)
        .map(|i| p.vertex(i).midpoint(p.vertex(i + n)))
        .collect();
    CentralEquidistant::new(points, u)
}

/// The equidistant `X_i + c B_i`.
pub fn equidistant<S: Scalar>(m: &CentralEquidistant<S>, ball: &CenteredBall<S>, c: &S) -> Vec<Vec2<S>> {
    m.points
        .iter()
        .zip(ball.vertices())
        .map(|(p, b)| p + &b.scale(c))
        .collect()
}

/// Signed V-length of an open arc whose edge `j` runs parallel to the dual
/// vertex in slot `edge_offset + j`.
pub fn v_length<S: Scalar>(arc: &[Vec2<S>], v: &CenteredBall<S>, edge_offset: usize) -> Result<S> {
    edge_lambdas(arc, v, edge_offset).map(|ls| ls.into_iter().fold(S::zero(), |acc, l| acc + l))
}

/// `lambda_j` with `arc_(j+1) - arc_j = lambda_j V_(offset + j)`.
pub fn edge_lambdas<S: Scalar>(
    arc: &[Vec2<S>],
    v: &CenteredBall<S>,
    edge_offset: usize,
) -> Result<Vec<S>> {
    arc.windows(2)
        .enumerate()
        .map(|(j, w)| {
            let step = &w[1] - &w[0];
            if step.is_zero() {
                return Ok(S::zero());
            }
            let slot = (edge_offset + j) as isize;
            parallel_ratio(&step, v.vertex(slot)).ok_or(Error::NotParallel { index: slot as usize })
        })
        .collect()
}

/// The closed vertex list with its first vertex repeated at the end.
pub fn closed<S: Scalar>(points: &[Vec2<S>]) -> Vec<Vec2<S>> {
    let mut out = points.to_vec();
    if let Some(first) = points.first() {
        out.push(first.clone());
    }
    out
}

/// Both sides of the perimeter law `L_V(P(c)) = 2c A(U)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Barbier<S> {
    pub expected: S,
    pub actual: S,
}

impl<S: Scalar> Barbier<S> {
    pub fn holds(&self) -> bool {
        self.expected.approx_eq(&self.actual)
    }
}

pub fn barbier<S: Scalar>(m: &CentralEquidistant<S>, u: &CenteredBall<S>, c: &S) -> Result<Barbier<S>> {
    let v = dual_ball(u);
    let expected = (c.clone() + c.clone()) * u.area();
    let actual = v_length(&closed(&equidistant(m, u, c)), &v, 0)?;
    Ok(Barbier { expected, actual })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cusps {
    /// The curve is a single point.
    Degenerate,
    Indices(Vec<usize>),
}

impl Cusps {
    pub fn count(&self) -> Option<usize> {
        match self {
            Cusps::Degenerate => None,
            Cusps::Indices(v) => Some(v.len()),
        }
    }
}

/// Vertices `M_i` (`0 <= i < n`) whose neighbours lie strictly on the same
/// side of the diagonal line through `P_i` and `P_(i+n)`.
///
/// Sides of `P` with a parallel partner make consecutive vertices of `M`
/// coincide. Such a run counts as one vertex with its distinct neighbours:
/// since `M_(i+1) - M_i = alpha_(i+1/2) (U_(i+1) - U_i)`, it is a cusp when
/// the coefficients on either side of it have opposite signs. Each cusp is
/// reported by the first index of its run.
pub fn cusps_of_m<S: Scalar>(m: &CentralEquidistant<S>, p: &PairedPolygon<S>) -> Cusps {
    if m.is_degenerate() {
        return Cusps::Degenerate;
    }
    let n = m.n() as isize;
    let same = |i: isize, j: isize| m.point(i).approx_eq(m.point(j));
    let origin = (0..n).find(|&i| !same(i - 1, i)).expect("not degenerate");
    let mut indices = Vec::new();
    let mut start = origin;
    while start < origin + n {
        let mut end = start;
        while same(end, end + 1) {
            end += 1;
        }
        let cusp = if start == end {
            same_side(&p.diagonal(start), m.point(start), m.point(start - 1), m.point(start + 1))
        } else {
            let before = m.alphas.at(start - 1);
            let after = m.alphas.at(end);
            before.is_positive() != after.is_positive()
        };
        if cusp {
            indices.push(start.rem_euclid(n) as usize);
        }
        start = end + 1;
    }
    indices.sort_unstable();
    Cusps::Indices(indices)
}

/// Whether `a` and `b` lie strictly on the same side of the line through
/// `origin` with direction `dir`.
pub(crate) fn same_side<S: Scalar>(dir: &Vec2<S>, origin: &Vec2<S>, a: &Vec2<S>, b: &Vec2<S>) -> bool {
    let side = |q: &Vec2<S>| {
        let r = q - origin;
        det(dir, &r).sign_rel(&(dir.l1() * r.l1()))
    };
    let (sa, sb) = (side(a), side(b));
    sa != Ordering::Equal && sa == sb
}

/// Areas of the two pieces the diagonal `P_i P_(i+n)` cuts from `P(c)`, and
/// the predicted difference `4 c beta_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfArea<S> {
    pub a1: S,
    pub a2: S,
    pub four_c_beta: S,
}

impl<S: Scalar> HalfArea<S> {
    pub fn holds(&self) -> bool {
        (self.a1.clone() - self.a2.clone()).approx_eq(&self.four_c_beta)
    }
}

fn arc<S: Scalar>(points: &[Vec2<S>], from: usize, count: usize) -> Vec<Vec2<S>> {
    (0..count).map(|j| points[(from + j) % points.len()].clone()).collect()
}

fn check_convex_c<S: Scalar>(m: &CentralEquidistant<S>, c: &S) -> Result<()> {
    let min = m.min_convex_c();
    if c < &min && !c.approx_eq(&min) {
        return Err(Error::NotConvex { index: 0 });
    }
    Ok(())
}

/// `A_1(i, c)`, `A_2(i, c)` for the convex equidistant `P(c)`: the regions
/// `P_i .. P_(i+n)` and `P_(i+n) .. P_i`, each closed by the diagonal.
pub fn half_area_identity<S: Scalar>(
    m: &CentralEquidistant<S>,
    u: &CenteredBall<S>,
    i: usize,
    c: &S,
) -> Result<HalfArea<S>> {
    check_convex_c(m, c)?;
    let pc = equidistant(m, u, c);
    let n = m.n();
    let a1 = polygon_area(&arc(&pc, i, n + 1)).abs();
    let a2 = polygon_area(&arc(&pc, i + n, n + 1)).abs();
    let four = S::from_i64(4);
    let four_c_beta = four * c.clone() * m.beta(i as isize).clone();
    Ok(HalfArea { a1, a2, four_c_beta })
}

/// V-length of the half arc `P_i(c) .. P_(i+n)(c)`.
pub fn half_v_length<S: Scalar>(
    m: &CentralEquidistant<S>,
    u: &CenteredBall<S>,
    v: &CenteredBall<S>,
    i: usize,
    c: &S,
) -> Result<S> {
    let pc = equidistant(m, u, c);
    v_length(&arc(&pc, i, m.n() + 1), v, i)
}

/// Closed form of the half-arc V-length, `c A(U) + 2 beta_i`.
pub fn half_v_length_closed_form<S: Scalar>(
    m: &CentralEquidistant<S>,
    u: &CenteredBall<S>,
    i: usize,
    c: &S,
) -> S {
    c.clone() * u.area() + m.beta(i as isize).clone() * S::from_i64(2)
}

/// The half-polygon invariant `A_1(i, c) - c L_V(i, c)` at every `i`, with
/// both sides of its closed form `2c L_V(i, c) - 2 A_1(i, c) = 2c^2 A(U) - A(P(c))`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfPolygonInvariant<S> {
    pub values: Vec<S>,
    pub closed_form_lhs: Vec<S>,
    pub closed_form_rhs: S,
}

impl<S: Scalar> HalfPolygonInvariant<S> {
    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0].approx_eq(&w[1]))
    }

    pub fn closed_form_holds(&self) -> bool {
        self.closed_form_lhs.iter().all(|l| l.approx_eq(&self.closed_form_rhs))
    }
}

pub fn half_polygon_invariant<S: Scalar>(
    m: &CentralEquidistant<S>,
    u: &CenteredBall<S>,
    c: &S,
) -> Result<HalfPolygonInvariant<S>> {
    check_convex_c(m, c)?;
    let v = dual_ball(u);
    let two = S::from_i64(2);
    let mut values = Vec::with_capacity(m.len());
    let mut closed_form_lhs = Vec::with_capacity(m.len());
    for i in 0..m.len() {
        let a1 = half_area_identity(m, u, i, c)?.a1;
        let l = half_v_length(m, u, &v, i, c)?;
        values.push(a1.clone() - c.clone() * l.clone());
        closed_form_lhs.push(two.clone() * c.clone() * l - two.clone() * a1);
    }
    let area_p = polygon_area(&equidistant(m, u, c));
    let closed_form_rhs = two * c.clone() * c.clone() * u.area() - area_p;
    Ok(HalfPolygonInvariant { values, closed_form_lhs, closed_form_rhs })
}

/// Both sides of `L_V(P)^2 >= 4 A(U) A(P)` for the equidistant at `c`.
pub fn isoperimetric<S: Scalar>(m: &CentralEquidistant<S>, u: &CenteredBall<S>, c: &S) -> Result<(S, S)> {
    let v = dual_ball(u);
    let pc = equidistant(m, u, c);
    let l = v_length(&closed(&pc), &v, 0)?;
    let rhs = S::from_i64(4) * u.area() * polygon_area(&pc);
    Ok((l.clone() * l, rhs))
}
