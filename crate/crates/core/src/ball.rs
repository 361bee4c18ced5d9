//! The polygonal norm in which a given convex polygon has constant width.
//!
//! A convex polygon is first rewritten as a `2n`-gon with opposite sides
//! parallel ([`reorder_parallel`]), inserting repeated vertices where a side
//! direction has no opposite partner. Its halved diagonals then span the unit
//! ball `U` ([`unit_ball`]), and `U` determines the dual ball `V`
//! ([`dual_ball`]) under the pairing `f(.) = [., v]`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geom::{
    angle_cmp, cyc, det, is_homothetic, minkowski_sum, parallel, parallel_ratio, same_direction,
    CenteredBall, ConvexPolygon, PairedPolygon, Vec2,
};
use crate::scalar::Scalar;

/// A normed plane with polygonal unit ball `u` and its dual `v`.
///
/// `v` is stored edge-indexed: slot `i` holds `V_(i+1/2)`, the dual vertex
/// attached to the edge `U_i U_(i+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MinkowskiPlane<S> {
    pub u: CenteredBall<S>,
    pub v: CenteredBall<S>,
    pub a: S,
}

impl<S: Scalar> MinkowskiPlane<S> {
    pub fn new(p: &PairedPolygon<S>, a: S) -> Result<Self> {
        let u = unit_ball(p, &a)?;
        let v = dual_ball(&u);
        Ok(MinkowskiPlane { u, v, a })
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    /// The norm of `x`: the smallest `t` with `x` in `t U`.
    pub fn norm(&self, x: &Vec2<S>) -> S {
        max_det(self.v.vertices().iter().map(|w| det(x, w)))
    }

    /// The dual norm `sup { [u, w] : u in U }`.
    pub fn dual_norm(&self, w: &Vec2<S>) -> S {
        dual_norm(&self.u, w)
    }
}

pub fn dual_norm<S: Scalar>(u: &CenteredBall<S>, w: &Vec2<S>) -> S {
    max_det(u.vertices().iter().map(|p| det(p, w)))
}

fn max_det<S: Scalar>(values: impl Iterator<Item = S>) -> S {
    values
        .reduce(|acc, d| if d > acc { d } else { acc })
        .unwrap_or_else(S::zero)
}

/// Rewrites the vertex list of `p` so that side `i` is parallel to side
/// `i + n`, or one of the two is a repeated vertex.
///
/// Side directions modulo 180 degrees are sorted by angle, starting from the
/// smallest angle in `[0, 180)`. Walking the polygon, a vertex is repeated
/// whenever the next target direction has no side of its own.
pub fn reorder_parallel<S: Scalar>(p: &ConvexPolygon<S>) -> Result<PairedPolygon<S>> {
    let verts = p.vertices();
    let k = verts.len();
    if k < 3 {
        return Err(Error::TooFewVertices { needed: 3, found: k });
    }
    let edges: Vec<_> = (0..k).map(|i| &verts[(i + 1) % k] - &verts[i]).collect();

    let mut classes: Vec<Vec2<S>> = Vec::new();
    for e in &edges {
        let c = e.direction_mod_pi();
        if !classes.iter().any(|d| parallel(d, &c)) {
            classes.push(c);
        }
    }
    classes.sort_by(angle_cmp);
    let n = classes.len();
    let targets: Vec<_> = classes
        .iter()
        .cloned()
        .chain(classes.iter().map(|c| -c))
        .collect();

    // First side at or after the first target direction, in polar order.
    let first = &targets[0];
    let start = (0..k)
        .min_by(|&i, &j| {
            let key = |e: &Vec2<S>| angle_cmp(e, first) == Ordering::Less;
            key(&edges[i])
                .cmp(&key(&edges[j]))
                .then_with(|| angle_cmp(&edges[i], &edges[j]))
        })
        .unwrap_or(0);

    let mut out = Vec::with_capacity(2 * n);
    let mut l = start;
    for target in &targets {
        out.push(verts[l % k].clone());
        if same_direction(&edges[l % k], target) {
            l += 1;
        }
    }
    if l != start + k {
        return Err(Error::NotConvex { index: l % k });
    }
    PairedPolygon::new(out)
}

/// The centered ball `U_i = (P_i - P_(i+n)) / (2a)`.
pub fn unit_ball<S: Scalar>(p: &PairedPolygon<S>, a: &S) -> Result<CenteredBall<S>> {
    if !a.is_positive() {
        return Err(Error::NonPositive("a"));
    }
    let scale = S::one() / (a.clone() + a.clone());
    let vertices = (0..p.len() as isize)
        .map(|i| {
            let d = p.diagonal(i);
            if d.is_zero() {
                Err(Error::DegenerateDiagonal { index: i as usize })
            } else {
                Ok(d.scale(&scale))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CenteredBall::new(vertices)
}

/// The dual ball, `V_(i+1/2) = (U_(i+1) - U_i) / [U_i, U_(i+1)]`, edge-indexed.
pub fn dual_ball<S: Scalar>(u: &CenteredBall<S>) -> CenteredBall<S> {
    let vertices = (0..u.len() as isize)
        .map(|i| u.edge(i).scale(&(S::one() / u.edge_det(i))))
        .collect();
    CenteredBall::from_trusted(vertices)
}

/// Inverse of [`dual_ball`] on the same indexing:
/// `U_i = -(V_(i+1/2) - V_(i-1/2)) / [V_(i-1/2), V_(i+1/2)]`.
pub fn recover_primal<S: Scalar>(v: &CenteredBall<S>) -> CenteredBall<S> {
    let vertices = (0..v.len() as isize)
        .map(|i| {
            let prev = v.vertex(i - 1);
            let cur = v.vertex(i);
            (cur - prev).scale(&(-S::one() / det(prev, cur)))
        })
        .collect();
    CenteredBall::from_trusted(vertices)
}

/// Support function `h(P)(f) = max [p, f]` over the vertices.
pub fn support<S: Scalar>(points: &[Vec2<S>], f: &Vec2<S>) -> S {
    max_det(points.iter().map(|p| det(p, f)))
}

/// Width `h(P)(f) + h(P)(-f)`.
pub fn width<S: Scalar>(points: &[Vec2<S>], f: &Vec2<S>) -> S {
    support(points, f) + support(points, &-f)
}

#[derive(Clone, Debug, PartialEq)]
pub enum CwVerdict<S> {
    /// `P_i - P_(i+n) = 2a U_i` for all `i`; the width in every dual
    /// direction is `2a`.
    ConstantWidth(S),
    NotConstantWidth { index: usize, reason: CwFailure },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwFailure {
    LengthMismatch,
    SideNotParallel,
    DiagonalNotParallel,
    RatioMismatch,
}

impl<S> CwVerdict<S> {
    pub fn is_constant_width(&self) -> bool {
        matches!(self, CwVerdict::ConstantWidth(_))
    }
}

/// Whether the vertex list `p` (sides parallel to those of `u`) has constant
/// `u`-width, by the diagonal criterion `P_i - P_(i+n) = 2a U_i`.
pub fn is_constant_width<S: Scalar>(p: &[Vec2<S>], u: &CenteredBall<S>) -> CwVerdict<S> {
    let len = u.len();
    if p.len() != len {
        return CwVerdict::NotConstantWidth { index: 0, reason: CwFailure::LengthMismatch };
    }
    let n = u.n() as isize;
    for i in 0..len as isize {
        let side = cyc(p, i + 1) - cyc(p, i);
        if !side.is_zero() && !same_direction(&side, &u.edge(i)) {
            return CwVerdict::NotConstantWidth {
                index: i as usize,
                reason: CwFailure::SideNotParallel,
            };
        }
    }
    let mut common: Option<S> = None;
    for i in 0..len as isize {
        let diag = cyc(p, i) - cyc(p, i + n);
        let twice_a = match parallel_ratio(&diag, u.vertex(i)) {
            Some(t) if t.is_positive() => t,
            _ => {
                return CwVerdict::NotConstantWidth {
                    index: i as usize,
                    reason: CwFailure::DiagonalNotParallel,
                }
            }
        };
        match &common {
            None => common = Some(twice_a),
            Some(c) if c.approx_eq(&twice_a) => {}
            Some(_) => {
                return CwVerdict::NotConstantWidth {
                    index: i as usize,
                    reason: CwFailure::RatioMismatch,
                }
            }
        }
    }
    CwVerdict::ConstantWidth(common.expect("ball has vertices").half())
}

/// The four equivalent characterizations of constant width, each checked
/// independently.
#[derive(Clone, Debug, PartialEq)]
pub struct Equivalences<S> {
    /// Width is the same in every dual vertex direction.
    pub constant_width: bool,
    /// `P + (-P)` is a positive homothet of `U`.
    pub sum_homothetic: bool,
    /// Every diagonal of `P` is parallel to the matching diagonal of `U`.
    pub diagonals_parallel: bool,
    /// `P_i - P_(i+n) = 2a U_i` with one constant `a`.
    pub diagonal_ratio: Option<S>,
}

impl<S> Equivalences<S> {
    pub fn all_agree(&self) -> bool {
        let r = self.diagonal_ratio.is_some();
        self.constant_width == r && self.sum_homothetic == r && self.diagonals_parallel == r
    }
}

pub fn constant_width_equivalences<S: Scalar>(
    p: &[Vec2<S>],
    u: &CenteredBall<S>,
) -> Equivalences<S> {
    let v = dual_ball(u);
    let widths: Vec<S> = v.vertices().iter().map(|f| width(p, f)).collect();
    let constant_width = widths.windows(2).all(|w| w[0].approx_eq(&w[1]))
        && widths[0].approx_eq(&widths[widths.len() - 1]);

    let distinct = distinct_cyclic(p);
    let sum_homothetic = match ConvexPolygon::new(distinct.iter().map(|q| -q).collect()) {
        Ok(neg) => {
            let sum = minkowski_sum(&distinct, neg.vertices());
            is_homothetic(&sum, u.vertices()).is_some()
        }
        Err(_) => false,
    };

    let n = u.n() as isize;
    let diagonals_parallel = (0..u.len() as isize).all(|i| {
        let diag = cyc(p, i) - cyc(p, i + n);
        !diag.is_zero() && parallel(&diag, u.vertex(i))
    });

    let diagonal_ratio = match is_constant_width(p, u) {
        CwVerdict::ConstantWidth(a) => Some(a),
        CwVerdict::NotConstantWidth { .. } => None,
    };
    Equivalences { constant_width, sum_homothetic, diagonals_parallel, diagonal_ratio }
}

fn distinct_cyclic<S: Scalar>(p: &[Vec2<S>]) -> Vec<Vec2<S>> {
    let mut out: Vec<Vec2<S>> = Vec::with_capacity(p.len());
    for q in p {
        if out.last().map_or(true, |last| !last.approx_eq(q)) {
            out.push(q.clone());
        }
    }
    while out.len() > 1 && out[0].approx_eq(out.last().unwrap()) {
        out.pop();
    }
    out
}
