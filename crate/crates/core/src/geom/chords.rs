//! Chord-midpoint census.
//!
//! A point `x` strictly inside a convex polygon `P` is the midpoint of the
//! chord `[p, 2x - p]` exactly when `p` lies on both `boundary(P)` and its
//! point reflection through `x`. Seen from `x`, both boundaries are radial
//! graphs `r(theta)` and `r(theta + pi)`; their contact set splits into
//! components (crossings, touching points or shared segments) that pair up
//! under the reflection, so the number of chords is half the number of
//! components. The exterior of the central equidistant is where that count
//! is exactly one.
//!
//! Between two consecutive vertex directions of `P` or of its reflection,
//! both boundaries are single straight segments and can meet at most once.
//! The contact components can therefore be read off the sign of
//! `r(theta) - r(theta + pi)` at the vertex directions alone.

use std::cmp::Ordering;

use crate::scalar::Scalar;

use super::{det, PairedPolygon, Vec2};

/// How many chords of the polygon have the query point as midpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChordCount {
    /// The point is on the boundary or outside the polygon.
    Outside,
    Finite(usize),
    /// Every chord through the point is bisected: the polygon is centrally
    /// symmetric about it.
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionStatus {
    ExteriorOfM,
    RegionOfM,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionTest {
    pub chords: ChordCount,
    pub status: RegionStatus,
}

impl RegionTest {
    fn new(chords: ChordCount) -> Self {
        let status = match chords {
            ChordCount::Outside | ChordCount::Finite(1) => RegionStatus::ExteriorOfM,
            _ => RegionStatus::RegionOfM,
        };
        RegionTest { chords, status }
    }
}

/// Classifies `x` against the region bounded by the central equidistant of
/// `p`: exterior iff `x` is the midpoint of exactly one chord.
pub fn point_region_test<S: Scalar>(x: &Vec2<S>, p: &PairedPolygon<S>) -> RegionTest {
    ChordCensus::new(p.distinct_vertices()).region_test(x)
}

/// Chord-midpoint count of `x` for a strictly convex counterclockwise
/// polygon given by its distinct vertices.
pub fn chord_count<S: Scalar>(x: &Vec2<S>, poly: &[Vec2<S>]) -> ChordCount {
    ChordCensus::new(poly.to_vec()).count(x)
}

/// Error bound factor of the floating point filter. Rounding of the inputs
/// and of the determinant stays below `1e-14` of the bound's scale.
const FILTER: f64 = 1e-11;

/// A convex polygon prepared for repeated chord counts.
#[derive(Clone, Debug)]
pub struct ChordCensus<S> {
    vertices: Vec<Vec2<S>>,
    approx: Vec<(f64, f64)>,
    magnitude: f64,
}

/// A vertex direction `v_j - x` (or its negation) seen from the query
/// point, with the sign of `r(theta) - r(theta + pi)` there.
#[derive(Clone, Copy)]
struct Event {
    vertex: usize,
    negated: bool,
    approx: (f64, f64),
    sign: Ordering,
}

fn sub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}

fn l1(a: (f64, f64)) -> f64 {
    a.0.abs() + a.1.abs()
}

impl<S: Scalar> ChordCensus<S> {
    pub fn new(vertices: Vec<Vec2<S>>) -> Self {
        let approx: Vec<_> = vertices.iter().map(Vec2::to_f64).collect();
        let magnitude = approx.iter().fold(0.0_f64, |m, p| m.max(p.0.abs()).max(p.1.abs()));
        ChordCensus { vertices, approx, magnitude }
    }

    pub fn region_test(&self, x: &Vec2<S>) -> RegionTest {
        RegionTest::new(self.count(x))
    }

    /// Sign of `[u, v]`, decided in floating point when the result is clear
    /// and exactly otherwise. `m` bounds the coordinates `u` and `v` were
    /// computed from.
    fn det_sign(
        &self,
        uf: (f64, f64),
        vf: (f64, f64),
        m: f64,
        exact: impl FnOnce() -> (Vec2<S>, Vec2<S>),
    ) -> Ordering {
        if S::is_exact() {
            let d = uf.0 * vf.1 - uf.1 * vf.0;
            let bound = FILTER * m * (l1(uf) + l1(vf));
            if d > bound {
                return Ordering::Greater;
            }
            if d < -bound {
                return Ordering::Less;
            }
        }
        let (u, v) = exact();
        det(&u, &v).sign_rel(&(u.l1() * v.l1()))
    }

    /// `Less` strictly inside, `Equal` on the boundary, `Greater` outside.
    fn locate(&self, q: impl Fn() -> Vec2<S>, qf: (f64, f64), m: f64) -> Ordering {
        let k = self.vertices.len();
        let mut on_boundary = false;
        for i in 0..k {
            let j = (i + 1) % k;
            let (a, b) = (&self.vertices[i], &self.vertices[j]);
            let sign = self.det_sign(sub(self.approx[j], self.approx[i]), sub(qf, self.approx[i]), m, || {
                (b - a, &q() - a)
            });
            match sign {
                Ordering::Less => return Ordering::Greater,
                Ordering::Equal => on_boundary = true,
                Ordering::Greater => {}
            }
        }
        if on_boundary {
            Ordering::Equal
        } else {
            Ordering::Less
        }
    }

    pub fn count(&self, x: &Vec2<S>) -> ChordCount {
        let k = self.vertices.len();
        if k < 3 {
            return ChordCount::Outside;
        }
        let xf = x.to_f64();
        let m = self.magnitude.max(xf.0.abs()).max(xf.1.abs()) * 3.0;
        if self.locate(|| x.clone(), xf, m) != Ordering::Less {
            return ChordCount::Outside;
        }

        // Directions d_j = v_j - x with the sign of r(theta) - r(theta + pi):
        // negative when the reflection 2x - v_j falls inside the polygon.
        let mut events: Vec<Event> = Vec::with_capacity(2 * k);
        for j in 0..k {
            let df = sub(self.approx[j], xf);
            let wf = sub(xf, df);
            let sign = self.locate(|| x + &(x - &self.vertices[j]), wf, m);
            events.push(Event { vertex: j, negated: true, approx: (-df.0, -df.1), sign: sign.reverse() });
            events.push(Event { vertex: j, negated: false, approx: df, sign });
        }
        events.sort_by(|a, b| self.angle_cmp(x, a, b, m));
        events.dedup_by(|a, b| self.angle_cmp(x, a, b, m) == Ordering::Equal);

        let signs: Vec<Ordering> = events.iter().map(|e| e.sign).collect();
        let Some(start) = signs.iter().position(|s| *s != Ordering::Equal) else {
            return ChordCount::Symmetric;
        };
        let len = signs.len();
        let mut components = 0;
        let mut previous = signs[start];
        let mut in_zero_run = false;
        for step in 1..=len {
            let s = signs[(start + step) % len];
            if s == Ordering::Equal {
                if !in_zero_run {
                    components += 1;
                    in_zero_run = true;
                }
                continue;
            }
            if !in_zero_run && s != previous {
                components += 1;
            }
            in_zero_run = false;
            previous = s;
        }
        ChordCount::Finite(components / 2)
    }

    fn direction(&self, x: &Vec2<S>, e: &Event) -> Vec2<S> {
        let d = &self.vertices[e.vertex] - x;
        if e.negated {
            -d
        } else {
            d
        }
    }

    /// Whether the direction lies in the half turn `[0, pi)`.
    fn upper(&self, x: &Vec2<S>, e: &Event, m: f64) -> bool {
        let slack = FILTER * m;
        if e.approx.1.abs() > slack {
            return e.approx.1 > 0.0;
        }
        let d = self.direction(x, e);
        d.y.is_positive() || (d.y.is_zero() && d.x.is_positive())
    }

    fn angle_cmp(&self, x: &Vec2<S>, a: &Event, b: &Event, m: f64) -> Ordering {
        match (self.upper(x, a, m), self.upper(x, b, m)) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self
                .det_sign(a.approx, b.approx, m, || (self.direction(x, a), self.direction(x, b)))
                .reverse(),
        }
    }
}
