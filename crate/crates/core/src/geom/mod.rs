//! Planar primitives: vectors, determinants, areas, direction ordering,
//! polygon types, Minkowski sums, mixed areas and chord-midpoint counting.

mod chords;
mod minkowski;
mod polygon;

use std::cmp::Ordering;
use std::ops::{Add, Index, Neg, Sub};

use crate::scalar::Scalar;

pub use chords::{chord_count, point_region_test, ChordCensus, ChordCount, RegionStatus, RegionTest};
pub use minkowski::{is_homothetic, minkowski_sum, mixed_area, mixed_area_alt, Homothety};
pub use polygon::{CenteredBall, Cleanup, ConvexPolygon, PairedPolygon};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vec2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Vec2<S> {
    pub fn new(x: S, y: S) -> Self {
        Vec2 { x, y }
    }

    pub fn zero() -> Self {
        Vec2::new(S::zero(), S::zero())
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vec2::new(S::from_i64(x), S::from_i64(y))
    }

    pub fn det(&self, other: &Self) -> S {
        det(self, other)
    }

    pub fn dot(&self, other: &Self) -> S {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    pub fn scale(&self, s: &S) -> Self {
        Vec2::new(self.x.clone() * s.clone(), self.y.clone() * s.clone())
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    /// L1 magnitude, used as a cheap tolerance scale.
    pub fn l1(&self) -> S {
        self.x.abs() + self.y.abs()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.x.approx_eq(&other.x) && self.y.approx_eq(&other.y)
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        Vec2::new(
            (self.x.clone() + other.x.clone()).half(),
            (self.y.clone() + other.y.clone()).half(),
        )
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    /// Upper (0) or lower (1) half-plane of the direction, with the positive
    /// x-axis in the upper half and the negative x-axis in the lower one.
    fn half_plane(&self) -> u8 {
        let scale = self.l1();
        match self.y.sign_rel(&scale) {
            Ordering::Greater => 0,
            Ordering::Less => 1,
            Ordering::Equal => {
                if self.x.is_positive() {
                    0
                } else {
                    1
                }
            }
        }
    }

    /// The representative of this direction modulo 180 degrees, lying in the
    /// half-open upper half-plane.
    pub fn direction_mod_pi(&self) -> Self {
        if self.half_plane() == 0 {
            self.clone()
        } else {
            -self.clone()
        }
    }
}

pub fn det<S: Scalar>(u: &Vec2<S>, v: &Vec2<S>) -> S {
    u.x.clone() * v.y.clone() - u.y.clone() * v.x.clone()
}

/// Whether `u` and `v` are parallel (either may be zero).
pub fn parallel<S: Scalar>(u: &Vec2<S>, v: &Vec2<S>) -> bool {
    let scale = u.l1() * v.l1();
    det(u, v).near_zero(&scale)
}

/// The `t` with `u = t * v`, if `u` is parallel to the nonzero vector `v`.
///
/// Solved from the larger coordinate of `v`; in exact mode both coordinates
/// agree whenever the result is `Some`.
pub fn parallel_ratio<S: Scalar>(u: &Vec2<S>, v: &Vec2<S>) -> Option<S> {
    if v.x.is_zero() && v.y.is_zero() {
        return None;
    }
    if !parallel(u, v) {
        return None;
    }
    let t = if v.x.abs() >= v.y.abs() {
        u.x.clone() / v.x.clone()
    } else {
        u.y.clone() / v.y.clone()
    };
    debug_assert!(!S::is_exact() || v.scale(&t) == *u);
    Some(t)
}

/// Total order of directions by polar angle in `[0, 2pi)`.
pub fn angle_cmp<S: Scalar>(a: &Vec2<S>, b: &Vec2<S>) -> Ordering {
    let (ha, hb) = (a.half_plane(), b.half_plane());
    if ha != hb {
        return ha.cmp(&hb);
    }
    let scale = a.l1() * b.l1();
    // b counterclockwise of a means a comes first.
    match det(a, b).sign_rel(&scale) {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Same direction (parallel and pointing the same way).
pub fn same_direction<S: Scalar>(a: &Vec2<S>, b: &Vec2<S>) -> bool {
    parallel(a, b) && a.dot(b).is_positive()
}

/// Signed shoelace area, positive for counterclockwise vertex lists.
pub fn polygon_area<S: Scalar>(vertices: &[Vec2<S>]) -> S {
    let k = vertices.len();
    let twice = (0..k).fold(S::zero(), |acc, i| {
        acc + det(&vertices[i], &vertices[(i + 1) % k])
    });
    twice.half()
}

/// Vertex-average of a vertex list.
pub fn centroid<S: Scalar>(vertices: &[Vec2<S>]) -> Vec2<S> {
    let count = S::from_i64(vertices.len() as i64);
    let sum = vertices.iter().fold(Vec2::zero(), |acc, v| acc + v.clone());
    Vec2::new(sum.x / count.clone(), sum.y / count)
}

/// Squared Euclidean diameter of a finite point set.
pub fn diameter_sq<S: Scalar>(points: &[Vec2<S>]) -> S {
    let mut best = S::zero();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let d = (p.clone() - q.clone()).norm_sq();
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// Cyclic index into a slice.
pub fn cyc<T>(items: &[T], i: isize) -> &T {
    &items[i.rem_euclid(items.len() as isize) as usize]
}

/// A cyclic family of values attached to the edges of a `2n`-gon. Slot `i`
/// holds the quantity of the edge from vertex `i` to vertex `i + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeIndexed<T>(pub Vec<T>);

impl<T> EdgeIndexed<T> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, i: isize) -> &T {
        cyc(&self.0, i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }
}

impl<T> Index<usize> for EdgeIndexed<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.0[i % self.0.len()]
    }
}

impl<T> FromIterator<T> for EdgeIndexed<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        EdgeIndexed(iter.into_iter().collect())
    }
}

impl<S: Scalar> Add for Vec2<S> {
    type Output = Vec2<S>;

    fn add(self, rhs: Self) -> Self {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<S: Scalar> Sub for Vec2<S> {
    type Output = Vec2<S>;

    fn sub(self, rhs: Self) -> Self {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<S: Scalar> Add for &Vec2<S> {
    type Output = Vec2<S>;

    fn add(self, rhs: Self) -> Vec2<S> {
        Vec2::new(self.x.clone() + rhs.x.clone(), self.y.clone() + rhs.y.clone())
    }
}

impl<S: Scalar> Sub for &Vec2<S> {
    type Output = Vec2<S>;

    fn sub(self, rhs: Self) -> Vec2<S> {
        Vec2::new(self.x.clone() - rhs.x.clone(), self.y.clone() - rhs.y.clone())
    }
}

impl<S: Scalar> Neg for Vec2<S> {
    type Output = Vec2<S>;

    fn neg(self) -> Self {
        Vec2::new(-self.x, -self.y)
    }
}

impl<S: Scalar> Neg for &Vec2<S> {
    type Output = Vec2<S>;

    fn neg(self) -> Vec2<S> {
        Vec2::new(-self.x.clone(), -self.y.clone())
    }
}
