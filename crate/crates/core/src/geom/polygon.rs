use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{angle_cmp, cyc, det, parallel, polygon_area, Vec2};

/// Something the ingestion step changed in a raw vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cleanup {
    Reversed,
    DroppedDuplicate { index: usize },
    DroppedCollinear { index: usize },
}

impl fmt::Display for Cleanup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cleanup::Reversed => write!(f, "reversed clockwise input"),
            Cleanup::DroppedDuplicate { index } => write!(f, "dropped duplicate vertex {index}"),
            Cleanup::DroppedCollinear { index } => write!(f, "dropped collinear vertex {index}"),
        }
    }
}

/// Convex polygon with counterclockwise, pairwise distinct vertices and no
/// collinear triples.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon<S> {
    vertices: Vec<Vec2<S>>,
}

impl<S: Scalar> ConvexPolygon<S> {
    pub fn new(vertices: Vec<Vec2<S>>) -> Result<Self> {
        Self::ingest(vertices).map(|(poly, _)| poly)
    }

    /// Normalizes a raw vertex list: merges repeated vertices, drops
    /// collinear ones, and reverses clockwise input. Every change is reported.
    pub fn ingest(vertices: Vec<Vec2<S>>) -> Result<(Self, Vec<Cleanup>)> {
        let mut notes = Vec::new();
        // Track original indices so the notes point at the caller's list.
        let mut pts: Vec<(usize, Vec2<S>)> = vertices.into_iter().enumerate().collect();

        let mut i = 0;
        while pts.len() > 1 && i < pts.len() {
            let next = (i + 1) % pts.len();
            if pts[i].1.approx_eq(&pts[next].1) {
                notes.push(Cleanup::DroppedDuplicate { index: pts[next].0 });
                pts.remove(next);
            } else {
                i += 1;
            }
        }
        if pts.len() < 3 {
            return Err(Error::TooFewVertices { needed: 3, found: pts.len() });
        }

        let area = polygon_area(&pts.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>());
        if area.is_negative() && !area.near_zero(&S::one()) {
            pts.reverse();
            notes.push(Cleanup::Reversed);
        }

        loop {
            let k = pts.len();
            if k < 3 {
                return Err(Error::TooFewVertices { needed: 3, found: k });
            }
            let straight = (0..k).find(|&i| {
                let prev = &pts[(i + k - 1) % k].1;
                let next = &pts[(i + 1) % k].1;
                let a = &pts[i].1 - prev;
                let b = next - &pts[i].1;
                parallel(&a, &b) && a.dot(&b).is_positive()
            });
            match straight {
                Some(i) => {
                    notes.push(Cleanup::DroppedCollinear { index: pts[i].0 });
                    pts.remove(i);
                }
                None => break,
            }
        }

        let vertices: Vec<_> = pts.into_iter().map(|(_, p)| p).collect();
        let edges = edge_vectors(&vertices);
        check_turning(&edges, true)?;
        Ok((ConvexPolygon { vertices }, notes))
    }

    pub fn vertices(&self) -> &[Vec2<S>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> S {
        polygon_area(&self.vertices)
    }

    pub fn into_vertices(self) -> Vec<Vec2<S>> {
        self.vertices
    }
}

/// A `2n`-gon whose side `i` is parallel to side `i + n`, or exactly one of
/// the two is a point. Diagonals `P_i - P_(i+n)` are nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct PairedPolygon<S> {
    vertices: Vec<Vec2<S>>,
    n: usize,
}

impl<S: Scalar> PairedPolygon<S> {
    pub fn new(vertices: Vec<Vec2<S>>) -> Result<Self> {
        let len = vertices.len();
        if len < 4 || len % 2 != 0 {
            return Err(Error::TooFewVertices { needed: 4, found: len });
        }
        let n = len / 2;
        for i in 0..len {
            let diag = &vertices[i] - &vertices[(i + n) % len];
            if diag.is_zero() || diag.approx_eq(&Vec2::zero()) {
                return Err(Error::DegenerateDiagonal { index: i });
            }
        }
        let edges = edge_vectors(&vertices);
        for i in 0..n {
            let (a, b) = (&edges[i], &edges[i + n]);
            let a_zero = is_negligible(a);
            let b_zero = is_negligible(b);
            if a_zero && b_zero {
                return Err(Error::NotParallel { index: i });
            }
            if !a_zero && !b_zero && !parallel(a, b) {
                return Err(Error::NotParallel { index: i });
            }
        }
        let proper: Vec<_> = edges.into_iter().filter(|e| !is_negligible(e)).collect();
        check_turning(&proper, false)?;
        Ok(PairedPolygon { vertices, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vec2<S>] {
        &self.vertices
    }

    pub fn vertex(&self, i: isize) -> &Vec2<S> {
        cyc(&self.vertices, i)
    }

    /// `P_(i+1) - P_i`.
    pub fn edge(&self, i: isize) -> Vec2<S> {
        self.vertex(i + 1) - self.vertex(i)
    }

    /// `P_i - P_(i+n)`.
    pub fn diagonal(&self, i: isize) -> Vec2<S> {
        self.vertex(i) - self.vertex(i + self.n as isize)
    }

    /// The vertex list with repeated vertices collapsed: a strictly convex
    /// polygon.
    pub fn distinct_vertices(&self) -> Vec<Vec2<S>> {
        let mut out: Vec<Vec2<S>> = Vec::with_capacity(self.len());
        for v in &self.vertices {
            if out.last().map_or(true, |last| !last.approx_eq(v)) {
                out.push(v.clone());
            }
        }
        while out.len() > 1 && out[0].approx_eq(out.last().unwrap()) {
            out.pop();
        }
        out
    }

    pub fn area(&self) -> S {
        polygon_area(&self.vertices)
    }

    pub fn into_vertices(self) -> Vec<Vec2<S>> {
        self.vertices
    }
}

/// Strictly convex, counterclockwise `2n`-gon symmetric about the origin:
/// the unit ball of a polygonal norm.
#[derive(Clone, Debug, PartialEq)]
pub struct CenteredBall<S> {
    vertices: Vec<Vec2<S>>,
    n: usize,
}

impl<S: Scalar> CenteredBall<S> {
    pub fn new(vertices: Vec<Vec2<S>>) -> Result<Self> {
        let len = vertices.len();
        if len < 4 || len % 2 != 0 {
            return Err(Error::InvalidBall(format!("needs an even vertex count >= 4, got {len}")));
        }
        let n = len / 2;
        for i in 0..n {
            if !vertices[i + n].approx_eq(&-&vertices[i]) {
                return Err(Error::InvalidBall(format!("vertex {} is not -vertex {i}", i + n)));
            }
        }
        for i in 0..len {
            let d = det(&vertices[i], &vertices[(i + 1) % len]);
            if !d.is_positive() || d.near_zero(&S::one()) {
                return Err(Error::InvalidBall(format!("[W_{i}, W_{}] is not positive", i + 1)));
            }
        }
        let edges = edge_vectors(&vertices);
        check_turning(&edges, true).map_err(|e| Error::InvalidBall(e.to_string()))?;
        Ok(CenteredBall { vertices, n })
    }

    /// Wraps a vertex list already known to satisfy the ball invariants.
    pub(crate) fn from_trusted(vertices: Vec<Vec2<S>>) -> Self {
        let n = vertices.len() / 2;
        CenteredBall { vertices, n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vec2<S>] {
        &self.vertices
    }

    pub fn vertex(&self, i: isize) -> &Vec2<S> {
        cyc(&self.vertices, i)
    }

    /// `W_(i+1) - W_i`.
    pub fn edge(&self, i: isize) -> Vec2<S> {
        self.vertex(i + 1) - self.vertex(i)
    }

    /// `[W_i, W_(i+1)]`, twice the area of the triangle on edge `i`.
    pub fn edge_det(&self, i: isize) -> S {
        det(self.vertex(i), self.vertex(i + 1))
    }

    pub fn area(&self) -> S {
        polygon_area(&self.vertices)
    }

    /// The same ball with its vertex list rotated to start at `start`.
    pub fn rotated(&self, start: usize) -> Self {
        let len = self.len();
        let vertices = (0..len).map(|i| self.vertices[(i + start) % len].clone()).collect();
        CenteredBall { vertices, n: self.n }
    }

    pub fn into_vertices(self) -> Vec<Vec2<S>> {
        self.vertices
    }
}

fn is_negligible<S: Scalar>(v: &Vec2<S>) -> bool {
    v.is_zero() || v.approx_eq(&Vec2::zero())
}

fn edge_vectors<S: Scalar>(vertices: &[Vec2<S>]) -> Vec<Vec2<S>> {
    let k = vertices.len();
    (0..k).map(|i| &vertices[(i + 1) % k] - &vertices[i]).collect()
}

/// Every turn is a left turn (or straight, when `strict` is off) and the
/// edge directions wind around exactly once.
fn check_turning<S: Scalar>(edges: &[Vec2<S>], strict: bool) -> Result<()> {
    let k = edges.len();
    if k < 3 {
        return Err(Error::TooFewVertices { needed: 3, found: k });
    }
    let mut wraps = 0;
    for i in 0..k {
        let (a, b) = (&edges[i], &edges[(i + 1) % k]);
        let turn = det(a, b);
        let scale = a.l1() * b.l1();
        match turn.sign_rel(&scale) {
            Ordering::Less => return Err(Error::NotConvex { index: (i + 1) % k }),
            Ordering::Equal if strict || !a.dot(b).is_positive() => {
                return Err(Error::NotConvex { index: (i + 1) % k })
            }
            _ => {}
        }
        if angle_cmp(a, b) == Ordering::Greater {
            wraps += 1;
        }
    }
    if wraps != 1 {
        return Err(Error::NotConvex { index: 0 });
    }
    Ok(())
}
