//! Polygons of constant width in Minkowski planes.
//!
//! Given a convex polygon `P`, [`ball`] builds the polygonal unit ball `U`
//! for which `P` has constant width together with its dual `V`. [`cw`]
//! handles the central equidistant and the equidistant family, [`evolute`]
//! the centers of curvature and involutes, and [`iterate`] the alternating
//! involute sequence that shrinks to the central point of `P`.
//!
//! All geometry is generic over [`Scalar`], implemented for exact
//! [`Rational`] numbers and for `f64`.

pub mod ball;
pub mod cli;
pub mod cw;
pub mod error;
pub mod evolute;
pub mod fuzz;
pub mod geom;
pub mod io;
pub mod iterate;
pub mod scalar;
pub mod svg;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Backend, Rational, Scalar};
