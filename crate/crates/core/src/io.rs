//! JSON documents.
//!
//! Coordinates are either JSON numbers or exact strings such as `"-3/7"` or
//! `"0.125"`. In the rational backend decimals are read exactly, so `0.1` is
//! one tenth.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geom::{CenteredBall, Cleanup, ConvexPolygon, Vec2};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Number(serde_json::Number),
    Text(String),
}

impl Coord {
    pub fn parse<S: Scalar>(&self) -> Result<S> {
        match self {
            Coord::Number(n) => S::parse(&n.to_string()),
            Coord::Text(t) => S::parse(t),
        }
    }

    pub fn from_scalar<S: Scalar>(x: &S) -> Self {
        match x.to_json() {
            Value::Number(n) => Coord::Number(n),
            Value::String(s) => Coord::Text(s),
            other => Coord::Text(other.to_string()),
        }
    }
}

/// An input polygon, optionally with a reference unit ball to test its
/// width against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<[Coord; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<Vec<[Coord; 2]>>,
}

fn parse_points<S: Scalar>(coords: &[[Coord; 2]]) -> Result<Vec<Vec2<S>>> {
    coords
        .iter()
        .map(|[x, y]| Ok(Vec2::new(x.parse()?, y.parse()?)))
        .collect()
}

fn coords<S: Scalar>(points: &[Vec2<S>]) -> Vec<[Coord; 2]> {
    points
        .iter()
        .map(|p| [Coord::from_scalar(&p.x), Coord::from_scalar(&p.y)])
        .collect()
}

impl PolygonDocument {
    pub fn from_points<S: Scalar>(name: Option<String>, points: &[Vec2<S>]) -> Self {
        PolygonDocument { name, vertices: coords(points), ball: None }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("polygon document: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn points<S: Scalar>(&self) -> Result<Vec<Vec2<S>>> {
        parse_points(&self.vertices)
    }

    /// The cleaned-up convex polygon and the list of changes made to the input.
    pub fn polygon<S: Scalar>(&self) -> Result<(ConvexPolygon<S>, Vec<Cleanup>)> {
        ConvexPolygon::ingest(self.points()?)
    }

    pub fn reference_ball<S: Scalar>(&self) -> Result<Option<CenteredBall<S>>> {
        match &self.ball {
            None => Ok(None),
            Some(c) => CenteredBall::new(parse_points(c)?).map(Some),
        }
    }
}

pub fn point_json<S: Scalar>(p: &Vec2<S>) -> Value {
    Value::Array(vec![p.x.to_json(), p.y.to_json()])
}

pub fn points_json<S: Scalar>(points: &[Vec2<S>]) -> Value {
    Value::Array(points.iter().map(point_json).collect())
}

pub fn scalars_json<S: Scalar>(values: &[S]) -> Value {
    Value::Array(values.iter().map(Scalar::to_json).collect())
}
