//! Numeric backends.
//!
//! Every construction in the crate is generic over [`Scalar`]. The exact
//! backend ([`Rational`]) makes all identities hold with zero tolerance; the
//! `f64` backend trades that for speed and compares with [`FLOAT_EPS`].

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::str::FromStr;

use dashu_int::IBig;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = dashu_ratio::RBig;

/// Comparison tolerance of the float backend.
pub const FLOAT_EPS: f64 = 1e-9;

/// Which backend a computation runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Float,
}

impl Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Rational => "rational",
            Backend::Float => "float",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Backend::Rational),
            "float" => Ok(Backend::Float),
            other => Err(Error::Parse(format!("unknown backend `{other}`"))),
        }
    }
}

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Signed + Send + Sync + 'static
{
    const BACKEND: Backend;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn to_f64(&self) -> f64;

    /// Parses `"p/q"`, an integer, or a decimal with optional exponent.
    /// The rational backend converts decimals exactly.
    fn parse(text: &str) -> Result<Self>;

    /// JSON form: exact string for rationals, a number for floats.
    fn to_json(&self) -> serde_json::Value;

    /// Whether `self` is zero relative to the magnitude `scale`.
    fn near_zero(&self, scale: &Self) -> bool;

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Rational
    }

    fn half(&self) -> Self {
        self.clone() / Self::from_i64(2)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        let scale = if self.abs() > other.abs() { self.abs() } else { other.abs() };
        (self.clone() - other.clone()).near_zero(&scale)
    }

    /// Sign with tolerance.
    fn sign_rel(&self, scale: &Self) -> Ordering {
        if self.near_zero(scale) {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// `self <= other` up to tolerance.
    fn le_approx(&self, other: &Self) -> bool {
        self <= other || self.approx_eq(other)
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::from_parts_signed(IBig::from(num), IBig::from(den))
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self).value()
    }

    fn parse(text: &str) -> Result<Self> {
        parse_rational(text)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }

    fn near_zero(&self, _scale: &Self) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse(text: &str) -> Result<Self> {
        let value = if text.contains('/') {
            Scalar::to_f64(&parse_rational(text)?)
        } else {
            text.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad number `{text}`: {e}")))?
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Parse(format!("non-finite number `{text}`")))
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }

    fn near_zero(&self, scale: &Self) -> bool {
        self.abs() <= FLOAT_EPS * scale.abs().max(1.0)
    }
}

fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("bad number `{text}`"));
    if let Some((num, den)) = text.split_once('/') {
        let num = IBig::from_str(num.trim()).map_err(|_| bad())?;
        let den = IBig::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{text}`")));
        }
        return Ok(Rational::from_parts_signed(num, den));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (
            &text[..pos],
            text[pos + 1..].parse::<i32>().map_err(|_| bad())?,
        ),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from(IBig::from_str(&digits).map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from(10);
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Largest of the absolute values, or zero for an empty iterator.
pub fn max_abs<'a, S: Scalar>(values: impl IntoIterator<Item = &'a S>) -> S {
    values
        .into_iter()
        .map(|v| v.abs())
        .fold(S::zero(), |acc, v| if v > acc { v } else { acc })
}

/// Convenience for tests and examples: `ratio(1, 2)` is one half on any backend.
pub fn ratio<S: Scalar>(num: i64, den: i64) -> S {
    S::from_ratio(num, den)
}
