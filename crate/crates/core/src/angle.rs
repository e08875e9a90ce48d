//! Angles on the unit circle, measured in turns and normalized to [0, 1).
//!
//! An angle is either an exact fraction of a turn or a floating point value.
//! Exact angles support arithmetic with no rounding, which is what makes tie
//! detection between rotated digit directions decidable; float angles are
//! compared with an explicit tolerance instead. The two representations are
//! never considered equal to each other, and the mode is chosen by the caller
//! at parse time: a string containing `/` is exact, anything else is float.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde_json::Value;

use crate::error::{Error, Result};

/// An angle in [0, 1) turns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleAngle {
    /// Exact fraction of a turn, in lowest terms with positive denominator.
    Exact(Rational64),
    /// Floating point fraction of a turn.
    Float(f64),
}

impl CircleAngle {
    pub fn zero() -> Self {
        CircleAngle::Exact(Rational64::new_raw(0, 1))
    }

    /// Exact angle p/q turns, reduced and normalized mod 1.
    pub fn from_fraction(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ParseAngle(format!("{p}/{q}")));
        }
        Ok(CircleAngle::Exact(reduced_mod1(p as i128, q as i128)))
    }

    /// Float angle normalized mod 1.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::ParseAngle(x.to_string()));
        }
        let mut v = x.rem_euclid(1.0);
        if v >= 1.0 {
            v = 0.0;
        }
        Ok(CircleAngle::Float(v))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CircleAngle::Exact(_))
    }

    pub fn as_exact(&self) -> Option<Rational64> {
        match self {
            CircleAngle::Exact(r) => Some(*r),
            CircleAngle::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            CircleAngle::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            CircleAngle::Float(f) => *f,
        }
    }

    /// Sum mod 1. Exact only when both operands are exact.
    pub fn add(&self, other: &CircleAngle) -> CircleAngle {
        match (self, other) {
            (CircleAngle::Exact(a), CircleAngle::Exact(b)) => {
                let num = *a.numer() as i128 * *b.denom() as i128
                    + *b.numer() as i128 * *a.denom() as i128;
                let den = *a.denom() as i128 * *b.denom() as i128;
                CircleAngle::Exact(reduced_mod1(num, den))
            }
            _ => {
                let mut v = (self.to_f64() + other.to_f64()).rem_euclid(1.0);
                if v >= 1.0 {
                    v = 0.0;
                }
                CircleAngle::Float(v)
            }
        }
    }

    /// Difference mod 1. Exact only when both operands are exact.
    pub fn sub(&self, other: &CircleAngle) -> CircleAngle {
        match (self, other) {
            (CircleAngle::Exact(a), CircleAngle::Exact(b)) => {
                let num = *a.numer() as i128 * *b.denom() as i128
                    - *b.numer() as i128 * *a.denom() as i128;
                let den = *a.denom() as i128 * *b.denom() as i128;
                CircleAngle::Exact(reduced_mod1(num, den))
            }
            _ => {
                let mut v = (self.to_f64() - other.to_f64()).rem_euclid(1.0);
                if v >= 1.0 {
                    v = 0.0;
                }
                CircleAngle::Float(v)
            }
        }
    }

    /// Integer multiple mod 1.
    pub fn mul_int(&self, k: i64) -> CircleAngle {
        match self {
            CircleAngle::Exact(r) => CircleAngle::Exact(reduced_mod1(
                *r.numer() as i128 * k as i128,
                *r.denom() as i128,
            )),
            CircleAngle::Float(f) => {
                let mut v = (f * k as f64).rem_euclid(1.0);
                if v >= 1.0 {
                    v = 0.0;
                }
                CircleAngle::Float(v)
            }
        }
    }

    /// Circular distance in turns, in [0, 1/2]. Evaluated in floats.
    pub fn circular_distance(&self, other: &CircleAngle) -> f64 {
        let d = (self.to_f64() - other.to_f64()).rem_euclid(1.0);
        d.min(1.0 - d)
    }

    /// JSON form: exact angles as a "p/q" string, float angles as a number.
    pub fn to_json(&self) -> Value {
        match self {
            CircleAngle::Exact(r) => Value::String(format!("{}/{}", r.numer(), r.denom())),
            CircleAngle::Float(f) => serde_json::json!(f),
        }
    }
}

impl fmt::Display for CircleAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircleAngle::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            CircleAngle::Float(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for CircleAngle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p
                .trim()
                .parse()
                .map_err(|_| Error::ParseAngle(s.to_string()))?;
            let q: i64 = q
                .trim()
                .parse()
                .map_err(|_| Error::ParseAngle(s.to_string()))?;
            CircleAngle::from_fraction(p, q)
        } else {
            let x: f64 = s.parse().map_err(|_| Error::ParseAngle(s.to_string()))?;
            CircleAngle::from_f64(x)
        }
    }
}

/// Reduce num/den mod 1 into a `Rational64` in [0, 1) in lowest terms.
pub(crate) fn reduced_mod1(num: i128, den: i128) -> Rational64 {
    debug_assert!(den != 0);
    let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
    num = num.rem_euclid(den);
    let g = num.gcd(&den);
    num /= g;
    den /= g;
    Rational64::new_raw(
        i64::try_from(num).expect("angle numerator overflows i64"),
        i64::try_from(den).expect("angle denominator overflows i64"),
    )
}
