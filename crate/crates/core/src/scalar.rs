//! Numeric modes.
//!
//! Every distance computation is generic over [`Scalar`]. Two implementations
//! exist: `f64`, where comparisons use the tolerance [`TAU_EQ`], and
//! [`Rational`], an exact `i128` fraction used by the oracle suites where
//! boundary comparisons must be bit-reliable.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Comparison tolerance used in float mode.
pub const TAU_EQ: f64 = 1e-9;

/// Exact rational number.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumericMode {
    Float,
    Rational,
}

impl NumericMode {
    pub fn name(self) -> &'static str {
        match self {
            NumericMode::Float => "float",
            NumericMode::Rational => "rational",
        }
    }
}

impl FromStr for NumericMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "float" | "f64" => Ok(NumericMode::Float),
            "rational" | "exact" => Ok(NumericMode::Rational),
            other => Err(format!(
                "unknown numeric mode `{other}` (expected rational|float)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("cannot read `{0}` as a number")]
pub struct ParseScalarError(pub String);

/// A real number type usable as a distance value.
pub trait Scalar:
    Copy
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: NumericMode;

    fn from_i64(v: i64) -> Self;
    /// Converts a finite float. Rational mode reads the shortest decimal
    /// representation, so `0.1` becomes exactly `1/10`.
    fn from_f64(v: f64) -> Option<Self>;
    fn to_f64(self) -> f64;
    /// Largest integer not exceeding `self`.
    fn floor_i64(self) -> i64;
    /// Comparison slack: [`TAU_EQ`] for floats, zero for rationals.
    fn tol() -> Self;
    fn parse(text: &str) -> Result<Self, ParseScalarError>;
    fn to_json(self) -> Value;

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    fn half(self) -> Self {
        self / Self::from_i64(2)
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn approx_eq(self, other: Self) -> bool {
        (self - other).abs() <= Self::tol()
    }

    /// `self <= other` up to the mode's tolerance.
    fn approx_le(self, other: Self) -> bool {
        self <= other + Self::tol()
    }

    /// `2^exp` for any integer exponent.
    fn pow2(exp: i32) -> Self {
        let base = if exp >= 0 {
            Self::from_i64(2)
        } else {
            Self::one() / Self::from_i64(2)
        };
        (0..exp.unsigned_abs()).fold(Self::one(), |acc, _| acc * base)
    }

    fn from_json(value: &Value) -> Result<Self, ParseScalarError> {
        match value {
            Value::Number(n) => Self::parse(&n.to_string()),
            Value::String(s) => Self::parse(s),
            other => Err(ParseScalarError(other.to_string())),
        }
    }
}

impl Scalar for f64 {
    const MODE: NumericMode = NumericMode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn floor_i64(self) -> i64 {
        self.floor() as i64
    }

    fn tol() -> Self {
        TAU_EQ
    }

    fn parse(text: &str) -> Result<Self, ParseScalarError> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| ParseScalarError(text.into()))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| ParseScalarError(text.into()))?;
            if den == 0.0 {
                return Err(ParseScalarError(text.into()));
            }
            return Ok(num / den);
        }
        text.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| ParseScalarError(text.into()))
    }

    fn to_json(self) -> Value {
        serde_json::Number::from_f64(self)
            .map(Value::Number)
            .unwrap_or_else(|| Value::String(self.to_string()))
    }
}

impl Scalar for Rational {
    const MODE: NumericMode = NumericMode::Rational;

    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }

    fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        parse_decimal(&format!("{v}"))
    }

    fn to_f64(self) -> f64 {
        self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN)
    }

    fn floor_i64(self) -> i64 {
        self.floor().to_integer() as i64
    }

    fn tol() -> Self {
        <Ratio<i128> as num_traits::Zero>::zero()
    }

    fn parse(text: &str) -> Result<Self, ParseScalarError> {
        let text = text.trim();
        let err = || ParseScalarError(text.into());
        if let Some((num, den)) = text.split_once('/') {
            let num = parse_decimal(num.trim()).ok_or_else(err)?;
            let den = parse_decimal(den.trim()).ok_or_else(err)?;
            if den.is_zero() {
                return Err(err());
            }
            return Ok(num / den);
        }
        parse_decimal(text).ok_or_else(err)
    }

    /// Integers stay JSON numbers; other values become `"p/q"` strings.
    fn to_json(self) -> Value {
        if self.is_integer() {
            if let Ok(v) = i64::try_from(*self.numer()) {
                return Value::from(v);
            }
        }
        Value::String(self.to_string())
    }

    fn abs(self) -> Self {
        Signed::abs(&self)
    }
}

/// Exact reading of a decimal literal such as `-12.375` or `2.5e-3`.
fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: i128 = all_digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = 10i128;
    let value = if scale >= 0 {
        Ratio::from_integer(numer.checked_mul(ten.checked_pow(scale as u32)?)?)
    } else {
        Ratio::new(numer, ten.checked_pow(scale.unsigned_abs())?)
    };
    Some(value)
}

/// Total order helper for slices of scalars that are known to be comparable.
pub(crate) fn cmp_scalar<S: Scalar>(a: &S, b: &S) -> std::cmp::Ordering {
    a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_reading_is_exact() {
        assert_eq!(Rational::parse("0.1").unwrap(), Ratio::new(1, 10));
        assert_eq!(Rational::parse("-2.5e-1").unwrap(), Ratio::new(-1, 4));
        assert_eq!(Rational::parse("3/6").unwrap(), Ratio::new(1, 2));
        assert_eq!(Rational::from_f64(0.1).unwrap(), Ratio::new(1, 10));
        assert!(Rational::parse("abc").is_err());
        assert!(Rational::parse("1/0").is_err());
    }

    #[test]
    fn json_forms() {
        assert_eq!(Rational::from_i64(3).to_json(), Value::from(3));
        assert_eq!(Ratio::new(3i128, 2).to_json(), Value::String("3/2".into()));
        assert_eq!(
            Rational::from_json(&Value::String("3/2".into())).unwrap(),
            Ratio::new(3, 2)
        );
        assert_eq!(f64::from_json(&serde_json::json!(1.5)).unwrap(), 1.5);
    }

    #[test]
    fn floor_and_pow2() {
        assert_eq!(Ratio::new(5i128, 2).floor_i64(), 2);
        assert_eq!(Ratio::new(-5i128, 2).floor_i64(), -3);
        assert_eq!(Rational::pow2(-2), Ratio::new(1, 4));
        assert_eq!(f64::pow2(3), 8.0);
    }

    #[test]
    fn float_tolerance() {
        assert!(1.0f64.approx_le(1.0 - 1e-12));
        assert!(!1.0f64.approx_le(1.0 - 1e-6));
        assert!(!Ratio::new(1i128, 1).approx_le(Ratio::new(999_999_999, 1_000_000_000)));
    }
}
