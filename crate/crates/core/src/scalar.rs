//! Scalar kinds shared by the spectral and reduction layers.
//!
//! Two kinds exist: arbitrary-precision rationals for exact work and `f64`
//! for simulation. Algebraic objects are generic over [`Scalar`], so mixing
//! kinds inside one expression does not type-check.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Rational,
    Float,
}

impl ScalarKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Float => "float",
        }
    }
}

impl std::fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const KIND: ScalarKind;
    /// True when arithmetic is exact, so comparisons ignore tolerances.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn is_negative(&self) -> bool;

    /// Equality for exact kinds, `|a - b| <= tol` otherwise.
    fn close(&self, other: &Self, tol: f64) -> bool;

    /// Lossless `(numerator, denominator)` decimal strings.
    fn encode(&self) -> (String, String);
    fn decode(num: &str, den: &str) -> Result<Self, String>;

    fn half() -> Self {
        Self::one() / Self::from_i64(2)
    }
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn close(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    fn encode(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
    fn decode(num: &str, den: &str) -> Result<Self, String> {
        let n = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d =
            BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if Zero::is_zero(&d) {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(n, d))
    }
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Float;
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn close(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }
    fn encode(&self) -> (String, String) {
        (format_f64(*self), "1".to_string())
    }
    fn decode(num: &str, den: &str) -> Result<Self, String> {
        let n: f64 = num
            .trim()
            .parse()
            .map_err(|e| format!("bad float {num:?}: {e}"))?;
        let d: f64 = den
            .trim()
            .parse()
            .map_err(|e| format!("bad float {den:?}: {e}"))?;
        if d == 0.0 {
            return Err("zero denominator".into());
        }
        Ok(n / d)
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    format!("{x:.16e}")
}

/// Parses `"3"`, `"-3/10"` or a decimal such as `"9.3"` / `"1e-2"` into an
/// exact rational (decimals are read as written, not as the nearest `f64`).
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((n, d)) = t.split_once('/') {
        return Rational::decode(n, d);
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..]
                .parse()
                .map_err(|e| format!("bad exponent in {t:?}: {e}"))?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("no digits in {t:?}"));
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(format!("not a number: {t:?}"));
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all).map_err(|e| e.to_string())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Reads an `f64` through its shortest decimal representation, so `9.2`
/// becomes `46/5` rather than the binary expansion of the nearest double.
pub fn rational_from_f64(x: f64) -> Result<Rational, String> {
    if !x.is_finite() {
        return Err(format!("non-finite value {x}"));
    }
    parse_rational(&format!("{x:e}"))
}

/// Shorthand for small literal rationals in tests and oracles.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_rational("9.3").unwrap(), ratio(93, 10));
        assert_eq!(parse_rational("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rational("1e-2").unwrap(), ratio(1, 100));
        assert_eq!(parse_rational("3/-6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("12").unwrap(), ratio(12, 1));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn f64_to_rational_uses_shortest_decimal() {
        assert_eq!(rational_from_f64(9.2).unwrap(), ratio(46, 5));
        assert_eq!(rational_from_f64(8.5).unwrap(), ratio(17, 2));
        assert_eq!(rational_from_f64(9.03125).unwrap(), ratio(289, 32));
        assert!(rational_from_f64(f64::NAN).is_err());
    }

    #[test]
    fn float_encoding_round_trips() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0] {
            let (n, d) = x.encode();
            assert_eq!(f64::decode(&n, &d).unwrap().to_bits(), x.to_bits());
        }
    }
}
