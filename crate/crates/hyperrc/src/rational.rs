//! Exact rational scalars and literal parsing.
//!
//! All exact arithmetic in the crate runs over arbitrary-precision rationals;
//! this module fixes the concrete type and provides the literal syntax shared
//! by the expression language and the command line: integers (`42`), ratios
//! (`3/4`), decimals (`0.25`), and scientific notation (`1e-6`), each read
//! exactly.

use num::bigint::BigInt;
use num::{BigRational, One, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Builds `num / den`. Panics if `den == 0`; intended for literals in code.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the rational `n`.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nearest `f64` to `q`; overflowing magnitudes saturate to infinity.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite float. `None` for NaN or infinities.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Parses a rational literal: integer, `p/q`, decimal, or scientific
/// notation, with an optional leading sign. Whitespace is not trimmed.
pub fn parse(text: &str) -> Option<Rational> {
    let (sign, rest) = match text.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, text.strip_prefix('+').unwrap_or(text)),
    };
    let value = if let Some((num, den)) = rest.split_once('/') {
        let n: BigInt = num.parse().ok()?;
        let d: BigInt = den.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Rational::new(n, d)
    } else {
        parse_decimal(rest)?
    };
    Some(if sign < 0 { -value } else { value })
}

/// Parses `digits[.digits][e[sign]digits]` exactly.
fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(int_part) || !digits_ok(frac_part) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let base = Rational::from_integer(digits);
    Some(if scale >= 0 {
        base * Rational::from_integer(ten.pow(scale as u32))
    } else {
        base / Rational::from_integer(ten.pow(scale.unsigned_abs()))
    })
}

/// Raises `q` to an integer power. Panics on `0^negative`.
pub fn powi(q: &Rational, n: i32) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    if q.is_zero() && n < 0 {
        panic!("zero to a negative power");
    }
    q.pow(n)
}
