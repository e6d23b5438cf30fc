//! Exact rational arithmetic helpers.
//!
//! All values in this crate are [`Rational`] (arbitrary-precision,
//! automatically reduced). This module adds the small amount of glue the
//! rest of the crate needs: literals, parsing of `"a/b"` strings, canonical
//! formatting, and a decimal rendering used only for advisory display
//! columns.

use alloc::string::String;
use alloc::string::ToString;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The scalar type of the whole crate: an exact, reduced big rational.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n / d`.
///
/// Panics if `d == 0`; use only with literal denominators.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` for rational `base` and non-negative integer `exp`.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Parses `"a/b"` or `"a"` (optional leading sign) into a rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |reason: &'static str| Error::OrdinalSyntax {
        text: text.to_string(),
        reason,
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(bad("empty rational literal"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n = BigInt::from_str(num).map_err(|_| bad("malformed numerator"))?;
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| bad("malformed denominator"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Formats a rational canonically: `"a/b"` in lowest terms, or just `"a"`
/// when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Rounds `r` to `digits` decimal places (half away from zero) and renders
/// the result. Advisory display only — never feeds back into computation.
pub fn decimal_approx(r: &Rational, digits: u32) -> String {
    let mut scale = BigInt::one();
    for _ in 0..digits {
        scale *= 10;
    }
    let scaled = r * Rational::from_integer(scale.clone());
    let num = scaled.numer();
    let den = scaled.denom();
    // round half away from zero: floor((2|num| + den) / (2 den)), signed
    let two = BigInt::from(2);
    let mag = (num.abs() * &two + den) / (den * &two);
    let mut digits_str = mag.to_string();
    let d = digits as usize;
    if digits_str.len() <= d {
        let mut padded = String::new();
        for _ in 0..(d + 1 - digits_str.len()) {
            padded.push('0');
        }
        padded.push_str(&digits_str);
        digits_str = padded;
    }
    let split = digits_str.len() - d;
    let mut out = String::new();
    if num.is_negative() && !mag.is_zero() {
        out.push('-');
    }
    out.push_str(&digits_str[..split]);
    if d > 0 {
        out.push('.');
        out.push_str(&digits_str[split..]);
    }
    out
}
