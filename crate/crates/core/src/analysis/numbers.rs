//! Parsing and printing of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::exact::ExactRational;
use crate::error::{FrogError, Result};

/// Most fractional digits accepted in a decimal, so denominators stay ≤ 10¹⁸.
pub const MAX_DECIMAL_DIGITS: usize = 18;

/// Parse `"p/q"`, an integer, or a decimal such as `"0.75"`, exactly.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || FrogError::InvalidInput(format!("cannot parse {s:?} as a rational"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(FrogError::InvalidInput(format!(
                "{s:?} has a zero denominator"
            )));
        }
        return Ok(ExactRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    if frac.len() > MAX_DECIMAL_DIGITS {
        return Err(FrogError::InvalidInput(format!(
            "{s:?} has more than {MAX_DECIMAL_DIGITS} decimal places; write it as p/q"
        )));
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let den = BigInt::from(10u8).pow(frac.len() as u32);
    let r = ExactRational::new(digits, den);
    Ok(if neg { -r } else { r })
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &ExactRational) -> String {
    r.to_string()
}

/// Decimal rendering rounded half away from zero to `places` digits.
pub fn format_decimal(r: &ExactRational, places: usize) -> String {
    let scale = BigInt::from(10u8).pow(places as u32);
    let scaled = r.abs() * ExactRational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let q = if rem * 2 >= *scaled.denom() { q + 1 } else { q };
    let (int, frac) = q.div_rem(&scale);
    let sign = if r.is_negative() && !(int.is_zero() && frac.is_zero()) {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = places)
    }
}

pub fn to_f64(r: &ExactRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
