//! Decimal strings for double-double reals.
//!
//! Formatting is exact: hi + lo is converted to a rational and rounded to the
//! requested number of significant digits. Parsing is accurate to a few units
//! of 10⁻³², so a canonical string with 30 digits round-trips.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use dmr_core::scalar::bigint_to_twofloat;
use dmr_core::{Error, Real, Result};

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

/// `x` in scientific notation with `digits` significant digits and no
/// trailing zeros, e.g. `-6.9314718055994530941723212146e-1`; zero is `0`.
pub fn format(x: Real, digits: usize) -> String {
    if x.hi() == 0.0 {
        return "0".into();
    }
    let exact = BigRational::from_float(x.hi()).unwrap_or_else(BigRational::zero)
        + BigRational::from_float(x.lo()).unwrap_or_else(BigRational::zero);
    let neg = exact.is_negative();
    let a = exact.abs();
    let mut e = x.hi().abs().log10().floor() as i32;
    let scale = |e: i32| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(pow10(e as u32))
        } else {
            BigRational::new(BigInt::one(), pow10((-e) as u32))
        }
    };
    while a >= scale(e + 1) {
        e += 1;
    }
    while a < scale(e) {
        e -= 1;
    }
    let shift = digits as i32 - 1 - e;
    let scaled = &a * scale(shift);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut m = (scaled + half).floor().to_integer();
    if m == pow10(digits as u32) {
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let (lead, rest) = s.split_at(1);
    let rest = rest.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if rest.is_empty() {
        format!("{sign}{lead}e{e}")
    } else {
        format!("{sign}{lead}.{rest}e{e}")
    }
}

fn bad(s: &str) -> Error {
    Error::Parse(format!("bad decimal {s:?}"))
}

/// Parses `[-]digits[.digits][e[±]digits]`.
pub fn parse(s: &str) -> Result<Real> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().map_err(|_| bad(s))?),
        None => (body, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad(s));
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad(s))?;
    let e = exp - frac.len() as i64;
    let mut v = bigint_to_twofloat(&digits);
    if digits.is_zero() {
        return Ok(Real::from(0.0));
    }
    if e.unsigned_abs() > 700 {
        return if e < 0 { Ok(Real::from(0.0)) } else { Err(bad(s)) };
    }
    // 10^|e| by squaring
    let mut p = Real::from(1.0);
    let mut base = Real::from(10.0);
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            p *= base;
        }
        base = base * base;
        k >>= 1;
    }
    v = if e >= 0 { v * p } else { v / p };
    if !v.hi().is_finite() {
        return Err(bad(s));
    }
    Ok(if neg { -v } else { v })
}
