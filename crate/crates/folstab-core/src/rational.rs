//! Exact rational scalars.
//!
//! Every scalar quantity in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. No floating point
//! enters any computation; decimal strings are produced only for rendering.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// Integer rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics if `d == 0`; use [`parse_rational`] for
/// untrusted input.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Param {
            what: format!("not a rational: `{s}`"),
        })?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| Error::Param {
            what: format!("not a rational: `{s}`"),
        })?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// Exact division that reports zero divisors instead of panicking.
pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// `r^e` for signed exponents; `r` must be nonzero when `e < 0`.
pub fn pow_i32(r: &Rational, e: i32) -> Result<Rational> {
    if e < 0 && r.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(r.pow(e))
}

/// The exact `n`-th root of a nonnegative rational, when one exists.
pub fn exact_nth_root(r: &Rational, n: u32) -> Option<Rational> {
    if r.is_negative() || n == 0 {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let num_root = r.numer().nth_root(n);
    let den_root = r.denom().nth_root(n);
    if num_root.clone().pow(n) == *r.numer() && den_root.clone().pow(n) == *r.denom() {
        Some(Rational::new(num_root, den_root))
    } else {
        None
    }
}

/// Renders `r` as a fixed-point decimal with `digits` fractional digits,
/// rounding half away from zero. Pure integer arithmetic.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let ten_pow = BigInt::from(10u32).pow(digits as u32);
    let scaled = r.numer().abs() * &ten_pow;
    let (mut q, rem) = scaled.div_rem(r.denom());
    if &rem * 2 >= *r.denom() {
        q += 1;
    }
    let (int_part, frac_part) = q.div_rem(&ten_pow);
    let sign = if r.is_negative() && !q.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}

/// Largest multiple of 2^-20 strictly below `w`, clamped at 0. Used to close
/// open interval boundaries on a fixed dyadic grid.
pub fn dyadic_below(w: &Rational) -> Rational {
    let step_den = BigInt::from(1u32) << 20;
    let mut k = (w * Rational::from_integer(step_den.clone())).floor().to_integer();
    if Rational::new(k.clone(), step_den.clone()) == *w {
        k -= 1;
    }
    if k.is_negative() {
        return Rational::zero();
    }
    Rational::new(k, step_den)
}

/// Inclusive rational grid `start, start+step, ...` up to `end`.
pub fn rational_grid(start: &Rational, end: &Rational, step: &Rational) -> Result<Vec<Rational>> {
    if !step.is_positive() {
        return Err(Error::Param {
            what: format!("grid step must be positive, got {step}"),
        });
    }
    if start > end {
        return Err(Error::Param {
            what: format!("grid start {start} exceeds end {end}"),
        });
    }
    let count = ((end - start) / step).floor().to_integer();
    let count = count.to_usize().ok_or_else(|| Error::Param {
        what: "grid too large".into(),
    })?;
    if count > 100_000 {
        return Err(Error::Param {
            what: "grid too large".into(),
        });
    }
    Ok((0..=count).map(|i| start + step * int(i as i64)).collect())
}
