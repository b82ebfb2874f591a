//! Exact rational arithmetic helpers.
//!
//! All counting formulas in this crate are evaluated end-to-end in
//! arbitrary-precision rationals; a value is converted to an integer only
//! after asserting that its denominator is one. Floating point never enters
//! a count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact rational used by every formula evaluator.
pub type Rat = BigRational;

/// Exact integer counterpart.
pub type Int = BigInt;

/// `n` as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p / q` as a rational.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer power with `u32` exponent, supporting large bases.
pub fn pow_int(base: &Int, exp: u64) -> Int {
    base.pow(exp.try_into().expect("exponent fits u32"))
}

/// Rational power with a nonnegative integer exponent.
pub fn pow_rat(base: &Rat, exp: u64) -> Rat {
    let e: i32 = exp.try_into().expect("exponent fits i32");
    base.pow(e)
}

/// Binomial coefficient `C(n, k)` as an exact integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Factorial as an exact integer.
pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for i in 2..=n {
        acc *= Int::from(i);
    }
    acc
}

/// Converts a rational that must be integral into an integer, or returns the
/// internal-consistency error naming the offending value.
pub fn expect_integer(value: &Rat) -> Result<Int> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegral {
            value: value.to_string(),
        })
    }
}

/// Decimal rendering of a rational, truncated towards zero at `digits`
/// fractional digits.
pub fn to_decimal(value: &Rat, digits: usize) -> String {
    let scale = pow_int(&Int::from(10), digits as u64);
    let scaled = (value * Rat::from_integer(scale.clone()))
        .trunc()
        .to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let abs = scaled.abs();
    let (int_part, frac_part) = (abs.clone() / &scale, abs % &scale);
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part,
            width = digits
        )
    }
}

/// Lossy `f64` view, for report columns only.
pub fn to_f64(value: &Rat) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
