//! Certified real intervals with exact rational endpoints.
//!
//! Irrational quantities (square roots and half-integer powers) are enclosed
//! in `[lo, hi]` intervals whose endpoints are exact rationals, so every
//! comparison made through an interval is a proof at the stated precision.
//! Widths are controlled in decimal digits.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{pow_int, pow_rat, to_decimal, Int, Rat};

/// A closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn point(v: Rat) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rat) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.mul(&Self::point(c.clone()))
    }

    /// Division; the divisor interval must not straddle zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(
            other.lo.is_positive() || other.hi.is_negative(),
            "division by an interval containing zero"
        );
        let quotients = [
            &self.lo / &other.lo,
            &self.lo / &other.hi,
            &self.hi / &other.lo,
            &self.hi / &other.hi,
        ];
        let lo = quotients.iter().min().unwrap().clone();
        let hi = quotients.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    /// Integer power; requires a nonnegative lower endpoint.
    pub fn pow(&self, exp: u64) -> Self {
        assert!(!self.lo.is_negative(), "pow on an interval below zero");
        Self::new(pow_rat(&self.lo, exp), pow_rat(&self.hi, exp))
    }

    /// Midpoint rendered with the given number of decimal digits.
    pub fn decimal(&self, digits: usize) -> String {
        let mid = (&self.lo + &self.hi) / Rat::from_integer(Int::from(2));
        to_decimal(&mid, digits)
    }
}

/// Certified square root of a nonnegative rational: returns `[lo, hi]` with
/// `lo^2 <= x <= hi^2` and width at most `10^-digits`.
///
/// Computed as a scaled integer square root, so endpoint denominators stay
/// proportional to the requested precision.
pub fn sqrt_interval(x: &Rat, digits: usize) -> RatInterval {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if x.is_zero() {
        return RatInterval::point(Rat::zero());
    }
    let scale = pow_int(&Int::from(10), digits as u64);
    // sqrt(p/q) = sqrt(p*q)/q; work with N = p*q*10^(2*digits).
    let p = x.numer().clone();
    let q = x.denom().clone();
    let n: BigInt = &p * &q * &scale * &scale;
    let root = n.sqrt(); // floor square root
    let denom = &q * &scale;
    let lo = Rat::new(root.clone(), denom.clone());
    let hi = Rat::new(root + BigInt::one(), denom);
    RatInterval::new(lo, hi)
}

/// Certified `sqrt(3)^n`: exact when `n` is even, interval otherwise.
pub fn sqrt3_pow(n: u64, digits: usize) -> RatInterval {
    let whole = pow_rat(&Rat::from_integer(Int::from(3)), n / 2);
    if n.is_multiple_of(2) {
        RatInterval::point(whole)
    } else {
        sqrt_interval(&Rat::from_integer(Int::from(3)), digits).scale(&whole)
    }
}

/// Certified `base^(k/2)` for a positive rational base: `sqrt(base^k)`.
pub fn half_pow(base: &Rat, k: u64, digits: usize) -> RatInterval {
    let whole = pow_rat(base, k / 2);
    if k.is_multiple_of(2) {
        RatInterval::point(whole)
    } else {
        sqrt_interval(base, digits).scale(&whole)
    }
}
