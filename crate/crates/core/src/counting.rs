//! Closed-form counts and lower bounds for prime patterns, all evaluated in
//! exact integer/rational arithmetic.
//!
//! Every function here has a brute-force counterpart in [`crate::oracle`];
//! the differential pairing lives in the verification paths and the
//! acceptance suite. Two-ball counts are built from the spacing-set count
//! `c(t, n)`; the passing bounds additionally consume oracle-enumerated
//! pattern sets.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::oracle::{multiplex_cycles, normal_cycles, OracleQuery, Variant};
use crate::partitions::{c, distinct_partitions, max_parts};
use crate::rational::{binomial, factorial, pow_int, pow_rat, rat, ratio, Int, Rat};
use crate::states::{CardLabelled, Cycle};
use crate::Result;

/// Number of 2-ball normal prime patterns of period `n`: the spacing-set
/// counts summed over every possible number of crossings.
pub fn count_normal_prime_2(n: u64) -> Int {
    (1..=max_parts(n).max(1)).map(|t| c(t, n as i64)).sum()
}

/// Number of 2-ball strict multiplex prime patterns of period `n`: every
/// shorter normal pattern accepts one stacked-pair insertion per crossing,
/// plus the single pattern that rides the stacked chain all the way down.
pub fn count_strict_multiplex_2(n: u64) -> Int {
    let mut acc = Int::one();
    for m in 1..n {
        for t in 1..=max_parts(m).max(1) {
            acc += Int::from(t) * c(t, m as i64);
        }
    }
    acc
}

/// Number of 2-ball multiplex prime patterns of period `n` (hand capacity 2).
pub fn count_multiplex_prime_2(n: u64) -> Int {
    count_normal_prime_2(n) + count_strict_multiplex_2(n)
}

/// Number of 2-ball colored prime patterns of period `n`, counting colorings
/// up to a simultaneous color swap. Splits into two spacing collections of
/// equal crossing count; the even case corrects for midpoint symmetry.
pub fn count_colored_prime_2(n: u64) -> Int {
    let mut acc = Int::zero();
    if n % 2 == 1 {
        for m in 1..=(n - 1) / 2 {
            for t in 1..=max_parts(m).max(1) {
                acc += Int::from(t) * c(t, m as i64) * c(t, (n - m) as i64);
            }
        }
    } else {
        for m in 1..n / 2 {
            for t in 1..=max_parts(m).max(1) {
                acc += Int::from(t) * c(t, m as i64) * c(t, (n - m) as i64);
            }
        }
        let half = (n / 2) as i64;
        for t in 1..=max_parts(n / 2).max(1) {
            let ct = c(t, half);
            let pairs = &ct * (&ct - Int::one()) / Int::from(2);
            acc += Int::from(t) * pairs + Int::from(t.div_ceil(2)) * ct;
        }
    }
    acc
}

/// Number of 1-ball prime passing patterns of period `n` with `k` hands:
/// choose the active hands, split the period over them, and order them
/// around the cycle.
pub fn count_passing_prime_1(n: u64, k: u64) -> Int {
    let mut acc = Int::zero();
    for h in 1..=k.min(n) {
        acc += binomial(k, h) * binomial(n - 1, h - 1) * factorial(h - 1);
    }
    acc
}

/// Number of 2-ball normal prime patterns of period `n` through the ground
/// state `<1,1>`.
pub fn count_base_state_2(n: u64) -> Int {
    let mut acc = Int::zero();
    for t in 1..=n as usize {
        acc += Int::from(t) * c(t, n as i64 - t as i64);
        acc += Int::from(t) * c(t, n as i64 - t as i64 - 1);
    }
    acc
}

/// Lower bound on the number of `b`-ball prime patterns of period `n`,
/// summed over distinct-part partitions. Exact rational: the value need not
/// be integral.
pub fn lower_bound_normal_b(b: u64, n: u64) -> Rat {
    assert!(b >= 2, "the bound needs at least two balls");
    let mut acc = Rat::zero();
    for t in 1..=max_parts(n).max(1) {
        for partition in distinct_partitions(n, t) {
            let mut term = Rat::from_integer(pow_int(&Int::from(b - 1), n))
                / Rat::from_integer(binomial(t as u64 + b - 1, b));
            for (i, &p) in partition.parts().iter().enumerate() {
                let i = i as i64 + 1;
                term *= pow_rat(&ratio(i + b as i64 - 1, i + b as i64 - 2), p);
            }
            acc += term;
        }
    }
    acc / rat(b as i64)
}

/// Number of throw cards (cards with a free hand choice) over one period.
pub fn phi<S: CardLabelled>(cycle: &Cycle<S>) -> Result<u64> {
    Ok(cycle.cards()?.iter().filter(|card| card.is_throw()).count() as u64)
}

/// Exact lower bound on 2-ball prime passing patterns of period `n` with `k`
/// hands: every normal pattern contributes a hand choice per throw card, and
/// every strict multiplex pattern one fewer choice at its merging throw.
/// Consumes oracle-enumerated pattern sets, so `n` must stay at desk scale.
pub fn lower_bound_passing_2_exact(n: usize, k: u64) -> Result<Int> {
    let normal = normal_cycles(&OracleQuery::new(Variant::Normal { balls: 2 }, n).listing(true))?;
    let multiplex = multiplex_cycles(
        &OracleQuery::new(
            Variant::Multiplex {
                balls: 2,
                capacity: 2,
            },
            n,
        )
        .listing(true),
    )?;
    let k_int = Int::from(k);
    let mut acc = Int::zero();
    for cycle in normal.cycles.as_deref().unwrap_or_default() {
        acc += pow_int(&k_int, phi(cycle)?);
    }
    for cycle in multiplex.cycles.as_deref().unwrap_or_default() {
        let strict = cycle.states().iter().any(|s| !s.is_simple());
        if strict {
            acc += pow_int(&k_int, phi(cycle)?) * (&k_int - Int::one());
        }
    }
    Ok(acc)
}

/// Closed-form weakening of the exact passing bound, exactly as displayed:
/// `sum_{m<n} sum_t (t c_t(m) + 1) k^t (k-1) + sum_t c_t(n) k^t`, with `t`
/// ranging over the crossing counts that admit a partition of `m`.
pub fn lower_bound_passing_2_closed(n: u64, k: u64) -> Int {
    let k_int = Int::from(k);
    let mut acc = Int::zero();
    for m in 1..n {
        for t in 1..=max_parts(m).max(1) {
            acc += (Int::from(t) * c(t, m as i64) + Int::one())
                * pow_int(&k_int, t as u64)
                * (&k_int - Int::one());
        }
    }
    for t in 1..=max_parts(n).max(1) {
        acc += c(t, n as i64) * pow_int(&k_int, t as u64);
    }
    acc
}

/// Conservative reading of the closed passing bound with the `+1` applied
/// once (mirroring the single chain pattern), kept for comparison against
/// the displayed form.
pub fn lower_bound_passing_2_closed_conservative(n: u64, k: u64) -> Int {
    let k_int = Int::from(k);
    let mut inner = Int::one();
    for m in 1..n {
        for t in 1..=max_parts(m).max(1) {
            inner += Int::from(t) * c(t, m as i64) * pow_int(&k_int, t as u64);
        }
    }
    let mut acc = inner * (&k_int - Int::one());
    for t in 1..=max_parts(n).max(1) {
        acc += c(t, n as i64) * pow_int(&k_int, t as u64);
    }
    acc
}

/// Sandwich bounds for the even-period colored count: half the full
/// crossing convolution from below, the half-range convolution from above.
pub fn colored_even_bounds(n: u64) -> (Rat, Int) {
    assert!(n.is_multiple_of(2));
    let mut full = Int::zero();
    for m in 1..n {
        for t in 1..=max_parts(m.min(n - m)).max(1) {
            full += Int::from(t) * c(t, m as i64) * c(t, (n - m) as i64);
        }
    }
    let mut upper = Int::zero();
    for m in 1..=n / 2 {
        for t in 1..=max_parts(m).max(1) {
            upper += Int::from(t) * c(t, m as i64) * c(t, (n - m) as i64);
        }
    }
    (Rat::from_integer(full) / rat(2), upper)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// One formula/oracle comparison, serialised as a single JSON object.
#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub variant: String,
    pub params: serde_json::Value,
    pub formula: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

impl CountReport {
    pub fn new(variant: &str, params: serde_json::Value, formula: impl ToString) -> Self {
        Self {
            variant: variant.to_string(),
            params,
            formula: formula.to_string(),
            oracle: None,
            agree: None,
        }
    }

    /// Attaches the oracle value; `agree` is set only here, so it is never
    /// present without both sides.
    pub fn with_oracle(mut self, oracle: impl ToString, agree: bool) -> Self {
        self.oracle = Some(oracle.to_string());
        self.agree = Some(agree);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}
