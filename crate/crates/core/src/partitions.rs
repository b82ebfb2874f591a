//! Distinct-part partitions, the spacing-set count `c(t, n)`, and the
//! bijection between spacing collections and 2-ball prime patterns.
//!
//! A spacing collection is a cyclic tuple of pairwise-disjoint finite sets
//! `(S_1, ..., S_t)` whose maxima sum to `n`. Tracking the gap between the
//! two airborne balls of a 2-ball pattern beat by beat yields exactly such a
//! collection (one set per crossing throw), and the correspondence is a
//! bijection: `c(t, n)` counts both sides.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::rational::{expect_integer, pow_rat, ratio, Int, Rat};
use crate::states::{canonical_rotation, Card, Cycle, JugglingState, NormalState};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Distinct partitions
// ---------------------------------------------------------------------------

/// A partition into strictly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistinctPartition {
    parts: Vec<u64>,
}

impl DistinctPartition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() || parts.windows(2).any(|w| w[0] <= w[1]) || parts.contains(&0) {
            return Err(Error::Invalid(
                "parts must be strictly decreasing and positive".into(),
            ));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of the parts.
    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }
}

impl std::fmt::Display for DistinctPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` into exactly `t` distinct parts, ordered by
/// descending first part (then recursively). Empty when none exist, in
/// particular whenever `n < t(t+1)/2`.
pub fn distinct_partitions(n: u64, t: usize) -> Vec<DistinctPartition> {
    fn go(n: u64, t: u64, below: u64, acc: &mut Vec<u64>, out: &mut Vec<DistinctPartition>) {
        if t == 0 {
            if n == 0 {
                out.push(DistinctPartition { parts: acc.clone() });
            }
            return;
        }
        // Remaining parts are t distinct values < below summing to n.
        let min_rest = t * (t - 1) / 2;
        let hi = n.saturating_sub(min_rest).min(below.saturating_sub(1));
        let lo = n.div_ceil(t).max(1);
        if lo > hi {
            return;
        }
        for p in (lo..=hi).rev() {
            acc.push(p);
            go(n - p, t - 1, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if t >= 1 {
        go(n, t as u64, u64::MAX, &mut Vec::new(), &mut out);
    }
    out
}

/// Largest `t` for which a partition of `n` into `t` distinct parts exists.
pub fn max_parts(n: u64) -> usize {
    let mut t = 0u64;
    while (t + 1) * (t + 2) / 2 <= n {
        t += 1;
    }
    t as usize
}

// ---------------------------------------------------------------------------
// c(t, n)
// ---------------------------------------------------------------------------

fn c_memo() -> &'static Mutex<HashMap<(usize, i64), Int>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, i64), Int>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Number of spacing collections with `t` sets and period `n`, evaluated
/// exactly: for each partition `p_1 > ... > p_t` of `n` the term is
/// `(1 / (t (t+1))) * prod_i ((i+1)/i)^{p_i}`, and the accumulated rational
/// is asserted integral before returning. Zero for `n <= 0` and whenever no
/// partition exists.
pub fn c(t: usize, n: i64) -> Int {
    assert!(t >= 1, "c(t, n) needs t >= 1");
    if n <= 0 {
        return Int::zero();
    }
    if let Some(hit) = c_memo().lock().unwrap().get(&(t, n)) {
        return hit.clone();
    }
    let value = c_uncached(t, n as u64).expect("c(t, n) must accumulate to an integer");
    c_memo().lock().unwrap().insert((t, n), value.clone());
    value
}

fn c_uncached(t: usize, n: u64) -> Result<Int> {
    let mut acc = Rat::zero();
    for partition in distinct_partitions(n, t) {
        let mut term = ratio(1, (t as i64) * (t as i64 + 1));
        for (i, &p) in partition.parts().iter().enumerate() {
            let base = ratio(i as i64 + 2, i as i64 + 1);
            term *= pow_rat(&base, p);
        }
        acc += term;
    }
    expect_integer(&acc)
}

/// Snapshot of the memo table, for persistence.
pub fn memo_entries() -> Vec<(usize, i64, Int)> {
    c_memo()
        .lock()
        .unwrap()
        .iter()
        .map(|(&(t, n), v)| (t, n, v.clone()))
        .collect()
}

/// Preloads memo entries (values are deterministic, so collisions are
/// harmless).
pub fn memo_preload(entries: impl IntoIterator<Item = (usize, i64, Int)>) {
    let mut memo = c_memo().lock().unwrap();
    for (t, n, v) in entries {
        memo.insert((t, n), v);
    }
}

// ---------------------------------------------------------------------------
// Spacing collections
// ---------------------------------------------------------------------------

/// Cyclic tuple of pairwise-disjoint nonempty sets of positive integers,
/// stored in its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpacingCollection {
    sets: Vec<Vec<u64>>,
}

impl SpacingCollection {
    pub fn new(sets: Vec<Vec<u64>>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidSpacings("no sets".into()));
        }
        let mut normalised = Vec::with_capacity(sets.len());
        for set in sets {
            let mut s = set;
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::InvalidSpacings("empty set".into()));
            }
            if s[0] == 0 {
                return Err(Error::InvalidSpacings("spacings must be positive".into()));
            }
            normalised.push(s);
        }
        let mut seen = std::collections::HashSet::new();
        for set in &normalised {
            for &v in set {
                if !seen.insert(v) {
                    return Err(Error::InvalidSpacings(format!("value {v} appears twice")));
                }
            }
        }
        Ok(Self {
            sets: canonical_rotation(normalised),
        })
    }

    pub fn sets(&self) -> &[Vec<u64>] {
        &self.sets
    }

    /// Number of sets.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of the set maxima: the period of the associated pattern.
    pub fn period(&self) -> u64 {
        self.sets.iter().map(|s| *s.last().unwrap()).sum()
    }
}

impl std::fmt::Display for SpacingCollection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sets: Vec<String> = self
            .sets
            .iter()
            .map(|s| {
                let vals: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", vals.join(","))
            })
            .collect();
        write!(f, "({})", sets.join(","))
    }
}

/// All rotation-canonical spacing collections with `t` sets and period `n`;
/// the cardinality equals `c(t, n)`.
pub fn enumerate_spacing_collections(t: usize, n: u64) -> Vec<SpacingCollection> {
    assert!(t >= 1 && n >= 1);
    let mut out = Vec::new();
    for partition in distinct_partitions(n, t) {
        let parts = partition.parts();
        // Arrange the maxima around the circle; fixing the largest in the
        // first slot enumerates each rotation class once.
        let mut rest: Vec<u64> = parts[1..].to_vec();
        rest.sort_unstable();
        permute(&mut rest.clone(), 0, &mut |arrangement| {
            let mut maxes = Vec::with_capacity(t);
            maxes.push(parts[0]);
            maxes.extend_from_slice(arrangement);
            // Values below the global maximum that are not maxima can join
            // any set with a larger maximum, or stay unused.
            let free: Vec<u64> = (1..parts[0]).filter(|v| !parts.contains(v)).collect();
            let mut assignment = vec![usize::MAX; free.len()];
            assign_free(&maxes, &free, 0, &mut assignment, &mut |assignment| {
                let mut sets: Vec<Vec<u64>> = maxes.iter().map(|&m| vec![m]).collect();
                for (vi, &slot) in assignment.iter().enumerate() {
                    if slot != usize::MAX {
                        sets[slot].push(free[vi]);
                    }
                }
                out.push(SpacingCollection::new(sets).expect("constructed collection is valid"));
            });
        });
    }
    out.sort();
    out
}

fn permute(values: &mut Vec<u64>, from: usize, emit: &mut impl FnMut(&[u64])) {
    if from == values.len() {
        emit(values);
        return;
    }
    for i in from..values.len() {
        values.swap(from, i);
        permute(values, from + 1, emit);
        values.swap(from, i);
    }
}

fn assign_free(
    maxes: &[u64],
    free: &[u64],
    idx: usize,
    assignment: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if idx == free.len() {
        emit(assignment);
        return;
    }
    assignment[idx] = usize::MAX;
    assign_free(maxes, free, idx + 1, assignment, emit);
    for (slot, &m) in maxes.iter().enumerate() {
        if m > free[idx] {
            assignment[idx] = slot;
            assign_free(maxes, free, idx + 1, assignment, emit);
        }
    }
    assignment[idx] = usize::MAX;
}

// ---------------------------------------------------------------------------
// Bijection with 2-ball normal prime cycles
// ---------------------------------------------------------------------------

/// Builds the 2-ball prime cycle of a spacing collection.
///
/// Each set drives one crossing throw: the throw opens the set's maximal gap,
/// the gap then steps down through the set's remaining elements (one inner
/// throw each), and the next crossing starts once the gap has reached the
/// set's minimum. The walk closes after `sum of maxima` beats.
pub fn pattern_of_spacing_collection(collection: &SpacingCollection) -> Result<Cycle<NormalState>> {
    let sets = collection.sets();
    let t = sets.len();
    let mut states: Vec<(u64, u64)> = Vec::with_capacity(collection.period() as usize);
    for i in 0..t {
        let prev_min = sets[(i + t - 1) % t][0];
        let desc: Vec<u64> = sets[i].iter().rev().copied().collect();
        // Crossing throw: the freshly thrown ball opens the maximal gap.
        states.push((prev_min, prev_min + desc[0]));
        for j in 0..desc.len() {
            let s = desc[j];
            let bottom = if j == 0 { prev_min } else { desc[j - 1] - s };
            for y in (1..bottom).rev() {
                states.push((y, y + s));
            }
            if j + 1 < desc.len() {
                // Inner throw: the landing ball is re-thrown under the other
                // one, narrowing the gap to the next element.
                states.push((s - desc[j + 1], s));
            }
        }
    }
    let states = states
        .into_iter()
        .map(|(a, b)| NormalState::from_positions(&[a as usize, b as usize]))
        .collect::<Result<Vec<_>>>()?;
    Cycle::new(states)
}

/// Reads the spacing collection of a 2-ball normal prime cycle.
pub fn spacings_of_pattern(cycle: &Cycle<NormalState>) -> Result<SpacingCollection> {
    if cycle.states().iter().any(|s| s.ball_count() != 2) {
        return Err(Error::Invalid("spacings are defined for two balls".into()));
    }
    if !cycle.is_prime() {
        return Err(Error::Invalid(
            "spacings are defined for prime cycles".into(),
        ));
    }
    let n = cycle.period();
    let cards = cycle.cards()?;
    let crossings: Vec<usize> = (0..n).filter(|&i| cards[i] == Card::C(2)).collect();
    if crossings.is_empty() {
        return Err(Error::Invalid("a 2-ball prime cycle has a crossing".into()));
    }
    let gap = |idx: usize| {
        let p = cycle.states()[idx % n].positions();
        (p[1] - p[0]) as u64
    };
    let t = crossings.len();
    let mut sets = Vec::with_capacity(t);
    for i in 0..t {
        let from = crossings[i];
        let len = (crossings[(i + 1) % t] + n - from - 1) % n + 1;
        let mut set = Vec::new();
        for step in 0..len {
            set.push(gap(from + step + 1));
        }
        sets.push(set);
    }
    SpacingCollection::new(sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(parts: &[u64]) -> DistinctPartition {
        DistinctPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_listings() {
        assert_eq!(distinct_partitions(3, 2), vec![p(&[2, 1])]);
        assert_eq!(distinct_partitions(6, 3), vec![p(&[3, 2, 1])]);
        assert_eq!(
            distinct_partitions(7, 2),
            vec![p(&[6, 1]), p(&[5, 2]), p(&[4, 3])]
        );
        assert!(distinct_partitions(2, 2).is_empty());
        assert_eq!(distinct_partitions(0, 1), Vec::<DistinctPartition>::new());
    }

    #[test]
    fn c_small_values() {
        assert_eq!(c(1, 3), Int::from(4));
        assert_eq!(c(2, 3), Int::one());
        assert_eq!(c(1, 1), Int::one());
        assert_eq!(c(2, 5), Int::from(7));
        // Sum over t at n = 5.
        let total: Int = (1..=max_parts(5)).map(|t| c(t, 5)).sum();
        assert_eq!(total, Int::from(23));
    }

    #[test]
    fn c_boundary_conventions() {
        assert_eq!(c(1, 0), Int::zero());
        assert_eq!(c(3, -2), Int::zero());
        assert_eq!(c(3, 5), Int::zero()); // 5 < 6 = 3*4/2
    }

    #[test]
    fn c_powers_of_two_for_single_sets() {
        for n in 1..=12i64 {
            assert_eq!(c(1, n), Int::from(1u64 << (n - 1)));
        }
    }

    #[test]
    fn spacing_enumeration_examples() {
        let one_two = enumerate_spacing_collections(1, 2);
        assert_eq!(
            one_two,
            vec![
                SpacingCollection::new(vec![vec![1, 2]]).unwrap(),
                SpacingCollection::new(vec![vec![2]]).unwrap(),
            ]
        );
        assert_eq!(
            enumerate_spacing_collections(2, 3),
            vec![SpacingCollection::new(vec![vec![1], vec![2]]).unwrap()]
        );
        assert!(enumerate_spacing_collections(2, 2).is_empty());
    }

    #[test]
    fn spacing_enumeration_matches_c() {
        for t in 1..=4usize {
            for n in 1..=12u64 {
                let listed = enumerate_spacing_collections(t, n).len();
                assert_eq!(
                    Int::from(listed),
                    c(t, n as i64),
                    "mismatch at t={t}, n={n}"
                );
            }
        }
    }

    #[test]
    fn collection_validation() {
        assert!(SpacingCollection::new(vec![vec![1], vec![1, 2]]).is_err());
        assert!(SpacingCollection::new(vec![vec![]]).is_err());
        assert!(SpacingCollection::new(vec![]).is_err());
        // Canonical rotation is applied and stable.
        let a = SpacingCollection::new(vec![vec![2], vec![1]]).unwrap();
        let b = SpacingCollection::new(vec![vec![1], vec![2]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn singleton_collection_gives_the_self_loop() {
        let x = SpacingCollection::new(vec![vec![1]]).unwrap();
        let cycle = pattern_of_spacing_collection(&x).unwrap();
        assert_eq!(cycle.period(), 1);
        assert_eq!(cycle.states()[0], NormalState::ground(2));
    }

    #[test]
    fn two_set_example_has_two_crossings() {
        let x = SpacingCollection::new(vec![vec![2], vec![1]]).unwrap();
        let cycle = pattern_of_spacing_collection(&x).unwrap();
        assert_eq!(cycle.period(), 3);
        assert!(cycle.contains(&NormalState::ground(2)));
        let crossings = cycle
            .cards()
            .unwrap()
            .iter()
            .filter(|&&c| c == Card::C(2))
            .count();
        assert_eq!(crossings, 2);
    }

    #[test]
    fn bijection_round_trip() {
        for t in 1..=3usize {
            for n in 1..=8u64 {
                for x in enumerate_spacing_collections(t, n) {
                    let cycle = pattern_of_spacing_collection(&x).unwrap();
                    assert_eq!(cycle.period() as u64, x.period());
                    assert!(cycle.is_prime());
                    let back = spacings_of_pattern(&cycle).unwrap();
                    assert_eq!(back, x, "round trip failed for {x}");
                }
            }
        }
    }
}
