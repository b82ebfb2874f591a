//! The infinite state graph: abbreviated states, the two transition rules,
//! the flip-reverse involution, and windowed walk counting.
//!
//! With unboundedly many balls a state is an infinite binary string of the
//! form `1^inf 0 bits 0^inf`; only `bits` (empty or ending in 1) is stored.
//! A transition replaces one 0 of the expanded string with a 1: flipping a 0
//! inside `bits` or in the zero tail is rule 1, flipping the padding 0 in
//! front of `bits` is rule 2 (which reads as "delete up to and including the
//! first 0" on the abbreviated form). Out-degree is infinite through the
//! tail flips, so all enumeration is windowed by a maximum abbreviated
//! length; the flip-reverse involution preserves length, which makes the
//! windows closed under it and the walk-count comparisons exact.

use std::fmt;

use crate::states::NormalState;
use crate::{Error, Result};

/// An abbreviated state of the infinite graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbbrevState {
    bits: Vec<u8>,
}

impl AbbrevState {
    /// The ground state (all balls in the sea).
    pub fn empty() -> Self {
        Self { bits: Vec::new() }
    }

    /// Builds a state, trimming trailing zeros into the implicit tail.
    pub fn new(mut bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Parse("abbreviated states are binary".into()));
        }
        while bits.last() == Some(&0) {
            bits.pop();
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of explicit scheduled balls.
    pub fn popcount(&self) -> u32 {
        self.bits.iter().map(|&b| b as u32).sum()
    }

    /// Flip-reverse: expand, flip every digit, reverse, re-abbreviate.
    /// An involution that preserves the abbreviated length.
    pub fn fr(&self) -> Self {
        if self.bits.is_empty() {
            return Self::empty();
        }
        // The final 1 flips into the new padding 0; the rest flips and
        // reverses in place.
        let mut bits: Vec<u8> = self.bits[..self.bits.len() - 1]
            .iter()
            .rev()
            .map(|&b| 1 - b)
            .collect();
        bits.push(1);
        Self { bits }
    }

    /// Rule 2: delete up to and including the first 0 (equivalently, flip
    /// the padding 0 of the expanded form). All-ones states collapse to the
    /// ground state.
    pub fn absorb(&self) -> Self {
        match self.bits.iter().position(|&b| b == 0) {
            Some(i) => Self {
                bits: self.bits[i + 1..].to_vec(),
            },
            None => Self::empty(),
        }
    }

    /// All successors whose abbreviated length stays within `max_len`:
    /// every internal rule-1 flip, every tail rule-1 flip that fits, and the
    /// rule-2 absorption.
    pub fn successors(&self, max_len: usize) -> Result<Vec<AbbrevState>> {
        if max_len < self.len() {
            return Err(Error::CapTooSmall {
                cap: max_len,
                span: self.len(),
            });
        }
        let mut out = vec![self.absorb()];
        for (i, &b) in self.bits.iter().enumerate() {
            if b == 0 {
                let mut bits = self.bits.clone();
                bits[i] = 1;
                out.push(Self { bits });
            }
        }
        for j in 1..=max_len.saturating_sub(self.len()) {
            let mut bits = self.bits.clone();
            bits.extend(std::iter::repeat_n(0, j - 1));
            bits.push(1);
            out.push(Self { bits });
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// True when `from -> to` flips exactly one 0 of the expanded form to 1.
    pub fn is_valid_transition(from: &AbbrevState, to: &AbbrevState) -> bool {
        if *to == from.absorb() {
            return true;
        }
        if to.len() < from.len() || to.popcount() != from.popcount() + 1 {
            return false;
        }
        // Rule 1: align on the padding zero and demand a single 0 -> 1 flip.
        let mut flips = 0usize;
        for i in 0..to.len() {
            let a = from.bits.get(i).copied().unwrap_or(0);
            let b = to.bits[i];
            match (a, b) {
                (0, 1) => flips += 1,
                (x, y) if x == y => {}
                _ => return false,
            }
        }
        flips == 1
    }

    /// Realizes the state in the `b`-ball graph: prepend the missing balls
    /// and the padding zero, then read as a landing vector.
    pub fn realize(&self, balls: u32) -> Result<NormalState> {
        let ones = self.popcount();
        if ones > balls {
            return Err(Error::InsufficientBalls { ones, balls });
        }
        let mut entries = vec![1u8; (balls - ones) as usize];
        entries.push(0);
        entries.extend_from_slice(&self.bits);
        NormalState::from_entries(entries)
    }
}

impl fmt::Display for AbbrevState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return write!(f, "ε");
        }
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for AbbrevState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed == "ε" || trimmed.is_empty() {
            return Ok(Self::empty());
        }
        let bits = trimmed
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("bad digit {c:?} in state {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bits)
    }
}

/// All abbreviated states of length at most `max_len` (the empty state plus
/// every binary string ending in 1), in ascending order.
pub fn enumerate_states(max_len: usize) -> Vec<AbbrevState> {
    let mut out = vec![AbbrevState::empty()];
    for len in 1..=max_len {
        for mask in 0..(1u64 << (len - 1)) {
            let mut bits: Vec<u8> = (0..len - 1).map(|i| ((mask >> i) & 1) as u8).collect();
            bits.push(1);
            out.push(AbbrevState { bits });
        }
    }
    out.sort();
    out
}

/// Walk counts through a state in the windowed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkCounts {
    /// Walks of the given length visiting the state at least once.
    pub through: u64,
    /// Visits summed with multiplicity (a walk visiting twice counts twice).
    pub with_multiplicity: u64,
}

/// Counts directed walks of `length` edges in the graph windowed at
/// `max_len` that pass through `state`.
pub fn count_walks_through(
    state: &AbbrevState,
    length: usize,
    max_len: usize,
) -> Result<WalkCounts> {
    if state.len() > max_len {
        return Err(Error::CapTooSmall {
            cap: max_len,
            span: state.len(),
        });
    }
    let states = enumerate_states(max_len);
    let index = states
        .binary_search(state)
        .expect("state is inside the window");
    let succ: Vec<Vec<usize>> = states
        .iter()
        .map(|s| {
            s.successors(max_len)
                .expect("window admits the state")
                .iter()
                .map(|t| states.binary_search(t).expect("successor inside window"))
                .collect()
        })
        .collect();

    // walks_from[i][v]: number of i-edge walks starting at v.
    let forward = |skip: Option<usize>| -> Vec<Vec<u64>> {
        let mut rows = vec![vec![1u64; states.len()]];
        if let Some(skip) = skip {
            rows[0][skip] = 0;
        }
        for _ in 0..length {
            let prev = rows.last().unwrap();
            let mut next = vec![0u64; states.len()];
            for v in 0..states.len() {
                if Some(v) == skip {
                    continue;
                }
                next[v] = succ[v]
                    .iter()
                    .filter(|&&w| Some(w) != skip)
                    .map(|&w| prev[w])
                    .sum();
            }
            rows.push(next);
        }
        rows
    };

    let from_all = forward(None);
    let from_avoiding = forward(Some(index));
    let total: u64 = from_all[length].iter().sum();
    let avoiding: u64 = from_avoiding[length].iter().sum();

    // walks_to[i][v]: number of i-edge walks ending at v.
    let mut to_rows = vec![vec![1u64; states.len()]];
    for _ in 0..length {
        let prev = to_rows.last().unwrap();
        let mut next = vec![0u64; states.len()];
        for v in 0..states.len() {
            for &w in &succ[v] {
                next[w] += prev[v];
            }
        }
        to_rows.push(next);
    }
    let with_multiplicity = (0..=length)
        .map(|i| to_rows[i][index] * from_all[length - i][index])
        .sum();

    Ok(WalkCounts {
        through: total - avoiding,
        with_multiplicity,
    })
}
