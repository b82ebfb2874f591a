//! State representations and transitions for the four juggling variants.
//!
//! A state schedules future ball landings. Entry `i` (1-based) of a sequence
//! state counts the balls landing in `i` beats; passing states use a
//! hands-by-beats grid instead. All states are stored canonically with
//! trailing zeros trimmed, so equality and hashing are structural.
//!
//! One beat advances a state by shifting every scheduled landing one slot
//! down; balls that reach slot zero land and are re-thrown to any free slot.
//! `alpha -> beta` is a legal transition exactly when `alpha[i+1] <= beta[i]`
//! for all `i` and both states carry the same number of balls. The state
//! graph is infinite, so every successor generator takes an explicit height
//! cap and returns only successors whose canonical length fits under it.

use std::fmt;

use crate::{Error, Result};

/// Compact digit rendering for entry-vector states; falls back to the
/// bracketed form when an entry needs more than one digit.
macro_rules! fmt_entries_ascii {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.entries.is_empty() {
                return write!(f, "⟨⟩");
            }
            if self.entries.iter().all(|&e| e <= 9) {
                for e in &self.entries {
                    write!(f, "{e}")?;
                }
                Ok(())
            } else {
                let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
                write!(f, "⟨{}⟩", parts.join(","))
            }
        }
    };
}

/// Common surface of the four state representations.
pub trait JugglingState:
    Clone + Eq + Ord + std::hash::Hash + fmt::Display + Send + Sync + Sized
{
    /// Number of balls scheduled by this state.
    fn ball_count(&self) -> u32;

    /// Canonical length (beats until the last scheduled landing).
    fn span(&self) -> usize;

    /// All legal successors whose canonical length is at most `cap`,
    /// in ascending state order.
    fn successors(&self, cap: usize) -> Result<Vec<Self>>;

    /// Checks the landing condition and ball-count invariant for a candidate
    /// transition, reporting the first violated condition index.
    fn check_transition(from: &Self, to: &Self) -> Result<()>;

    fn is_valid_transition(from: &Self, to: &Self) -> bool {
        Self::check_transition(from, to).is_ok()
    }
}

/// Per-beat transition label.
///
/// `C(0)` marks a beat without a landing; `C(i)` a landed ball re-thrown to
/// relative height `i`. The `D` labels cover the two-ball simultaneous
/// events of the multiplex variant: `D0` shifts a stacked pair, `Da` merges
/// the landing ball onto the other one, and `Db`/`Dc` split a landed pair to
/// distinct or equal heights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Card {
    C(u8),
    D0,
    Da,
    Db,
    Dc,
}

impl Card {
    /// True for the throw cards `C(i >= 1)`, `Da` and `Db`; `C0`, `D0` and
    /// `Dc` move no ball to a new hand.
    pub fn is_throw(self) -> bool {
        match self {
            Card::C(i) => i >= 1,
            Card::Da | Card::Db => true,
            Card::D0 | Card::Dc => false,
        }
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Card::C(i) => write!(f, "C{i}"),
            Card::D0 => write!(f, "D0"),
            Card::Da => write!(f, "Da"),
            Card::Db => write!(f, "Db"),
            Card::Dc => write!(f, "Dc"),
        }
    }
}

impl std::str::FromStr for Card {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D0" => Ok(Card::D0),
            "Da" => Ok(Card::Da),
            "Db" => Ok(Card::Db),
            "Dc" => Ok(Card::Dc),
            _ => {
                let digits = s
                    .strip_prefix('C')
                    .ok_or_else(|| Error::Parse(format!("unknown card {s:?}")))?;
                let i: u8 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown card {s:?}")))?;
                Ok(Card::C(i))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Normal states
// ---------------------------------------------------------------------------

/// Binary landing vector: one ball per slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalState {
    entries: Vec<u8>,
}

impl NormalState {
    /// Builds a state from raw entries, trimming trailing zeros.
    pub fn from_entries(mut entries: Vec<u8>) -> Result<Self> {
        if entries.iter().any(|&e| e > 1) {
            return Err(Error::Parse("normal state entries must be bits".into()));
        }
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Ok(Self { entries })
    }

    /// Builds a state from 1-based landing positions (all distinct).
    pub fn from_positions(positions: &[usize]) -> Result<Self> {
        let mut sorted = positions.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != positions.len() || sorted.first() == Some(&0) {
            return Err(Error::Parse(
                "normal state positions must be distinct and positive".into(),
            ));
        }
        let mut entries = vec![0u8; sorted.last().copied().unwrap_or(0)];
        for p in sorted {
            entries[p - 1] = 1;
        }
        Ok(Self { entries })
    }

    /// The ground state `<1,...,1>` with `b` balls.
    pub fn ground(b: u32) -> Self {
        Self {
            entries: vec![1; b as usize],
        }
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// 1-based landing positions in ascending order.
    pub fn positions(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Embeds a `b`-ball state as a `b+1`-ball state by scheduling one more
    /// ball for the very next beat.
    pub fn lift(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len() + 1);
        entries.push(1);
        entries.extend_from_slice(&self.entries);
        Self { entries }
    }
}

impl PartialOrd for NormalState {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NormalState {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.positions().cmp(&other.positions())
    }
}

impl fmt::Display for NormalState {
    fmt_entries_ascii!();
}

impl JugglingState for NormalState {
    fn ball_count(&self) -> u32 {
        self.entries.iter().map(|&e| e as u32).sum()
    }

    fn span(&self) -> usize {
        self.entries.len()
    }

    fn successors(&self, cap: usize) -> Result<Vec<Self>> {
        check_cap(cap, self.span())?;
        let positions = self.positions();
        if positions.is_empty() {
            // Zero balls: the empty state loops on itself.
            return Ok(vec![self.clone()]);
        }
        if positions[0] > 1 {
            let shifted: Vec<usize> = positions.iter().map(|&p| p - 1).collect();
            return Ok(vec![Self::from_positions(&shifted)?]);
        }
        let rest: Vec<usize> = positions[1..].iter().map(|&p| p - 1).collect();
        let mut out = Vec::with_capacity(cap - rest.len());
        for h in 1..=cap {
            if !rest.contains(&h) {
                let mut next = rest.clone();
                next.push(h);
                out.push(Self::from_positions(&next)?);
            }
        }
        out.sort();
        Ok(out)
    }

    fn check_transition(from: &Self, to: &Self) -> Result<()> {
        check_sequence_transition(
            &from.entries,
            &to.entries,
            from.ball_count(),
            to.ball_count(),
        )
    }
}

// ---------------------------------------------------------------------------
// Multiplex states
// ---------------------------------------------------------------------------

/// Landing vector with up to `capacity` balls per slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplexState {
    entries: Vec<u8>,
    capacity: u8,
}

impl MultiplexState {
    pub fn from_entries(mut entries: Vec<u8>, capacity: u8) -> Result<Self> {
        if entries.iter().any(|&e| e > capacity) {
            return Err(Error::Parse(format!(
                "multiplex entry exceeds hand capacity {capacity}"
            )));
        }
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Ok(Self { entries, capacity })
    }

    /// Builds a state from a multiset of 1-based positions.
    pub fn from_positions(positions: &[usize], capacity: u8) -> Result<Self> {
        if positions.contains(&0) {
            return Err(Error::Parse("positions must be positive".into()));
        }
        let mut entries = vec![0u8; positions.iter().copied().max().unwrap_or(0)];
        for &p in positions {
            entries[p - 1] += 1;
        }
        Self::from_entries(entries, capacity)
    }

    /// The two-ball coordinate state: single balls at `i` and `j` when
    /// `i < j`, a stacked pair at `i` when `i == j`.
    pub fn sigma(i: usize, j: usize) -> Self {
        assert!(1 <= i && i <= j, "coordinates must satisfy 1 <= i <= j");
        Self::from_positions(&[i, j], 2).expect("two-ball coordinate state")
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn capacity(&self) -> u8 {
        self.capacity
    }

    /// Positions with multiplicity, ascending.
    pub fn positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &e) in self.entries.iter().enumerate() {
            for _ in 0..e {
                out.push(i + 1);
            }
        }
        out
    }

    /// True when no slot holds more than one ball.
    pub fn is_simple(&self) -> bool {
        self.entries.iter().all(|&e| e <= 1)
    }
}

impl PartialOrd for MultiplexState {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiplexState {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.positions(), self.capacity).cmp(&(other.positions(), other.capacity))
    }
}

impl fmt::Display for MultiplexState {
    fmt_entries_ascii!();
}

impl JugglingState for MultiplexState {
    fn ball_count(&self) -> u32 {
        self.entries.iter().map(|&e| e as u32).sum()
    }

    fn span(&self) -> usize {
        self.entries.len()
    }

    fn successors(&self, cap: usize) -> Result<Vec<Self>> {
        check_cap(cap, self.span())?;
        if self.entries.is_empty() {
            return Ok(vec![self.clone()]);
        }
        let landing = self.entries[0];
        let rest: Vec<u8> = self.entries[1..].to_vec();
        if landing == 0 {
            return Ok(vec![Self::from_entries(rest, self.capacity)?]);
        }
        // Re-throw the landed balls as an unordered multiset of heights,
        // respecting the per-slot capacity of the combined state.
        let mut out = Vec::new();
        let mut heights = Vec::with_capacity(landing as usize);
        self.rethrow(&rest, landing, 1, cap, &mut heights, &mut out)?;
        out.sort();
        Ok(out)
    }

    fn check_transition(from: &Self, to: &Self) -> Result<()> {
        check_sequence_transition(
            &from.entries,
            &to.entries,
            from.ball_count(),
            to.ball_count(),
        )
    }
}

impl MultiplexState {
    fn rethrow(
        &self,
        rest: &[u8],
        remaining: u8,
        min_height: usize,
        cap: usize,
        heights: &mut Vec<usize>,
        out: &mut Vec<Self>,
    ) -> Result<()> {
        if remaining == 0 {
            let mut entries = rest.to_vec();
            for &h in heights.iter() {
                if entries.len() < h {
                    entries.resize(h, 0);
                }
                entries[h - 1] += 1;
            }
            out.push(Self::from_entries(entries, self.capacity)?);
            return Ok(());
        }
        for h in min_height..=cap {
            let occupied = rest.get(h - 1).copied().unwrap_or(0)
                + heights.iter().filter(|&&x| x == h).count() as u8;
            if occupied < self.capacity {
                heights.push(h);
                self.rethrow(rest, remaining - 1, h, cap, heights, out)?;
                heights.pop();
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Colored states
// ---------------------------------------------------------------------------

/// Landing vector over color ids; each slot holds at most one ball and the
/// ball keeps its color through the flight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredState {
    entries: Vec<u8>,
}

impl ColoredState {
    pub fn from_entries(mut entries: Vec<u8>) -> Result<Self> {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Ok(Self { entries })
    }

    /// Builds a state from `(position, color)` pairs.
    pub fn from_placements(placements: &[(usize, u8)]) -> Result<Self> {
        let mut entries = vec![0u8; placements.iter().map(|&(p, _)| p).max().unwrap_or(0)];
        for &(p, c) in placements {
            if p == 0 || c == 0 {
                return Err(Error::Parse("positions and colors must be positive".into()));
            }
            if entries[p - 1] != 0 {
                return Err(Error::Parse(format!("two balls scheduled for slot {p}")));
            }
            entries[p - 1] = c;
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// `(position, color)` pairs in ascending position order.
    pub fn placements(&self) -> Vec<(usize, u8)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i + 1, c))
            .collect()
    }

    /// The declared color multiset, ascending.
    pub fn colors(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.entries.iter().copied().filter(|&c| c != 0).collect();
        out.sort_unstable();
        out
    }

    /// The same schedule with colors forgotten.
    pub fn uncolored(&self) -> NormalState {
        NormalState::from_entries(self.entries.iter().map(|&c| (c != 0) as u8).collect())
            .expect("bits")
    }

    /// The same schedule with colors swapped through `perm[c-1]`.
    pub fn recolored(&self, perm: &[u8]) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|&c| if c == 0 { 0 } else { perm[(c - 1) as usize] })
            .collect();
        Self { entries }
    }
}

impl PartialOrd for ColoredState {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ColoredState {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.placements().cmp(&other.placements())
    }
}

impl fmt::Display for ColoredState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "⟨⟩");
        }
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl JugglingState for ColoredState {
    fn ball_count(&self) -> u32 {
        self.entries.iter().filter(|&&c| c != 0).count() as u32
    }

    fn span(&self) -> usize {
        self.entries.len()
    }

    fn successors(&self, cap: usize) -> Result<Vec<Self>> {
        check_cap(cap, self.span())?;
        if self.entries.is_empty() {
            return Ok(vec![self.clone()]);
        }
        let landing = self.entries[0];
        let rest: Vec<(usize, u8)> = self.entries[1..]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i + 1, c))
            .collect();
        if landing == 0 {
            return Ok(vec![Self::from_placements(&rest)?]);
        }
        let mut out = Vec::new();
        for h in 1..=cap {
            if rest.iter().all(|&(p, _)| p != h) {
                let mut next = rest.clone();
                next.push((h, landing));
                out.push(Self::from_placements(&next)?);
            }
        }
        out.sort();
        Ok(out)
    }

    fn check_transition(from: &Self, to: &Self) -> Result<()> {
        let (b_from, b_to) = (from.ball_count(), to.ball_count());
        if b_from != b_to {
            return Err(Error::BallCountMismatch {
                from: b_from,
                to: b_to,
            });
        }
        if from.colors() != to.colors() {
            return Err(Error::BallCountMismatch {
                from: b_from,
                to: b_to,
            });
        }
        // A ball in flight keeps its color and descends exactly one slot.
        for i in 1..from.entries.len() {
            let c = from.entries[i];
            if c != 0 && to.entries.get(i - 1).copied().unwrap_or(0) != c {
                return Err(Error::InvalidTransition { index: i });
            }
        }
        // The landed ball (if any) must reappear on a slot that the shift
        // left free; with color multisets equal this is the remaining check.
        if from.entries[0] == 0 {
            // Pure shift must reproduce the state exactly.
            for (i, &c) in to.entries.iter().enumerate() {
                if c != from.entries.get(i + 1).copied().unwrap_or(0) {
                    return Err(Error::InvalidTransition { index: i + 1 });
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Passing states
// ---------------------------------------------------------------------------

/// Hands-by-beats landing grid; cell `(hand, beat)` schedules a landing at
/// that hand in `beat` beats.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PassingState {
    hands: u8,
    /// Sorted `(beat, hand)` cells, beats 1-based.
    cells: Vec<(u32, u8)>,
}

impl PassingState {
    pub fn new(hands: u8, mut cells: Vec<(u32, u8)>) -> Result<Self> {
        cells.sort_unstable();
        let distinct = {
            let mut c = cells.clone();
            c.dedup();
            c.len()
        };
        if distinct != cells.len() {
            return Err(Error::Parse("two balls scheduled for one cell".into()));
        }
        if cells.iter().any(|&(j, i)| j == 0 || i == 0 || i > hands) {
            return Err(Error::Parse("cell outside the hand grid".into()));
        }
        Ok(Self { hands, cells })
    }

    pub fn hands(&self) -> u8 {
        self.hands
    }

    /// Sorted `(beat, hand)` cells.
    pub fn cells(&self) -> &[(u32, u8)] {
        &self.cells
    }
}

impl PartialOrd for PassingState {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PassingState {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.cells, self.hands).cmp(&(&other.cells, other.hands))
    }
}

impl fmt::Display for PassingState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let span = self.span();
        let mut rows = Vec::with_capacity(self.hands as usize);
        for hand in 1..=self.hands {
            let mut row = String::with_capacity(span);
            for beat in 1..=span as u32 {
                row.push(if self.cells.contains(&(beat, hand)) {
                    '1'
                } else {
                    '0'
                });
            }
            rows.push(row);
        }
        write!(f, "{}", rows.join(";"))
    }
}

impl JugglingState for PassingState {
    fn ball_count(&self) -> u32 {
        self.cells.len() as u32
    }

    fn span(&self) -> usize {
        self.cells
            .iter()
            .map(|&(j, _)| j as usize)
            .max()
            .unwrap_or(0)
    }

    fn successors(&self, cap: usize) -> Result<Vec<Self>> {
        check_cap(cap, self.span())?;
        if self.cells.is_empty() {
            return Ok(vec![self.clone()]);
        }
        let landed = self.cells.iter().filter(|&&(j, _)| j == 1).count();
        let rest: Vec<(u32, u8)> = self
            .cells
            .iter()
            .filter(|&&(j, _)| j > 1)
            .map(|&(j, i)| (j - 1, i))
            .collect();
        if landed == 0 {
            return Ok(vec![Self::new(self.hands, rest)?]);
        }
        // Balls are identical, so the re-throw targets form an unordered set
        // of free cells.
        let free: Vec<(u32, u8)> = (1..=cap as u32)
            .flat_map(|j| (1..=self.hands).map(move |i| (j, i)))
            .filter(|cell| !rest.contains(cell))
            .collect();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(landed);
        choose_cells(&free, landed, 0, &mut chosen, &mut |targets| {
            let mut cells = rest.clone();
            cells.extend_from_slice(targets);
            out.push(Self::new(self.hands, cells));
        });
        let mut out = out.into_iter().collect::<Result<Vec<_>>>()?;
        out.sort();
        Ok(out)
    }

    fn check_transition(from: &Self, to: &Self) -> Result<()> {
        let (b_from, b_to) = (from.ball_count(), to.ball_count());
        if b_from != b_to {
            return Err(Error::BallCountMismatch {
                from: b_from,
                to: b_to,
            });
        }
        if from.hands != to.hands {
            return Err(Error::Parse("hand counts differ".into()));
        }
        for &(j, i) in &from.cells {
            if j > 1 && !to.cells.contains(&(j - 1, i)) {
                // Condition index counts cells row-major through the grid.
                let index = (j as usize - 1) * from.hands as usize + i as usize;
                return Err(Error::InvalidTransition { index });
            }
        }
        Ok(())
    }
}

fn choose_cells(
    free: &[(u32, u8)],
    remaining: usize,
    start: usize,
    chosen: &mut Vec<(u32, u8)>,
    emit: &mut impl FnMut(&[(u32, u8)]),
) {
    if remaining == 0 {
        emit(chosen);
        return;
    }
    for idx in start..free.len() {
        chosen.push(free[idx]);
        choose_cells(free, remaining - 1, idx + 1, chosen, emit);
        chosen.pop();
    }
}

// ---------------------------------------------------------------------------
// Shared transition checking
// ---------------------------------------------------------------------------

fn check_cap(cap: usize, span: usize) -> Result<()> {
    if cap < span {
        Err(Error::CapTooSmall { cap, span })
    } else {
        Ok(())
    }
}

fn check_sequence_transition(from: &[u8], to: &[u8], b_from: u32, b_to: u32) -> Result<()> {
    if b_from != b_to {
        return Err(Error::BallCountMismatch {
            from: b_from,
            to: b_to,
        });
    }
    for (i, &scheduled) in from.iter().enumerate().skip(1) {
        if scheduled > to.get(i - 1).copied().unwrap_or(0) {
            return Err(Error::InvalidTransition { index: i });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Cards
// ---------------------------------------------------------------------------

/// States whose transitions carry a card label.
pub trait CardLabelled: JugglingState {
    /// The unique card of a valid transition.
    fn card(from: &Self, to: &Self) -> Result<Card>;
}

impl CardLabelled for NormalState {
    fn card(from: &Self, to: &Self) -> Result<Card> {
        Self::check_transition(from, to)?;
        rank_card(&from.positions(), &to.positions())
    }
}

impl CardLabelled for ColoredState {
    fn card(from: &Self, to: &Self) -> Result<Card> {
        Self::check_transition(from, to)?;
        let strip = |s: &ColoredState| s.placements().iter().map(|&(p, _)| p).collect::<Vec<_>>();
        rank_card(&strip(from), &strip(to))
    }
}

impl CardLabelled for MultiplexState {
    fn card(from: &Self, to: &Self) -> Result<Card> {
        Self::check_transition(from, to)?;
        if from.is_simple() && to.is_simple() {
            return rank_card(&from.positions(), &to.positions());
        }
        if from.ball_count() != 2 {
            return Err(Error::Invalid(
                "stacked-pair cards are defined for two balls only".into(),
            ));
        }
        let fp = from.positions();
        let tp = to.positions();
        match (fp[0], fp[1]) {
            (1, 1) => {
                // Both balls land together and are re-thrown.
                if tp[0] == tp[1] {
                    Ok(Card::Dc)
                } else {
                    Ok(Card::Db)
                }
            }
            (i, j) if i == j => {
                debug_assert_eq!((tp[0], tp[1]), (i - 1, j - 1));
                Ok(Card::D0)
            }
            (1, _) => {
                if tp[0] == tp[1] {
                    Ok(Card::Da)
                } else {
                    rank_card(&fp, &tp)
                }
            }
            _ => Err(Error::Invalid(format!(
                "no card covers the transition {from} -> {to}"
            ))),
        }
    }
}

/// `C`-card of a single-landing transition between simple states, given the
/// ball positions of both sides.
fn rank_card(from: &[usize], to: &[usize]) -> Result<Card> {
    if from.is_empty() || from[0] > 1 {
        return Ok(Card::C(0));
    }
    let shifted: Vec<usize> = from[1..].iter().map(|&p| p - 1).collect();
    let thrown: Vec<&usize> = to.iter().filter(|p| !shifted.contains(p)).collect();
    if thrown.len() != 1 {
        return Err(Error::Invalid("transition is not a single throw".into()));
    }
    let rank = to.iter().position(|p| p == thrown[0]).unwrap() + 1;
    Ok(Card::C(rank as u8))
}

// ---------------------------------------------------------------------------
// Cycles
// ---------------------------------------------------------------------------

/// A closed walk in a state graph, stored as the sequence of visited states.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle<S> {
    states: Vec<S>,
}

impl<S: JugglingState> Cycle<S> {
    /// Validates closure (every consecutive pair and last-to-first) and
    /// stores the canonical rotation.
    pub fn new(states: Vec<S>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::Invalid("a cycle needs at least one state".into()));
        }
        for i in 0..states.len() {
            let next = &states[(i + 1) % states.len()];
            S::check_transition(&states[i], next).map_err(|_| Error::NotClosed { index: i })?;
        }
        Ok(Self {
            states: canonical_rotation(states),
        })
    }

    /// Builds a cycle without validating transitions; used by generators that
    /// construct states stepwise and validate separately.
    pub fn from_walk_unchecked(states: Vec<S>) -> Self {
        Self {
            states: canonical_rotation(states),
        }
    }

    pub fn period(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    /// True when all visited states are pairwise distinct.
    pub fn is_prime(&self) -> bool {
        for i in 0..self.states.len() {
            for j in (i + 1)..self.states.len() {
                if self.states[i] == self.states[j] {
                    return false;
                }
            }
        }
        true
    }

    /// True when the canonical rotation visits a given state.
    pub fn contains(&self, state: &S) -> bool {
        self.states.contains(state)
    }
}

impl<S: CardLabelled> Cycle<S> {
    /// Card labels of the transitions, aligned with the stored rotation:
    /// `cards()[i]` labels `states[i] -> states[i+1 mod n]`.
    pub fn cards(&self) -> Result<Vec<Card>> {
        let n = self.states.len();
        (0..n)
            .map(|i| S::card(&self.states[i], &self.states[(i + 1) % n]))
            .collect()
    }
}

/// Lexicographically least rotation of a state sequence; idempotent.
pub fn canonical_rotation<S: Ord + Clone>(states: Vec<S>) -> Vec<S> {
    let n = states.len();
    if n <= 1 {
        return states;
    }
    let mut best = 0;
    for start in 1..n {
        for k in 0..n {
            match states[(start + k) % n].cmp(&states[(best + k) % n]) {
                std::cmp::Ordering::Less => {
                    best = start;
                    break;
                }
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&states[best..]);
    out.extend_from_slice(&states[..best]);
    out
}

/// All closed walks that start at `first` and realise the given card
/// sequence within `cap`. A unique result demonstrates that the card
/// sequence plus its first state pins the cycle down.
pub fn reconstructions<S: CardLabelled>(
    first: &S,
    cards: &[Card],
    cap: usize,
) -> Result<Vec<Cycle<S>>> {
    fn go<S: CardLabelled>(
        first: &S,
        cards: &[Card],
        cap: usize,
        path: &mut Vec<S>,
        out: &mut Vec<Cycle<S>>,
    ) -> Result<()> {
        // The edge leaving path position i consumes cards[i].
        let consumed = path.len() - 1;
        let current = path.last().unwrap().clone();
        let want = cards[consumed];
        for next in current.successors(cap)? {
            if S::card(&current, &next)? != want {
                continue;
            }
            if consumed + 1 == cards.len() {
                if next == *first {
                    out.push(Cycle::from_walk_unchecked(path.clone()));
                }
            } else {
                path.push(next);
                go(first, cards, cap, path, out)?;
                path.pop();
            }
        }
        Ok(())
    }

    if cards.is_empty() {
        return Err(Error::Invalid("a cycle consumes at least one card".into()));
    }
    let mut out = Vec::new();
    let mut path = vec![first.clone()];
    go(first, cards, cap, &mut path, &mut out)?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Normal cycles from card sequences
// ---------------------------------------------------------------------------

/// Decodes a `C`-card sequence into the unique normal cycle realising it.
///
/// Returns the cycle (aligned so `cards[i]` labels step `i` before
/// canonicalisation) and the decoded throw height of every beat (zero for
/// `C0` beats). Fails loudly when the sequence is not realisable.
pub fn normal_cycle_from_cards(cards: &[Card], b: u32) -> Result<(Cycle<NormalState>, Vec<usize>)> {
    let n = cards.len();
    if n == 0 {
        return Err(Error::MalformedWord("empty card sequence".into()));
    }
    let values: Vec<u8> = cards
        .iter()
        .map(|c| match c {
            Card::C(v) if *v as u32 <= b => Ok(*v),
            Card::C(v) => Err(Error::MalformedWord(format!(
                "card C{v} exceeds the ball count {b}"
            ))),
            other => Err(Error::MalformedWord(format!(
                "card {other} is not a single-throw card"
            ))),
        })
        .collect::<Result<Vec<u8>>>()?;

    // Decode the flight length of each throw by tracking its relative height
    // through subsequent beats until it becomes the landing ball.
    let mut heights = vec![0usize; n];
    let limit = n * b as usize;
    for (beat, &v) in values.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let mut rank = v as usize;
        let mut elapsed = 0usize;
        let mut idx = beat;
        loop {
            idx = (idx + 1) % n;
            elapsed += 1;
            if elapsed > limit {
                return Err(Error::MalformedWord(format!(
                    "throw at beat {} never lands",
                    beat + 1
                )));
            }
            let y = values[idx] as usize;
            if y == 0 {
                continue;
            }
            if rank == 1 {
                heights[beat] = elapsed;
                break;
            }
            rank = if rank > y { rank } else { rank - 1 };
        }
    }
    let total: usize = heights.iter().sum();
    if total != n * b as usize {
        return Err(Error::MalformedWord(format!(
            "decoded heights sum to {total}, expected {}",
            n * b as usize
        )));
    }

    // Scheduled landings at time zero come from throws of earlier periods.
    let mut positions = Vec::with_capacity(b as usize);
    for (beat, &h) in heights.iter().enumerate() {
        if h == 0 {
            continue;
        }
        let mut p = beat as i64 + 1 + h as i64 - n as i64;
        while p >= 1 {
            positions.push(p as usize);
            p -= n as i64;
        }
    }
    positions.sort_unstable();
    if positions.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedWord(
            "two balls land on the same beat".into(),
        ));
    }
    if positions.len() != b as usize {
        return Err(Error::MalformedWord(format!(
            "initial state schedules {} balls, expected {b}",
            positions.len()
        )));
    }

    let start = NormalState::from_positions(&positions)?;
    let mut states = vec![start.clone()];
    let mut current = positions;
    for beat in 0..n {
        let next: Vec<usize> = if values[beat] == 0 {
            if current.first() == Some(&1) {
                return Err(Error::MalformedWord(format!(
                    "beat {} lands a ball but carries C0",
                    beat + 1
                )));
            }
            current.iter().map(|&p| p - 1).collect()
        } else {
            if current.first() != Some(&1) {
                return Err(Error::MalformedWord(format!(
                    "beat {} throws with no ball landing",
                    beat + 1
                )));
            }
            let mut rest: Vec<usize> = current[1..].iter().map(|&p| p - 1).collect();
            if rest.contains(&heights[beat]) {
                return Err(Error::MalformedWord(format!(
                    "throw at beat {} collides in flight",
                    beat + 1
                )));
            }
            rest.push(heights[beat]);
            rest.sort_unstable();
            rest
        };
        if beat + 1 < n {
            states.push(NormalState::from_positions(&next)?);
        } else if NormalState::from_positions(&next)? != start {
            return Err(Error::MalformedWord(
                "card sequence does not close after one period".into(),
            ));
        }
        current = next;
    }
    Ok((Cycle::new(states)?, heights))
}

// ---------------------------------------------------------------------------
// Textual syntax
// ---------------------------------------------------------------------------

/// Parses the angle-bracket or bare-digit entry syntax shared by normal and
/// multiplex states.
fn parse_entries(text: &str) -> Result<Vec<u8>> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('⟨')
        .and_then(|s| s.strip_suffix('⟩'))
        .or_else(|| trimmed.strip_prefix('<').and_then(|s| s.strip_suffix('>')));
    if let Some(inner) = inner {
        if inner.trim().is_empty() {
            return Ok(Vec::new());
        }
        return inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad entry {p:?} in {text:?}")))
            })
            .collect();
    }
    if trimmed.is_empty() {
        return Err(Error::Parse("empty state text".into()));
    }
    trimmed
        .chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {text:?}")))
        })
        .collect()
}

pub fn parse_normal(text: &str) -> Result<NormalState> {
    NormalState::from_entries(parse_entries(text)?)
}

pub fn parse_multiplex(text: &str, capacity: u8) -> Result<MultiplexState> {
    MultiplexState::from_entries(parse_entries(text)?, capacity)
}

pub fn parse_colored(text: &str) -> Result<ColoredState> {
    let entries = text
        .split_whitespace()
        .map(|p| {
            p.parse::<u8>()
                .map_err(|_| Error::Parse(format!("bad color entry {p:?}")))
        })
        .collect::<Result<Vec<u8>>>()?;
    if entries.is_empty() {
        return Err(Error::Parse("empty colored state text".into()));
    }
    ColoredState::from_entries(entries)
}

/// Parses the row syntax `010;001` (rows may also be separated by `/`).
pub fn parse_passing(text: &str) -> Result<PassingState> {
    let rows: Vec<&str> = text.split([';', '/']).collect();
    let hands = rows.len() as u8;
    let mut cells = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.trim().chars().enumerate() {
            match c {
                '0' => {}
                '1' => cells.push((j as u32 + 1, i as u8 + 1)),
                _ => return Err(Error::Parse(format!("bad cell {c:?} in row {i}"))),
            }
        }
    }
    PassingState::new(hands, cells)
}
