//! Brute-force prime-cycle enumeration: the ground truth every closed-form
//! count is checked against.
//!
//! A prime pattern of period `n` is a closed walk visiting `n` pairwise
//! distinct states. The oracle enumerates them inside a height-capped slice
//! of the (infinite) state graph, counting each cycle once per rotation
//! class. There is no a-priori bound on the throw heights inside a
//! period-`n` prime cycle, so the cap is swept upwards until two consecutive
//! caps agree on the count; the stabilised cap is reported with the result.
//!
//! Enumeration is partitioned by root state and the roots are processed
//! independently (in parallel when the `parallel` feature is on); per-root
//! results are concatenated in root order, so output does not depend on
//! scheduling.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::par::map_units;
use crate::states::{
    Card, CardLabelled, ColoredState, Cycle, JugglingState, MultiplexState, NormalState,
    PassingState,
};
use crate::{Error, Result};

/// Default ceiling for the cap sweep.
pub const DEFAULT_MAX_CAP: usize = 64;
/// Default ceiling on DFS node expansions across one enumeration.
pub const DEFAULT_NODE_BUDGET: u64 = 500_000_000;

/// Which state graph to enumerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Variant {
    Normal { balls: u32 },
    Multiplex { balls: u32, capacity: u8 },
    Colored { colors: Vec<u8> },
    Passing { balls: u32, hands: u8 },
}

impl Variant {
    pub fn balls(&self) -> u32 {
        match self {
            Variant::Normal { balls } => *balls,
            Variant::Multiplex { balls, .. } => *balls,
            Variant::Colored { colors } => colors.len() as u32,
            Variant::Passing { balls, .. } => *balls,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Variant::Normal { .. } => "normal",
            Variant::Multiplex { .. } => "multiplex",
            Variant::Colored { .. } => "colored",
            Variant::Passing { .. } => "passing",
        }
    }
}

/// Outcome of one enumeration, at the cap where the count stabilised.
#[derive(Debug, Clone)]
pub struct OracleRun<S> {
    pub count: u64,
    pub cycles: Option<Vec<Cycle<S>>>,
    /// Cap at which the count first agreed with the count at cap + 1.
    pub cap: usize,
    pub wall: Duration,
}

/// Resource limits for a sweep.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_cap: usize,
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_cap: DEFAULT_MAX_CAP,
            max_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

// ---------------------------------------------------------------------------
// Capped graph
// ---------------------------------------------------------------------------

/// Adjacency view of all states with span at most `cap`.
pub struct CappedGraph<S> {
    states: Vec<S>,
    succ: Vec<Vec<usize>>,
    cap: usize,
    budget: u64,
    expanded: AtomicU64,
}

impl<S: JugglingState> CappedGraph<S> {
    pub fn new(mut states: Vec<S>, cap: usize) -> Result<Self> {
        states.sort();
        states.dedup();
        let index: HashMap<&S, usize> = states.iter().zip(0..).collect();
        let succ = states
            .iter()
            .map(|s| {
                s.successors(cap)?
                    .iter()
                    .map(|t| {
                        index.get(t).copied().ok_or_else(|| {
                            Error::Invalid(format!("successor {t} missing from the capped slice"))
                        })
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            states,
            succ,
            cap,
            budget: u64::MAX,
            expanded: AtomicU64::new(0),
        })
    }

    pub fn with_budget(mut self, max_nodes: u64) -> Self {
        self.budget = max_nodes;
        self
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    /// Shortest distance from every node to `target`, using only nodes with
    /// index at least `floor` as intermediates.
    fn distances_to(&self, target: usize, floor: usize) -> Vec<u32> {
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.states.len()];
        for (u, outs) in self.succ.iter().enumerate() {
            if u < floor && u != target {
                continue;
            }
            for &v in outs {
                if v >= floor || v == target {
                    rev[v].push(u);
                }
            }
        }
        let mut dist = vec![u32::MAX; self.states.len()];
        dist[target] = 0;
        let mut frontier = vec![target];
        let mut d = 0u32;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &v in &frontier {
                for &u in &rev[v] {
                    if dist[u] == u32::MAX {
                        dist[u] = d;
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// All period-`n` prime cycles whose least state is `root`, as state
    /// index paths starting at `root`.
    fn cycles_rooted(
        &self,
        root: usize,
        n: usize,
        floor: usize,
        emit: &mut impl FnMut(&[usize]),
    ) -> Result<u64> {
        let dist = self.distances_to(root, floor);
        let mut on_path = vec![false; self.states.len()];
        on_path[root] = true;
        let mut path = vec![root];
        let mut found = 0u64;
        self.dfs(
            root,
            n,
            floor,
            &dist,
            &mut path,
            &mut on_path,
            &mut found,
            emit,
        )?;
        Ok(found)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        root: usize,
        n: usize,
        floor: usize,
        dist: &[u32],
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        found: &mut u64,
        emit: &mut impl FnMut(&[usize]),
    ) -> Result<()> {
        let v = *path.last().unwrap();
        let depth = path.len();
        if self.expanded.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Error::BudgetExceeded {
                cap: self.cap,
                partial: *found,
            });
        }
        if depth == n {
            if self.succ[v].contains(&root) {
                *found += 1;
                emit(path);
            }
            return Ok(());
        }
        let remaining = (n - depth) as u32;
        for &w in &self.succ[v] {
            if w < floor || on_path[w] || dist[w] > remaining {
                continue;
            }
            on_path[w] = true;
            path.push(w);
            self.dfs(root, n, floor, dist, path, on_path, found, emit)?;
            path.pop();
            on_path[w] = false;
        }
        Ok(())
    }

    /// Counts (and optionally lists) all period-`n` prime cycles. Every cycle
    /// is reported once, rooted at its least state, which is also its
    /// canonical rotation.
    pub fn prime_cycles(&self, n: usize, list: bool) -> Result<(u64, Option<Vec<Cycle<S>>>)> {
        let roots: Vec<usize> = (0..self.states.len()).collect();
        let per_root = map_units(roots, |root| {
            let mut collected: Vec<Vec<usize>> = Vec::new();
            let count = self.cycles_rooted(root, n, root, &mut |path| {
                if list {
                    collected.push(path.to_vec());
                }
            })?;
            Ok::<_, Error>((count, collected))
        });
        let mut total = 0u64;
        let mut cycles = list.then(Vec::new);
        for item in per_root {
            let (count, paths) = item?;
            total += count;
            if let Some(acc) = cycles.as_mut() {
                for path in paths {
                    let states = path.iter().map(|&i| self.states[i].clone()).collect();
                    acc.push(Cycle::from_walk_unchecked(states));
                }
            }
        }
        Ok((total, cycles))
    }

    /// Counts (and optionally lists) the period-`n` prime cycles whose state
    /// set contains `through`.
    pub fn prime_cycles_through(
        &self,
        through: &S,
        n: usize,
        list: bool,
    ) -> Result<(u64, Option<Vec<Cycle<S>>>)> {
        let root = self
            .states
            .binary_search(through)
            .map_err(|_| Error::Invalid(format!("state {through} is outside the capped slice")))?;
        let mut collected: Vec<Vec<usize>> = Vec::new();
        let count = self.cycles_rooted(root, n, 0, &mut |path| {
            if list {
                collected.push(path.to_vec());
            }
        })?;
        let cycles = list.then(|| {
            collected
                .into_iter()
                .map(|path| {
                    let states = path.iter().map(|&i| self.states[i].clone()).collect();
                    Cycle::from_walk_unchecked(states)
                })
                .collect()
        });
        Ok((count, cycles))
    }
}

// ---------------------------------------------------------------------------
// State enumeration per variant
// ---------------------------------------------------------------------------

fn combinations<T: Clone>(pool: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(pool: &[T], k: usize, start: usize, acc: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..pool.len() {
            acc.push(pool[i].clone());
            go(pool, k, i + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, k, 0, &mut Vec::new(), &mut out);
    out
}

fn multisets(max: usize, k: usize, per_value: u8) -> Vec<Vec<usize>> {
    fn go(
        max: usize,
        k: usize,
        per_value: u8,
        from: usize,
        acc: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for v in from..=max {
            if acc.iter().filter(|&&x| x == v).count() < per_value as usize {
                acc.push(v);
                go(max, k, per_value, v, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(max, k, per_value, 1, &mut Vec::new(), &mut out);
    out
}

/// All canonical normal states with `b` balls and span at most `cap`.
pub fn normal_states(balls: u32, cap: usize) -> Result<Vec<NormalState>> {
    let pool: Vec<usize> = (1..=cap).collect();
    combinations(&pool, balls as usize)
        .iter()
        .map(|c| NormalState::from_positions(c))
        .collect()
}

/// All canonical multiplex states with `b` balls, hand capacity `k`, span at
/// most `cap`.
pub fn multiplex_states(balls: u32, capacity: u8, cap: usize) -> Result<Vec<MultiplexState>> {
    multisets(cap, balls as usize, capacity)
        .iter()
        .map(|m| MultiplexState::from_positions(m, capacity))
        .collect()
}

/// All canonical colored states realising the color multiset within `cap`.
pub fn colored_states(colors: &[u8], cap: usize) -> Result<Vec<ColoredState>> {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    let pool: Vec<usize> = (1..=cap).collect();
    let mut out = Vec::new();
    for positions in combinations(&pool, colors.len()) {
        let mut perms = vec![sorted.clone()];
        // All distinct arrangements of the color multiset over the positions.
        loop {
            let last = perms.last().unwrap().clone();
            match next_permutation(last) {
                Some(next) => perms.push(next),
                None => break,
            }
        }
        for perm in perms {
            let placements: Vec<(usize, u8)> = positions
                .iter()
                .copied()
                .zip(perm.iter().copied())
                .collect();
            out.push(ColoredState::from_placements(&placements)?);
        }
    }
    Ok(out)
}

fn next_permutation(mut v: Vec<u8>) -> Option<Vec<u8>> {
    let n = v.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    Some(v)
}

/// All canonical passing states with `b` balls on `hands` rows within `cap`.
pub fn passing_states(balls: u32, hands: u8, cap: usize) -> Result<Vec<PassingState>> {
    let pool: Vec<(u32, u8)> = (1..=cap as u32)
        .flat_map(|j| (1..=hands).map(move |i| (j, i)))
        .collect();
    combinations(&pool, balls as usize)
        .iter()
        .map(|cells| PassingState::new(hands, cells.clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// Cap sweep
// ---------------------------------------------------------------------------

/// Runs `f` at increasing caps from `start` until two consecutive caps agree
/// on the count, then returns the stabilised run.
pub fn sweep_caps<S, F>(n: usize, start: usize, budget: Budget, run: F) -> Result<OracleRun<S>>
where
    S: JugglingState,
    F: Fn(usize) -> Result<(u64, Option<Vec<Cycle<S>>>)>,
{
    let started = Instant::now();
    let mut cap = start.max(n.max(1));
    let (mut count, mut cycles) = run(cap)?;
    loop {
        if cap + 1 > budget.max_cap {
            return Err(Error::BudgetExceeded {
                cap,
                partial: count,
            });
        }
        let (next_count, next_cycles) = run(cap + 1)?;
        if next_count == count {
            return Ok(OracleRun {
                count,
                cycles,
                cap,
                wall: started.elapsed(),
            });
        }
        cap += 1;
        count = next_count;
        cycles = next_cycles;
    }
}

/// Cap request for a query: a fixed height or the stability sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapSpec {
    Auto,
    Fixed(usize),
}

/// A full oracle query: variant, period, cap policy and resource budget.
#[derive(Debug, Clone)]
pub struct OracleQuery {
    pub variant: Variant,
    pub period: usize,
    pub cap: CapSpec,
    pub budget: Budget,
    pub list: bool,
}

impl OracleQuery {
    pub fn new(variant: Variant, period: usize) -> Self {
        Self {
            variant,
            period,
            cap: CapSpec::Auto,
            budget: Budget::default(),
            list: false,
        }
    }

    pub fn with_cap(mut self, cap: CapSpec) -> Self {
        self.cap = cap;
        self
    }

    pub fn listing(mut self, list: bool) -> Self {
        self.list = list;
        self
    }
}

fn run_query<S, F>(query: &OracleQuery, states_at: F) -> Result<OracleRun<S>>
where
    S: JugglingState,
    F: Fn(usize) -> Result<Vec<S>>,
{
    let n = query.period;
    if n == 0 {
        return Err(Error::Invalid("period must be at least 1".into()));
    }
    let start = n + query.variant.balls() as usize;
    let run_at = |cap: usize| {
        let graph = CappedGraph::new(states_at(cap)?, cap)?.with_budget(query.budget.max_nodes);
        graph.prime_cycles(n, query.list)
    };
    match query.cap {
        CapSpec::Auto => sweep_caps(n, start, query.budget, run_at),
        CapSpec::Fixed(cap) => {
            let started = Instant::now();
            let (count, cycles) = run_at(cap)?;
            Ok(OracleRun {
                count,
                cycles,
                cap,
                wall: started.elapsed(),
            })
        }
    }
}

/// Enumerates normal prime cycles.
pub fn normal_cycles(query: &OracleQuery) -> Result<OracleRun<NormalState>> {
    let Variant::Normal { balls } = query.variant else {
        return Err(Error::Invalid("query variant is not normal".into()));
    };
    run_query(query, |cap| normal_states(balls, cap))
}

/// Enumerates multiplex prime cycles.
pub fn multiplex_cycles(query: &OracleQuery) -> Result<OracleRun<MultiplexState>> {
    let Variant::Multiplex { balls, capacity } = query.variant else {
        return Err(Error::Invalid("query variant is not multiplex".into()));
    };
    run_query(query, |cap| multiplex_states(balls, capacity, cap))
}

/// Enumerates colored prime cycles (colors are labelled; no quotient).
pub fn colored_cycles(query: &OracleQuery) -> Result<OracleRun<ColoredState>> {
    let Variant::Colored { ref colors } = query.variant else {
        return Err(Error::Invalid("query variant is not colored".into()));
    };
    let colors = colors.clone();
    run_query(query, move |cap| colored_states(&colors, cap))
}

/// Enumerates passing prime cycles.
pub fn passing_cycles(query: &OracleQuery) -> Result<OracleRun<PassingState>> {
    let Variant::Passing { balls, hands } = query.variant else {
        return Err(Error::Invalid("query variant is not passing".into()));
    };
    run_query(query, |cap| passing_states(balls, hands, cap))
}

/// Enumerates prime cycles through a fixed state, sweeping the cap.
pub fn cycles_through<S, F>(
    state: &S,
    n: usize,
    budget: Budget,
    list: bool,
    states_at: F,
) -> Result<OracleRun<S>>
where
    S: JugglingState,
    F: Fn(usize) -> Result<Vec<S>>,
{
    let start = n + state.ball_count() as usize;
    let run_at = |cap: usize| {
        let graph = CappedGraph::new(states_at(cap)?, cap)?.with_budget(budget.max_nodes);
        graph.prime_cycles_through(state, n, list)
    };
    sweep_caps(n, start.max(state.span()), budget, run_at)
}

/// Number of distinct colored cycles after identifying simultaneous color
/// permutations (the alternative convention behind `--quotient-colors`).
pub fn quotient_color_count(cycles: &[Cycle<ColoredState>]) -> u64 {
    let mut keys: Vec<Vec<ColoredState>> = Vec::new();
    for cycle in cycles {
        let colors: Vec<u8> = {
            let mut all: Vec<u8> = cycle.states()[0].colors();
            all.dedup();
            all
        };
        let mut best: Option<Vec<ColoredState>> = None;
        for perm in color_permutations(&colors, &cycle.states()[0].colors()) {
            let mapped: Vec<ColoredState> =
                cycle.states().iter().map(|s| s.recolored(&perm)).collect();
            let canon = crate::states::canonical_rotation(mapped);
            if best.as_ref().is_none_or(|b| canon < *b) {
                best = Some(canon);
            }
        }
        keys.push(best.unwrap());
    }
    keys.sort();
    keys.dedup();
    keys.len() as u64
}

/// Permutations of the distinct color values that preserve multiplicities,
/// each given as a lookup table indexed by `color - 1`.
fn color_permutations(distinct: &[u8], multiset: &[u8]) -> Vec<Vec<u8>> {
    let count = |c: u8| multiset.iter().filter(|&&x| x == c).count();
    let max_color = *distinct.iter().max().unwrap_or(&0) as usize;
    let mut perms = Vec::new();
    let mut images = Vec::new();
    fn go(
        distinct: &[u8],
        images: &mut Vec<u8>,
        count: &impl Fn(u8) -> usize,
        max_color: usize,
        perms: &mut Vec<Vec<u8>>,
    ) {
        if images.len() == distinct.len() {
            let mut table = vec![0u8; max_color];
            for (d, im) in distinct.iter().zip(images.iter()) {
                table[(*d - 1) as usize] = *im;
            }
            perms.push(table);
            return;
        }
        let src = distinct[images.len()];
        for &dst in distinct {
            if !images.contains(&dst) && count(src) == count(dst) {
                images.push(dst);
                go(distinct, images, count, max_color, perms);
                images.pop();
            }
        }
    }
    go(distinct, &mut images, &count, max_color, &mut perms);
    perms
}

// ---------------------------------------------------------------------------
// Cycle records
// ---------------------------------------------------------------------------

/// Line record for a listed cycle: `variant;b;n;state1|state2|...;cards`.
/// Passing states render their rows with `/` so the record separator stays
/// unambiguous; passing cycles carry no card labels and show `-`.
pub fn cycle_record<S: JugglingState>(
    variant: &Variant,
    cycle: &Cycle<S>,
    cards: Option<&[Card]>,
) -> String {
    let states: Vec<String> = cycle
        .states()
        .iter()
        .map(|s| s.to_string().replace(';', "/"))
        .collect();
    let cards = match cards {
        Some(cards) => cards
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(","),
        None => "-".to_string(),
    };
    format!(
        "{};{};{};{};{}",
        variant.label(),
        variant.balls(),
        cycle.period(),
        states.join("|"),
        cards
    )
}

/// Lists a labelled-cycle run as line records.
pub fn records_for<S: CardLabelled>(variant: &Variant, run: &OracleRun<S>) -> Result<Vec<String>> {
    let mut out = Vec::new();
    if let Some(cycles) = &run.cycles {
        for cycle in cycles {
            let cards = cycle.cards()?;
            out.push(cycle_record(variant, cycle, Some(&cards)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{parse_multiplex, parse_normal};

    fn q(variant: Variant, n: usize) -> OracleQuery {
        OracleQuery::new(variant, n).listing(true)
    }

    #[test]
    fn two_ball_period_two() {
        let run = normal_cycles(&q(Variant::Normal { balls: 2 }, 2)).unwrap();
        assert_eq!(run.count, 2);
        let cycles = run.cycles.unwrap();
        assert_eq!(cycles.len(), 2);
        for c in &cycles {
            assert!(c.is_prime());
        }
    }

    #[test]
    fn multiplex_period_three_matches_published_count() {
        let run = multiplex_cycles(&q(
            Variant::Multiplex {
                balls: 2,
                capacity: 2,
            },
            3,
        ))
        .unwrap();
        assert_eq!(run.count, 9);
    }

    #[test]
    fn colored_period_three() {
        // Labelled colors see each color class twice unless the swap is a
        // rotation of the cycle; identifying swapped colorings leaves the
        // two classes of period 3.
        let run = colored_cycles(&q(Variant::Colored { colors: vec![1, 2] }, 3)).unwrap();
        assert_eq!(run.count, 4);
        assert_eq!(quotient_color_count(&run.cycles.unwrap()), 2);
    }

    #[test]
    fn colored_period_two_is_swap_symmetric() {
        let run = colored_cycles(&q(Variant::Colored { colors: vec![1, 2] }, 2)).unwrap();
        assert_eq!(run.count, 1);
        assert_eq!(quotient_color_count(&run.cycles.unwrap()), 1);
    }

    #[test]
    fn cycles_through_base_state() {
        let base = parse_normal("11").unwrap();
        let run = cycles_through(&base, 1, Budget::default(), true, |cap| {
            normal_states(2, cap)
        })
        .unwrap();
        assert_eq!(run.count, 1);
        let run3 = cycles_through(&base, 3, Budget::default(), false, |cap| {
            normal_states(2, cap)
        })
        .unwrap();
        assert_eq!(run3.count, 3);
    }

    #[test]
    fn cycles_through_stacked_pair() {
        let pair = parse_multiplex("2", 2).unwrap();
        let run = cycles_through(&pair, 1, Budget::default(), true, |cap| {
            multiplex_states(2, 2, cap)
        })
        .unwrap();
        assert_eq!(run.count, 1);
        let cards = run.cycles.unwrap()[0].cards().unwrap();
        assert_eq!(cards, vec![Card::Dc]);
    }

    #[test]
    fn rotation_uniqueness_and_closure() {
        let run = normal_cycles(&q(Variant::Normal { balls: 2 }, 4)).unwrap();
        let cycles = run.cycles.unwrap();
        assert_eq!(run.count, cycles.len() as u64);
        let mut keys: Vec<_> = cycles.iter().map(|c| c.states().to_vec()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), cycles.len());
        for c in &cycles {
            assert!(Cycle::new(c.states().to_vec()).is_ok());
        }
    }

    #[test]
    fn cards_with_first_state_pin_down_the_cycle() {
        use crate::states::reconstructions;
        // Normal cycles: the card sequence plus the first state admits
        // exactly one closed walk, the cycle itself.
        for n in 1..=5usize {
            let run = normal_cycles(&q(Variant::Normal { balls: 2 }, n)).unwrap();
            for cycle in run.cycles.unwrap() {
                let cards = cycle.cards().unwrap();
                let cap = cycle.states().iter().map(|s| s.span()).max().unwrap();
                let found = reconstructions(&cycle.states()[0], &cards, cap).unwrap();
                assert_eq!(found, vec![cycle.clone()], "ambiguous decoding at n={n}");
            }
        }
        for n in 1..=4usize {
            let run = multiplex_cycles(&q(
                Variant::Multiplex {
                    balls: 2,
                    capacity: 2,
                },
                n,
            ))
            .unwrap();
            for cycle in run.cycles.unwrap() {
                let cards = cycle.cards().unwrap();
                let cap = cycle.states().iter().map(|s| s.span()).max().unwrap();
                let found = reconstructions(&cycle.states()[0], &cards, cap).unwrap();
                assert_eq!(found, vec![cycle.clone()], "ambiguous decoding at n={n}");
            }
        }
    }

    #[test]
    fn strict_multiplex_cycles_visit_the_pair_once() {
        let pair = parse_multiplex("2", 2).unwrap();
        for n in 1..=5 {
            let run = multiplex_cycles(&q(
                Variant::Multiplex {
                    balls: 2,
                    capacity: 2,
                },
                n,
            ))
            .unwrap();
            for cycle in run.cycles.unwrap() {
                let stacked = cycle.states().iter().filter(|s| !s.is_simple()).count();
                let visits_pair = cycle.contains(&pair);
                if stacked > 0 {
                    assert!(
                        visits_pair,
                        "strict cycle without the ground pair: {cycle:?}"
                    );
                    assert_eq!(cycle.states().iter().filter(|&s| *s == pair).count(), 1);
                }
            }
        }
    }

    #[test]
    fn colored_cycles_have_even_crossing_count() {
        for n in 2..=5 {
            let run = colored_cycles(&q(Variant::Colored { colors: vec![1, 2] }, n)).unwrap();
            for cycle in run.cycles.unwrap() {
                let crossings = cycle
                    .cards()
                    .unwrap()
                    .iter()
                    .filter(|&&c| c == Card::C(2))
                    .count();
                assert_eq!(crossings % 2, 0, "odd crossing count in {cycle:?}");
            }
        }
    }

    #[test]
    fn lifting_a_prime_cycle_preserves_primeness() {
        for b in 1..=2u32 {
            for n in 1..=5usize {
                let run = normal_cycles(&q(Variant::Normal { balls: b }, n)).unwrap();
                for cycle in run.cycles.unwrap() {
                    let lifted: Vec<NormalState> =
                        cycle.states().iter().map(|s| s.lift()).collect();
                    let lifted = Cycle::new(lifted).expect("lifted walk stays closed");
                    assert!(lifted.is_prime());
                }
            }
        }
    }

    #[test]
    fn cap_stability_reports_stable_cap() {
        let run = normal_cycles(&OracleQuery::new(Variant::Normal { balls: 2 }, 3)).unwrap();
        assert_eq!(run.count, 5);
        // The longest state in any period-3 two-ball cycle spans six slots.
        assert_eq!(run.cap, 6);
    }

    #[test]
    fn fixed_cap_can_undercount() {
        let run = normal_cycles(
            &OracleQuery::new(Variant::Normal { balls: 2 }, 3).with_cap(CapSpec::Fixed(5)),
        )
        .unwrap();
        assert_eq!(run.count, 4);
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let tight = Budget {
            max_cap: 5,
            max_nodes: u64::MAX,
        };
        let mut query = OracleQuery::new(Variant::Normal { balls: 2 }, 3);
        query.budget = tight;
        match normal_cycles(&query) {
            Err(Error::BudgetExceeded { cap, .. }) => assert_eq!(cap, 5),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn passing_single_ball_counts() {
        // One ball, one hand: exactly one cycle per period.
        for n in 1..=4 {
            let run = passing_cycles(&q(Variant::Passing { balls: 1, hands: 1 }, n)).unwrap();
            assert_eq!(run.count, 1, "n={n}");
        }
        // One ball, two hands, period 3.
        let run = passing_cycles(&q(Variant::Passing { balls: 1, hands: 2 }, 3)).unwrap();
        assert_eq!(run.count, 4);
    }

    #[test]
    fn record_format_is_parseable() {
        let variant = Variant::Normal { balls: 2 };
        let run = normal_cycles(&q(variant.clone(), 2)).unwrap();
        let records = records_for(&variant, &run).unwrap();
        assert_eq!(records.len(), 2);
        for record in &records {
            let fields: Vec<&str> = record.split(';').collect();
            assert_eq!(fields.len(), 5);
            assert_eq!(fields[0], "normal");
            assert_eq!(fields[1], "2");
            assert_eq!(fields[2], "2");
        }
    }
}
