//! Filled Ferrers diagrams, landing words, and the generated family of
//! `b`-ball prime patterns.
//!
//! A distinct-part partition of `n` is drawn as a Ferrers diagram and filled
//! under the constraints: each row ends in `b`, no other cell holds `b`, a
//! column holds at most one value from `{b, b-1}`, everything else stays
//! below `b-1`. Reading the rows right-to-left in a cyclic order yields a
//! landing word; the word is turned into a card sequence by walking each
//! landing backwards to its throw beat with a bump count. The resulting
//! cycles form the family behind the `b`-ball lower bound, validated here
//! empirically (validity, primeness, pairwise distinctness).

use serde::Serialize;

use crate::counting::lower_bound_normal_b;
use crate::par::map_units;
use crate::partitions::{distinct_partitions, max_parts, DistinctPartition};
use crate::rational::{
    binomial, expect_integer, factorial, pow_int, pow_rat, rat, ratio, Int, Rat,
};
use crate::states::{normal_cycle_from_cards, Card, Cycle, NormalState};
use crate::{Error, Result};

/// A filled Ferrers diagram: the fill of row `i` has `parts[i]` cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilledDiagram {
    partition: DistinctPartition,
    rows: Vec<Vec<u8>>,
    balls: u32,
}

impl FilledDiagram {
    pub fn partition(&self) -> &DistinctPartition {
        &self.partition
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn balls(&self) -> u32 {
        self.balls
    }
}

/// Height of column `j` (1-based) in the diagram of `parts`.
fn column_height(parts: &[u64], j: u64) -> usize {
    parts.iter().filter(|&&p| p >= j).count()
}

/// All valid fills of the diagram, in a fixed column-major order.
pub fn enumerate_filled_diagrams(partition: &DistinctPartition, balls: u32) -> Vec<FilledDiagram> {
    assert!(balls >= 2, "fills need at least two ball values");
    let parts = partition.parts();
    let b = balls as u8;
    let width = parts[0];

    // Columns are independent; list the options for each.
    let mut column_options: Vec<Vec<Vec<u8>>> = Vec::with_capacity(width as usize);
    for j in 1..=width {
        let h = column_height(parts, j);
        let ends_here = parts.contains(&j);
        let mut options = Vec::new();
        let mut cells = vec![0u8; h];
        if ends_here {
            // The bottom covering row ends in this column and takes the b.
            fill_low(&mut cells, 0, h - 1, b, &mut |cells| {
                let mut col = cells.to_vec();
                col[h - 1] = b;
                options.push(col);
            });
        } else {
            fill_low(&mut cells, 0, h, b, &mut |cells| {
                options.push(cells.to_vec());
            });
            // Or place the single allowed b-1 in any of the h cells.
            for r in 0..h {
                let mut lows = vec![0u8; h - 1];
                fill_low(&mut lows, 0, h - 1, b, &mut |lows| {
                    let mut col = Vec::with_capacity(h);
                    col.extend_from_slice(&lows[..r]);
                    col.push(b - 1);
                    col.extend_from_slice(&lows[r..]);
                    options.push(col);
                });
            }
        }
        column_options.push(options);
    }

    // Cartesian product over columns.
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = vec![0; width as usize];
    loop {
        let mut rows: Vec<Vec<u8>> = parts.iter().map(|&p| vec![0u8; p as usize]).collect();
        for (cj, &opt) in chosen.iter().enumerate() {
            for (ri, &value) in column_options[cj][opt].iter().enumerate() {
                rows[ri][cj] = value;
            }
        }
        out.push(FilledDiagram {
            partition: partition.clone(),
            rows,
            balls,
        });
        // Odometer step.
        let mut idx = chosen.len();
        loop {
            if idx == 0 {
                return out;
            }
            idx -= 1;
            chosen[idx] += 1;
            if chosen[idx] < column_options[idx].len() {
                break;
            }
            chosen[idx] = 0;
        }
    }
}

/// Enumerates fills of `cells[from..to]` with values in `[0, b-2]`.
fn fill_low(cells: &mut Vec<u8>, from: usize, to: usize, b: u8, emit: &mut impl FnMut(&[u8])) {
    if from == to {
        emit(cells);
        return;
    }
    for v in 0..=b - 2 {
        cells[from] = v;
        fill_low(cells, from + 1, to, b, emit);
    }
    cells[from] = 0;
}

/// Column-product count of valid fills: a column where a row ends admits
/// `(b-1)^(h-1)` fills, any other column `(b-1)^(h-1) (b-1+h)`.
pub fn count_filled_diagrams(partition: &DistinctPartition, balls: u32) -> Int {
    let parts = partition.parts();
    let b = balls as u64;
    let mut acc = Int::from(1);
    for j in 1..=parts[0] {
        let h = column_height(parts, j) as u64;
        acc *= pow_int(&Int::from(b - 1), h - 1);
        if !parts.contains(&j) {
            acc *= Int::from(b - 1 + h);
        }
    }
    acc
}

/// The closed-form fill count as displayed:
/// `(b-1)^n / (C(t+b-1, b) t!) * prod ((i+b-1)/(i+b-2))^{p_i}`.
/// Disagrees with the column product for `t != b` (the comparison is
/// reported, never reconciled silently).
pub fn count_filled_diagrams_display(partition: &DistinctPartition, balls: u32) -> Rat {
    let parts = partition.parts();
    let t = parts.len() as u64;
    let b = balls as u64;
    let n: u64 = partition.total();
    let mut acc = Rat::from_integer(pow_int(&Int::from(b - 1), n))
        / Rat::from_integer(binomial(t + b - 1, b) * factorial(t));
    for (i, &p) in parts.iter().enumerate() {
        let i = i as i64 + 1;
        acc *= pow_rat(&ratio(i + b as i64 - 1, i + b as i64 - 2), p);
    }
    acc
}

/// A landing word: symbol `v != 0` at index `j` schedules a ball to land at
/// beat `j+1` that was thrown as the `v`-th highest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LandingWord {
    symbols: Vec<u8>,
}

impl LandingWord {
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }
}

/// Concatenates the right-to-left row reads in the given row order.
pub fn landing_word(diagram: &FilledDiagram, row_order: &[usize]) -> LandingWord {
    let mut symbols = Vec::with_capacity(diagram.partition.total() as usize);
    for &r in row_order {
        symbols.extend(diagram.rows[r].iter().rev());
    }
    LandingWord { symbols }
}

/// A cycle generated from a landing word, with its card sequence and the
/// decoded throw heights (aligned with the word, beat by beat).
#[derive(Debug, Clone)]
pub struct GeneratedPattern {
    pub cards: Vec<Card>,
    pub cycle: Cycle<NormalState>,
    pub heights: Vec<usize>,
}

/// Turns a landing word into a pattern.
///
/// Zeros become `C0`. For each value `v` ascending and each landing index
/// left to right, the throw beat is found by walking backwards cyclically
/// from the beat before the landing, bumping a counter at every beat that is
/// unassigned or carries a card above the current count; the beat where the
/// count reaches `v` receives `Cv`. The search is bounded by `n*b` steps and
/// any inconsistency (no throw beat, double booking, non-closing replay, or
/// a replay that does not reproduce the word beat-for-beat) is an error.
pub fn pattern_of_landing_word(word: &[u8], balls: u32) -> Result<GeneratedPattern> {
    let n = word.len();
    if n == 0 {
        return Err(Error::MalformedWord("empty word".into()));
    }
    if word.iter().any(|&v| v as u32 > balls) {
        return Err(Error::MalformedWord("symbol exceeds the ball count".into()));
    }
    let mut assigned: Vec<Option<u8>> = vec![None; n];
    for (j, &w) in word.iter().enumerate() {
        if w == 0 {
            assigned[j] = Some(0);
        }
    }
    let step_limit = n * balls as usize;
    for v in 1..=balls as u8 {
        for (j, _) in word.iter().enumerate().filter(|&(_, &w)| w == v) {
            let mut bump = 0u8;
            let mut k = j;
            let mut steps = 0usize;
            loop {
                k = (k + n - 1) % n;
                steps += 1;
                if steps > step_limit {
                    return Err(Error::MalformedWord(format!(
                        "no throw beat found for the landing at beat {}",
                        j + 1
                    )));
                }
                match assigned[k] {
                    None => bump += 1,
                    Some(x) if x > bump => bump += 1,
                    _ => {}
                }
                if bump == v {
                    if assigned[k].is_some() {
                        return Err(Error::MalformedWord(format!(
                            "throw beat {} is already taken",
                            k + 1
                        )));
                    }
                    assigned[k] = Some(v);
                    break;
                }
            }
        }
    }
    let cards: Vec<Card> = assigned
        .iter()
        .map(|slot| slot.map(Card::C))
        .collect::<Option<Vec<Card>>>()
        .ok_or_else(|| Error::MalformedWord("a beat was never assigned a card".into()))?;

    let (cycle, heights) = normal_cycle_from_cards(&cards, balls)?;

    // Replay check: every landing must be fed by a throw of matching value.
    let mut realized = vec![0u8; n];
    for (k, &h) in heights.iter().enumerate() {
        if h > 0 {
            let Card::C(v) = cards[k] else { unreachable!() };
            realized[(k + h) % n] = v;
        }
    }
    if realized != word {
        return Err(Error::MalformedWord(format!(
            "replay realises {realized:?}, not the word {word:?}"
        )));
    }
    Ok(GeneratedPattern {
        cards,
        cycle,
        heights,
    })
}

// ---------------------------------------------------------------------------
// Family generation
// ---------------------------------------------------------------------------

/// Per-partition slice of a family run.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionFamily {
    pub partition: String,
    pub fills: u64,
    pub words: u64,
    pub cycles: u64,
}

/// Result of generating every pattern the construction yields for `(b, n)`.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub balls: u32,
    pub period: u64,
    /// `sum over partitions of t! * (displayed fill count)`: `b` times the
    /// closed-form lower bound.
    pub raw_word_count: String,
    /// Number of `(fill, linear row order)` pairs actually enumerated.
    pub enumerated_words: u64,
    pub distinct_cycles: u64,
    /// Inputs (fill plus cyclic row order) that produced an already-seen
    /// cycle.
    pub collisions: u64,
    pub all_prime: bool,
    /// The closed-form lower bound the family is measured against.
    pub lower_bound: String,
    pub partitions: Vec<PartitionFamily>,
    #[serde(skip)]
    pub cycles: Vec<Cycle<NormalState>>,
}

/// Generates the full family for `(b, n)`: every fill of every distinct-part
/// partition of `n`, read in every linear row order, deduplicated by
/// canonical rotation.
pub fn generate_family(balls: u32, period: u64) -> Result<FamilyReport> {
    assert!(balls >= 2 && period >= 1);
    let mut all_partitions = Vec::new();
    for t in 1..=max_parts(period).max(1) {
        all_partitions.extend(distinct_partitions(period, t));
    }

    // (canonical cycle, partition index, fill index, cyclic class) per word.
    type Generated = (Vec<(Cycle<NormalState>, usize, u64)>, PartitionFamily);
    let per_partition: Vec<Result<Generated>> = map_units(
        all_partitions.iter().cloned().enumerate().collect(),
        |(pi, partition)| {
            let fills = enumerate_filled_diagrams(&partition, balls);
            let t = partition.len();
            let mut local: Vec<(Cycle<NormalState>, usize, u64)> = Vec::new();
            let mut words = 0u64;
            for (fi, fill) in fills.iter().enumerate() {
                for order in permutations(t) {
                    words += 1;
                    let word = landing_word(fill, &order);
                    let generated = pattern_of_landing_word(word.symbols(), balls)?;
                    let class = cyclic_class(&order);
                    local.push((generated.cycle, pi * 10_000 + fi, class));
                }
            }
            let mut keys: Vec<&Cycle<NormalState>> = local.iter().map(|(c, _, _)| c).collect();
            keys.sort();
            keys.dedup();
            let distinct = keys.len() as u64;
            Ok((
                local,
                PartitionFamily {
                    partition: partition.to_string(),
                    fills: fills.len() as u64,
                    words,
                    cycles: distinct,
                },
            ))
        },
    );

    let mut sources: std::collections::BTreeMap<Cycle<NormalState>, Vec<(usize, u64)>> =
        std::collections::BTreeMap::new();
    let mut partitions = Vec::new();
    let mut enumerated_words = 0u64;
    for item in per_partition {
        let (local, detail) = item?;
        enumerated_words += detail.words;
        partitions.push(detail);
        for (cycle, fill_id, class) in local {
            let entry = sources.entry(cycle).or_default();
            if !entry.contains(&(fill_id, class)) {
                entry.push((fill_id, class));
            }
        }
    }

    let distinct_cycles = sources.len() as u64;
    let collisions: u64 = sources.values().map(|inputs| inputs.len() as u64 - 1).sum();
    let all_prime = sources.keys().all(|c| c.is_prime());
    let bound = lower_bound_normal_b(balls as u64, period);
    let raw = expect_integer(&(bound.clone() * rat(balls as i64)))?;

    Ok(FamilyReport {
        balls,
        period,
        raw_word_count: raw.to_string(),
        enumerated_words,
        distinct_cycles,
        collisions,
        all_prime,
        lower_bound: bound.to_string(),
        partitions,
        cycles: sources.into_keys().collect(),
    })
}

fn permutations(t: usize) -> Vec<Vec<usize>> {
    fn go(pool: &mut Vec<usize>, from: usize, out: &mut Vec<Vec<usize>>) {
        if from == pool.len() {
            out.push(pool.clone());
            return;
        }
        for i in from..pool.len() {
            pool.swap(from, i);
            go(pool, from + 1, out);
            pool.swap(from, i);
        }
    }
    let mut pool: Vec<usize> = (0..t).collect();
    let mut out = Vec::new();
    go(&mut pool, 0, &mut out);
    out
}

/// Identifier of the rotation class of a row order, as a compact integer.
fn cyclic_class(order: &[usize]) -> u64 {
    let t = order.len();
    let mut best: Option<Vec<usize>> = None;
    for s in 0..t {
        let rotated: Vec<usize> = (0..t).map(|i| order[(s + i) % t]).collect();
        if best.as_ref().is_none_or(|b| rotated < *b) {
            best = Some(rotated);
        }
    }
    best.unwrap()
        .into_iter()
        .fold(0u64, |acc, x| acc * 64 + x as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_normal_prime_2;
    use crate::states::JugglingState;

    fn part(parts: &[u64]) -> DistinctPartition {
        DistinctPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn single_cell_diagram_is_forced() {
        let fills = enumerate_filled_diagrams(&part(&[1]), 2);
        assert_eq!(fills.len(), 1);
        assert_eq!(fills[0].rows(), &[vec![2]]);
        assert_eq!(count_filled_diagrams(&part(&[1]), 2), Int::from(1));
    }

    #[test]
    fn two_one_diagram_at_two_balls() {
        let fills = enumerate_filled_diagrams(&part(&[2, 1]), 2);
        assert_eq!(fills.len(), 1);
        assert_eq!(fills[0].rows(), &[vec![0, 2], vec![2]]);
    }

    #[test]
    fn enumeration_matches_column_product() {
        for b in 2..=4u32 {
            for n in 1..=8u64 {
                for t in 1..=max_parts(n).max(1) {
                    for p in distinct_partitions(n, t) {
                        let listed = enumerate_filled_diagrams(&p, b).len();
                        assert_eq!(
                            Int::from(listed),
                            count_filled_diagrams(&p, b),
                            "mismatch at {p}, b={b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn display_count_disagrees_on_single_cell() {
        // The displayed closed form overcounts the one-cell diagram.
        assert_eq!(count_filled_diagrams_display(&part(&[1]), 3), rat(3));
        assert_eq!(count_filled_diagrams(&part(&[1]), 3), Int::from(1));
        // It agrees when the crossing count equals the ball count.
        let p = part(&[2, 1]);
        assert_eq!(
            count_filled_diagrams_display(&p, 2),
            Rat::from_integer(count_filled_diagrams(&p, 2))
        );
    }

    #[test]
    fn landing_word_reads_rows_reversed() {
        let fills = enumerate_filled_diagrams(&part(&[2, 1]), 2);
        let w01 = landing_word(&fills[0], &[0, 1]);
        assert_eq!(w01.symbols(), &[2, 0, 2]);
        let w10 = landing_word(&fills[0], &[1, 0]);
        assert_eq!(w10.symbols(), &[2, 2, 0]);
        let single = enumerate_filled_diagrams(&part(&[1]), 2);
        assert_eq!(landing_word(&single[0], &[0]).symbols(), &[2]);
    }

    #[test]
    fn word_generation_examples() {
        let got = pattern_of_landing_word(&[2], 2).unwrap();
        assert_eq!(got.cards, vec![Card::C(2)]);
        assert_eq!(got.cycle.states(), &[NormalState::ground(2)]);

        let one_ball = pattern_of_landing_word(&[1], 1).unwrap();
        assert_eq!(one_ball.cards, vec![Card::C(1)]);

        let mixed = pattern_of_landing_word(&[2, 0, 2], 2).unwrap();
        assert_eq!(mixed.cards, vec![Card::C(2), Card::C(0), Card::C(2)]);
        assert!(mixed.cycle.is_prime());
    }

    #[test]
    fn word_generation_rejects_oversized_symbols() {
        assert!(pattern_of_landing_word(&[3], 2).is_err());
    }

    #[test]
    fn replay_reproduces_the_word() {
        for b in 2..=3u32 {
            for n in 1..=6u64 {
                for t in 1..=max_parts(n).max(1) {
                    for p in distinct_partitions(n, t) {
                        for fill in enumerate_filled_diagrams(&p, b) {
                            for order in permutations(p.len()) {
                                let word = landing_word(&fill, &order);
                                let generated = pattern_of_landing_word(word.symbols(), b).unwrap();
                                // Beats with a landing are exactly the
                                // nonzero word positions.
                                for (j, &w) in word.symbols().iter().enumerate() {
                                    let lands =
                                        generated.heights.iter().enumerate().any(|(k, &h)| {
                                            h > 0 && (k + h) % word.symbols().len() == j
                                        });
                                    assert_eq!(lands, w != 0);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn family_two_balls_recovers_every_pattern() {
        for n in 1..=6u64 {
            let report = generate_family(2, n).unwrap();
            let expected = count_normal_prime_2(n);
            assert_eq!(report.lower_bound, expected.to_string());
            assert_eq!(Int::from(report.distinct_cycles), expected);
            assert_eq!(report.collisions, 0, "collision at n={n}");
            assert!(report.all_prime);
            assert_eq!(report.raw_word_count, (expected * Int::from(2)).to_string());
        }
    }

    #[test]
    fn family_three_balls_period_three() {
        let report = generate_family(3, 3).unwrap();
        assert_eq!(report.raw_word_count, "33");
        assert_eq!(report.lower_bound, "11");
        assert_eq!(report.distinct_cycles, 11);
        assert_eq!(report.collisions, 0);
        assert!(report.all_prime);
        assert_eq!(report.enumerated_words, 13);
        for cycle in &report.cycles {
            assert_eq!(cycle.period(), 3);
            assert!(cycle.states().iter().all(|s| s.ball_count() == 3));
        }
    }

    #[test]
    fn family_report_serialises() {
        let report = generate_family(2, 3).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"raw_word_count\":\"10\""));
        assert!(json.contains("\"partitions\""));
    }
}
