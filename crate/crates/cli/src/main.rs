//! `pjl`: exact counts, brute-force verification, constructions and growth
//! constants for prime juggling patterns and their variants.
//!
//! Results go to stdout; diagnostics (stabilised caps, wall times) go to
//! stderr, so output can be piped. Exit codes: 0 success, 1 verification
//! mismatch, 2 usage or runtime error.

mod cache;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pjl_core::asymptotics::{
    empirical_limits, gamma, q_seq, r, verify_ct_bounds, GammaKind, Weight, DEFAULT_DIGITS,
};
use pjl_core::counting::{
    count_base_state_2, count_colored_prime_2, count_multiplex_prime_2, count_normal_prime_2,
    count_passing_prime_1, count_strict_multiplex_2, lower_bound_normal_b,
    lower_bound_passing_2_closed, lower_bound_passing_2_closed_conservative,
    lower_bound_passing_2_exact, CountReport,
};
use pjl_core::ferrers::{
    count_filled_diagrams, count_filled_diagrams_display, enumerate_filled_diagrams,
    generate_family,
};
use pjl_core::infinite::{count_walks_through, AbbrevState};
use pjl_core::oracle::{
    colored_cycles, cycle_record, cycles_through, multiplex_cycles, multiplex_states,
    normal_cycles, normal_states, passing_cycles, quotient_color_count, records_for, Budget,
    CapSpec, OracleQuery, OracleRun, Variant,
};
use pjl_core::partitions::{distinct_partitions, max_parts};
use pjl_core::rational::{to_decimal, Int, Rat};
use pjl_core::states::{parse_multiplex, parse_normal};

#[derive(Parser)]
#[command(
    name = "pjl",
    version,
    about = "Prime juggling pattern counts and verification"
)]
struct Cli {
    /// Directory for the persistent result cache.
    #[arg(long, global = true, env = "PJL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Height cap for oracle enumeration: a number, or "auto" to sweep until
    /// two consecutive caps agree.
    #[arg(long, global = true, default_value = "auto")]
    cap: String,

    /// Decimal digits for interval-valued output.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS)]
    precision: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed-form count or bound.
    Count(CountArgs),
    /// Compare a closed form against the brute-force oracle.
    Verify(CountArgs),
    /// Count prime cycles by brute force.
    Oracle(OracleArgs),
    /// List prime cycles as `variant;b;n;states;cards` records.
    Enumerate(OracleArgs),
    /// Emit a reference table as CSV.
    Table(TableArgs),
    /// Sequences, growth constants, bound checks and convergence traces.
    #[command(subcommand)]
    Asymptotics(AsymptoticsCmd),
    /// Filled diagrams and the generated pattern family.
    #[command(subcommand)]
    Ferrers(FerrersCmd),
    /// The infinite state graph.
    #[command(subcommand)]
    Infinite(InfiniteCmd),
}

#[derive(Args)]
struct CountArgs {
    /// Which count or bound to evaluate.
    #[arg(value_enum)]
    family: Family,
    /// Period of the pattern.
    #[arg(short = 'n', long)]
    period: u64,
    /// Number of balls.
    #[arg(short = 'b', long, default_value_t = 2)]
    balls: u64,
    /// Hands (passing) or capacity (multiplex) or colors (colored).
    #[arg(short = 'k', long, default_value_t = 2)]
    k: u64,
    /// For colored verification: also accept the labeled-colors convention
    /// only (default compares both and reports the matching one).
    #[arg(long)]
    quotient_colors: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// 2-ball normal prime patterns.
    Normal,
    /// 2-ball strict multiplex prime patterns.
    StrictMultiplex,
    /// 2-ball multiplex prime patterns.
    Multiplex,
    /// 2-ball colored prime patterns.
    Colored,
    /// 1-ball passing prime patterns with k hands.
    Passing,
    /// 2-ball patterns through the ground state.
    BaseState,
    /// Lower bound on b-ball prime patterns.
    NormalLower,
    /// Exact lower bound on 2-ball passing patterns (oracle-backed).
    PassingLowerExact,
    /// Closed-form lower bound on 2-ball passing patterns.
    PassingLowerClosed,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Normal => "normal",
            Family::StrictMultiplex => "strict-multiplex",
            Family::Multiplex => "multiplex",
            Family::Colored => "colored",
            Family::Passing => "passing",
            Family::BaseState => "base-state",
            Family::NormalLower => "normal-lower",
            Family::PassingLowerExact => "passing-lower-exact",
            Family::PassingLowerClosed => "passing-lower-closed",
        }
    }
}

#[derive(Args)]
struct OracleArgs {
    /// State-graph variant.
    #[arg(value_enum)]
    variant: VariantKind,
    /// Period of the pattern.
    #[arg(short = 'n', long)]
    period: usize,
    /// Number of balls.
    #[arg(short = 'b', long, default_value_t = 2)]
    balls: u32,
    /// Hands (passing), capacity (multiplex) or colors (colored).
    #[arg(short = 'k', long, default_value_t = 2)]
    k: u8,
    /// Only cycles through this state (textual state syntax).
    #[arg(long)]
    through: Option<String>,
    /// Report the number of color classes up to a simultaneous color swap.
    #[arg(long)]
    quotient_colors: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantKind {
    Normal,
    Multiplex,
    Colored,
    Passing,
}

#[derive(Args)]
struct TableArgs {
    #[arg(value_enum)]
    which: TableKind,
    /// First row.
    #[arg(long)]
    from: Option<u64>,
    /// Last row.
    #[arg(long)]
    to: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    /// 2-ball multiplex counts per period.
    Mpx,
    /// 2-ball normal counts per period.
    Normal,
    /// b-ball growth constants.
    GammaB,
}

#[derive(Subcommand)]
enum AsymptoticsCmd {
    /// Evaluate a growth constant by partial summation.
    Gamma {
        #[arg(value_enum)]
        kind: GammaKindArg,
        /// Hands (passing) or balls (bball).
        #[arg(short = 'k', long, default_value_t = 2)]
        k: u64,
        /// Number of series terms.
        #[arg(long, default_value_t = 40)]
        terms: usize,
    },
    /// The exact q_t sequence.
    Qt {
        #[arg(long, default_value_t = 12)]
        to: usize,
    },
    /// The certified r_t sequence.
    Rt {
        #[arg(long, default_value_t = 5)]
        to: usize,
    },
    /// Check the two-sided spacing-count bounds.
    VerifyBounds {
        #[arg(long, default_value_t = 5)]
        tmax: usize,
        #[arg(long, default_value_t = 30)]
        nmax: u64,
    },
    /// Convergence trace of the normalised weighted sums.
    Limits {
        #[arg(value_enum, default_value_t = WeightArg::One)]
        weight: WeightArg,
        #[arg(long, default_value_t = 30)]
        to: u64,
        #[arg(value_enum, long, default_value_t = StatementArg::F)]
        statement: StatementArg,
    },
    /// Experimental table: the 2-ball passing lower bounds normalised by
    /// (1+k)^n. Ratios are reported, never asserted.
    PassingRatio {
        #[arg(short = 'k', long, default_value_t = 2)]
        k: u64,
        #[arg(long, default_value_t = 12)]
        to: u64,
        /// Largest period for the oracle-backed exact bound column.
        #[arg(long, default_value_t = 5)]
        exact_to: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GammaKindArg {
    Normal,
    Strict,
    Multiplex,
    Colored,
    Base,
    Passing,
    Bball,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightArg {
    One,
    T,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatementArg {
    /// F_w(n) / 2^n.
    F,
    /// S_w(n) / 2^n.
    S,
    /// (F_w * F_w)(n) / (n 2^n).
    Conv,
}

#[derive(Subcommand)]
enum FerrersCmd {
    /// Count (and optionally list) valid fills per partition.
    Diagrams {
        #[arg(short = 'n', long)]
        period: u64,
        #[arg(short = 'b', long)]
        balls: u32,
        /// Print each fill as a row-major grid.
        #[arg(long)]
        list: bool,
    },
    /// Generate the full pattern family and report it as JSON.
    Family {
        #[arg(short = 'n', long)]
        period: u64,
        #[arg(short = 'b', long)]
        balls: u32,
    },
}

#[derive(Subcommand)]
enum InfiniteCmd {
    /// Flip-reverse of an abbreviated state.
    Fr { state: String },
    /// Successors within a length window.
    Succ {
        state: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Realize an abbreviated state with b balls.
    Realize {
        state: String,
        #[arg(short = 'b', long)]
        balls: u32,
    },
    /// Count windowed walks through a state.
    Walks {
        state: String,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes early, like other line
    // emitters do.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        pjl_core::par::configure_jobs(jobs);
    }
    let mut cache = match cli.cache_dir.as_deref().map(cache::Cache::open).transpose() {
        Ok(cache) => cache,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    };
    let outcome = run(&cli, cache.as_mut());
    if let Some(cache) = cache.as_mut() {
        if let Err(err) = cache.flush() {
            eprintln!("warning: cache not saved: {err:#}");
        }
    }
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, cache: Option<&mut cache::Cache>) -> Result<bool> {
    match &cli.command {
        Command::Count(args) => run_count(cli, args, cache),
        Command::Verify(args) => run_verify(cli, args),
        Command::Oracle(args) => run_oracle(cli, args, cache, false),
        Command::Enumerate(args) => run_oracle(cli, args, None, true),
        Command::Table(args) => run_table(cli, args),
        Command::Asymptotics(cmd) => run_asymptotics(cli, cmd),
        Command::Ferrers(cmd) => run_ferrers(cli, cmd),
        Command::Infinite(cmd) => run_infinite(cli, cmd),
    }
}

fn cap_spec(cli: &Cli) -> Result<CapSpec> {
    if cli.cap == "auto" {
        Ok(CapSpec::Auto)
    } else {
        let cap: usize = cli
            .cap
            .parse()
            .map_err(|_| anyhow!("--cap takes a number or \"auto\", got {:?}", cli.cap))?;
        Ok(CapSpec::Fixed(cap))
    }
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

/// Evaluates a closed form; the returned string is the canonical value
/// representation used for both printing and caching.
fn formula_value(args: &CountArgs) -> Result<String> {
    let n = args.period;
    let value = match args.family {
        Family::Normal => {
            expect(args.balls == 2, "normal counts are closed-form for b=2")?;
            count_normal_prime_2(n).to_string()
        }
        Family::StrictMultiplex => {
            expect(
                args.balls == 2 && args.k == 2,
                "strict multiplex counts are closed-form for b=2, k=2",
            )?;
            count_strict_multiplex_2(n).to_string()
        }
        Family::Multiplex => {
            expect(
                args.balls == 2 && args.k == 2,
                "multiplex counts are closed-form for b=2, k=2",
            )?;
            count_multiplex_prime_2(n).to_string()
        }
        Family::Colored => {
            expect(
                args.balls == 2 && args.k == 2,
                "colored counts are closed-form for b=2, two colors",
            )?;
            count_colored_prime_2(n).to_string()
        }
        Family::Passing => {
            expect(args.balls == 1, "passing counts are closed-form for b=1")?;
            count_passing_prime_1(n, args.k).to_string()
        }
        Family::BaseState => {
            expect(args.balls == 2, "base-state counts are closed-form for b=2")?;
            count_base_state_2(n).to_string()
        }
        Family::NormalLower => {
            expect(args.balls >= 2, "the lower bound needs at least two balls")?;
            let bound = lower_bound_normal_b(args.balls, n);
            rational_string(&bound)
        }
        Family::PassingLowerExact => {
            expect(args.balls == 2, "the passing bound covers b=2")?;
            lower_bound_passing_2_exact(n as usize, args.k)?.to_string()
        }
        Family::PassingLowerClosed => {
            expect(args.balls == 2, "the passing bound covers b=2")?;
            lower_bound_passing_2_closed(n, args.k).to_string()
        }
    };
    Ok(value)
}

fn run_count(cli: &Cli, args: &CountArgs, cache: Option<&mut cache::Cache>) -> Result<bool> {
    let key = cache::op_key(
        "count",
        &[
            ("family", args.family.name().to_string()),
            ("b", args.balls.to_string()),
            ("n", args.period.to_string()),
            ("k", args.k.to_string()),
        ],
    );
    let cached = cache.as_ref().and_then(|c| c.counting.get(&key).cloned());
    let value = match cached {
        Some(hit) => hit,
        None => {
            let fresh = formula_value(args)?;
            if let Some(cache) = cache {
                cache.counting.put(key, fresh.clone());
            }
            fresh
        }
    };
    match cli.format {
        Format::Json => {
            let report = CountReport::new(args.family.name(), params_json(args), &value);
            println!("{}", report.to_json());
        }
        _ => println!("{value}"),
    }
    Ok(true)
}

fn params_json(args: &CountArgs) -> serde_json::Value {
    serde_json::json!({"b": args.balls, "n": args.period, "k": args.k})
}

fn expect(condition: bool, message: &str) -> Result<()> {
    if condition {
        Ok(())
    } else {
        bail!("{message}");
    }
}

fn rational_string(value: &Rat) -> String {
    if value.is_integer() {
        value.to_integer().to_string()
    } else {
        value.to_string()
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct Comparison {
    formula: String,
    oracle: String,
    agree: bool,
    note: Option<String>,
}

fn run_verify(cli: &Cli, args: &CountArgs) -> Result<bool> {
    let cap = cap_spec(cli)?;
    let n = args.period as usize;
    let cmp = match args.family {
        Family::Normal => {
            let formula = formula_value(args)?;
            let run = normal_cycles(&query(Variant::Normal { balls: 2 }, n, cap))?;
            note_run(&run);
            equality(formula, run.count)
        }
        Family::Multiplex => {
            let formula = formula_value(args)?;
            let run = multiplex_cycles(&query(
                Variant::Multiplex {
                    balls: 2,
                    capacity: 2,
                },
                n,
                cap,
            ))?;
            note_run(&run);
            equality(formula, run.count)
        }
        Family::StrictMultiplex => {
            let formula = formula_value(args)?;
            let run = multiplex_cycles(
                &query(
                    Variant::Multiplex {
                        balls: 2,
                        capacity: 2,
                    },
                    n,
                    cap,
                )
                .listing(true),
            )?;
            note_run(&run);
            let strict = run
                .cycles
                .as_deref()
                .unwrap_or_default()
                .iter()
                .filter(|c| c.states().iter().any(|s| !s.is_simple()))
                .count() as u64;
            equality(formula, strict)
        }
        Family::Colored => {
            let formula = formula_value(args)?;
            let run = colored_cycles(
                &query(Variant::Colored { colors: vec![1, 2] }, n, cap).listing(true),
            )?;
            note_run(&run);
            let labeled = run.count;
            let quotient = quotient_color_count(run.cycles.as_deref().unwrap_or_default());
            let (oracle, convention) = if args.quotient_colors {
                (quotient, "quotient")
            } else if formula == labeled.to_string() {
                (labeled, "labeled")
            } else {
                (quotient, "quotient")
            };
            Comparison {
                agree: formula == oracle.to_string(),
                formula,
                oracle: oracle.to_string(),
                note: Some(format!(
                    "{convention} convention; labeled {labeled}, quotient {quotient}"
                )),
            }
        }
        Family::Passing => {
            let formula = formula_value(args)?;
            let run = passing_cycles(&query(
                Variant::Passing {
                    balls: 1,
                    hands: args.k as u8,
                },
                n,
                cap,
            ))?;
            note_run(&run);
            equality(formula, run.count)
        }
        Family::BaseState => {
            let formula = formula_value(args)?;
            let base = parse_normal("11")?;
            let run = cycles_through(&base, n, Budget::default(), false, |cap| {
                normal_states(2, cap)
            })?;
            note_run(&run);
            equality(formula, run.count)
        }
        Family::NormalLower => {
            let bound = lower_bound_normal_b(args.balls, args.period);
            let run = normal_cycles(&query(
                Variant::Normal {
                    balls: args.balls as u32,
                },
                n,
                cap,
            ))?;
            note_run(&run);
            Comparison {
                agree: bound <= Rat::from_integer(Int::from(run.count)),
                formula: rational_string(&bound),
                oracle: run.count.to_string(),
                note: Some("lower bound, agreement means bound <= oracle".into()),
            }
        }
        Family::PassingLowerExact | Family::PassingLowerClosed => {
            let exact = lower_bound_passing_2_exact(n, args.k)?;
            let closed = lower_bound_passing_2_closed(args.period, args.k);
            let conservative = lower_bound_passing_2_closed_conservative(args.period, args.k);
            let run = passing_cycles(&query(
                Variant::Passing {
                    balls: 2,
                    hands: args.k as u8,
                },
                n,
                cap,
            ))?;
            note_run(&run);
            let oracle = Int::from(run.count);
            let agree = exact <= oracle && closed <= oracle && closed <= exact;
            Comparison {
                agree,
                formula: format!("exact {exact}, closed {closed} (conservative {conservative})"),
                oracle: oracle.to_string(),
                note: Some("lower bounds, agreement means closed <= exact <= oracle".into()),
            }
        }
    };

    match cli.format {
        Format::Json => {
            let report = CountReport::new(args.family.name(), params_json(args), &cmp.formula)
                .with_oracle(&cmp.oracle, cmp.agree);
            println!("{}", report.to_json());
        }
        _ => {
            let verdict = if cmp.agree { "AGREE" } else { "DISAGREE" };
            match &cmp.note {
                Some(note) => println!(
                    "formula {}, oracle {} ({note}), {verdict}",
                    cmp.formula, cmp.oracle
                ),
                None => println!("formula {}, oracle {}, {verdict}", cmp.formula, cmp.oracle),
            }
        }
    }
    Ok(cmp.agree)
}

fn equality(formula: String, oracle: u64) -> Comparison {
    Comparison {
        agree: formula == oracle.to_string(),
        formula,
        oracle: oracle.to_string(),
        note: None,
    }
}

fn query(variant: Variant, n: usize, cap: CapSpec) -> OracleQuery {
    OracleQuery::new(variant, n).with_cap(cap)
}

fn note_run<S>(run: &OracleRun<S>) {
    eprintln!("oracle: stabilised at cap {} in {:.2?}", run.cap, run.wall);
}

// ---------------------------------------------------------------------------
// oracle / enumerate
// ---------------------------------------------------------------------------

fn oracle_variant(args: &OracleArgs) -> Variant {
    match args.variant {
        VariantKind::Normal => Variant::Normal { balls: args.balls },
        VariantKind::Multiplex => Variant::Multiplex {
            balls: args.balls,
            capacity: args.k,
        },
        VariantKind::Colored => Variant::Colored {
            colors: (1..=args.balls as u8).collect(),
        },
        VariantKind::Passing => Variant::Passing {
            balls: args.balls,
            hands: args.k,
        },
    }
}

fn run_oracle(
    cli: &Cli,
    args: &OracleArgs,
    cache: Option<&mut cache::Cache>,
    listing: bool,
) -> Result<bool> {
    let cap = cap_spec(cli)?;
    let variant = oracle_variant(args);
    let key = cache::op_key(
        "oracle",
        &[
            ("variant", variant.label().to_string()),
            ("b", args.balls.to_string()),
            ("n", args.period.to_string()),
            ("k", args.k.to_string()),
            ("cap", cli.cap.clone()),
            ("through", args.through.clone().unwrap_or_default()),
            ("quotient", args.quotient_colors.to_string()),
        ],
    );
    if !listing {
        if let Some(hit) = cache.as_ref().and_then(|c| c.oracle.get(&key)) {
            let (count, cap) = hit
                .split_once(';')
                .ok_or_else(|| anyhow!("damaged cache entry"))?;
            eprintln!("oracle: cache hit, stabilised cap {cap}");
            println!("{count}");
            return Ok(true);
        }
    }

    let need_listing = listing || args.quotient_colors;
    let (count, cap_used, records) = match (&variant, &args.through) {
        (Variant::Normal { .. }, None) => {
            let run =
                normal_cycles(&query(variant.clone(), args.period, cap).listing(need_listing))?;
            (
                run.count,
                run.cap,
                listing.then(|| records_for(&variant, &run)).transpose()?,
            )
        }
        (Variant::Normal { balls }, Some(text)) => {
            let state = parse_normal(text)?;
            let b = *balls;
            let run = cycles_through(&state, args.period, Budget::default(), listing, |cap| {
                normal_states(b, cap)
            })?;
            (
                run.count,
                run.cap,
                listing.then(|| records_for(&variant, &run)).transpose()?,
            )
        }
        (Variant::Multiplex { .. }, None) => {
            let run =
                multiplex_cycles(&query(variant.clone(), args.period, cap).listing(need_listing))?;
            (
                run.count,
                run.cap,
                listing.then(|| records_for(&variant, &run)).transpose()?,
            )
        }
        (Variant::Multiplex { balls, capacity }, Some(text)) => {
            let state = parse_multiplex(text, *capacity)?;
            let (b, k) = (*balls, *capacity);
            let run = cycles_through(&state, args.period, Budget::default(), listing, |cap| {
                multiplex_states(b, k, cap)
            })?;
            (
                run.count,
                run.cap,
                listing.then(|| records_for(&variant, &run)).transpose()?,
            )
        }
        (Variant::Colored { .. }, None) => {
            let run =
                colored_cycles(&query(variant.clone(), args.period, cap).listing(need_listing))?;
            let count = if args.quotient_colors {
                quotient_color_count(run.cycles.as_deref().unwrap_or_default())
            } else {
                run.count
            };
            (
                count,
                run.cap,
                listing.then(|| records_for(&variant, &run)).transpose()?,
            )
        }
        (Variant::Passing { .. }, None) => {
            let run =
                passing_cycles(&query(variant.clone(), args.period, cap).listing(need_listing))?;
            let records = listing.then(|| {
                run.cycles
                    .as_deref()
                    .unwrap_or_default()
                    .iter()
                    .map(|c| cycle_record(&variant, c, None))
                    .collect::<Vec<_>>()
            });
            (run.count, run.cap, records)
        }
        (_, Some(_)) => bail!("--through supports the normal and multiplex variants"),
    };

    eprintln!("oracle: stabilised at cap {cap_used}");
    if let Some(records) = records {
        for record in records {
            println!("{record}");
        }
    } else {
        println!("{count}");
        if let Some(cache) = cache {
            cache.oracle.put(key, format!("{count};{cap_used}"));
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

fn run_table(cli: &Cli, args: &TableArgs) -> Result<bool> {
    let _ = cli;
    match args.which {
        TableKind::Mpx => {
            let (from, to) = (args.from.unwrap_or(1), args.to.unwrap_or(30));
            println!("n,multiplex");
            for n in from..=to {
                println!("{n},{}", count_multiplex_prime_2(n));
            }
        }
        TableKind::Normal => {
            let (from, to) = (args.from.unwrap_or(1), args.to.unwrap_or(30));
            println!("n,normal");
            for n in from..=to {
                println!("{n},{}", count_normal_prime_2(n));
            }
        }
        TableKind::GammaB => {
            let (from, to) = (args.from.unwrap_or(3), args.to.unwrap_or(7));
            println!("b,gamma");
            for b in from..=to {
                let eval = gamma(GammaKind::BBall(b), 60, 50);
                println!("{b},{}", eval.decimal(4));
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// asymptotics
// ---------------------------------------------------------------------------

fn run_asymptotics(cli: &Cli, cmd: &AsymptoticsCmd) -> Result<bool> {
    match cmd {
        AsymptoticsCmd::Gamma { kind, k, terms } => {
            let kind = match kind {
                GammaKindArg::Normal => GammaKind::NormalPrime,
                GammaKindArg::Strict => GammaKind::StrictMultiplex,
                GammaKindArg::Multiplex => GammaKind::Multiplex,
                GammaKindArg::Colored => GammaKind::Colored,
                GammaKindArg::Base => GammaKind::BaseState,
                GammaKindArg::Passing => GammaKind::PassingLower(*k),
                GammaKindArg::Bball => GammaKind::BBall(*k),
            };
            let eval = gamma(kind, *terms, cli.precision);
            let digits = cli.precision.min(40);
            match cli.format {
                Format::Csv => {
                    println!("t,partial");
                    for (t, partial) in &eval.trace {
                        println!("{t},{}", to_decimal(partial, digits));
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "kind": eval.kind.label(),
                            "terms": eval.terms,
                            "value": eval.decimal(digits),
                            "tail_estimate": eval.tail_estimate.as_ref().map(|t| to_decimal(t, digits)),
                        })
                    );
                }
                Format::Plain => {
                    let tail = eval
                        .tail_estimate
                        .as_ref()
                        .map(|t| to_decimal(t, digits))
                        .unwrap_or_else(|| "n/a".into());
                    println!(
                        "{} = {} (terms {}, tail estimate {tail})",
                        eval.kind.label(),
                        eval.decimal(digits),
                        eval.terms
                    );
                }
            }
        }
        AsymptoticsCmd::Qt { to } => {
            println!("t,q_t,decimal");
            for (t, q) in q_seq(*to).iter().enumerate() {
                println!("{},{},{}", t + 1, q, to_decimal(q, cli.precision.min(30)));
            }
        }
        AsymptoticsCmd::Rt { to } => {
            println!("t,lo,hi");
            let digits = cli.precision.min(30);
            for t in 1..=*to {
                let interval = r(t, cli.precision);
                println!(
                    "{t},{},{}",
                    to_decimal(&interval.lo, digits),
                    to_decimal(&interval.hi, digits)
                );
            }
        }
        AsymptoticsCmd::VerifyBounds { tmax, nmax } => {
            let rows = verify_ct_bounds(*tmax, *nmax, cli.precision)?;
            let violations = rows.iter().filter(|r| !(r.upper_holds && r.lower_holds));
            let bad: Vec<String> = violations.map(|r| format!("t={} n={}", r.t, r.n)).collect();
            if cli.format == Format::Csv {
                println!("t,n,c,upper_holds,lower_holds,lower_vacuous");
                for row in &rows {
                    println!(
                        "{},{},{},{},{},{}",
                        row.t,
                        row.n,
                        row.value,
                        row.upper_holds,
                        row.lower_holds,
                        row.lower_vacuous
                    );
                }
            } else {
                println!(
                    "{} pairs checked, {} violations{}",
                    rows.len(),
                    bad.len(),
                    if bad.is_empty() {
                        String::new()
                    } else {
                        format!(": {}", bad.join(", "))
                    }
                );
            }
            return Ok(bad.is_empty());
        }
        AsymptoticsCmd::Limits {
            weight,
            to,
            statement,
        } => {
            let weight = match weight {
                WeightArg::One => Weight::One,
                WeightArg::T => Weight::T,
            };
            let rows = empirical_limits(weight, *to);
            println!("n,ratio,target,error");
            for row in rows {
                let (ratio, target) = match statement {
                    StatementArg::F => (&row.f_ratio, &row.gamma),
                    StatementArg::S => (&row.s_ratio, &row.gamma),
                    StatementArg::Conv => (&row.conv_ratio, &row.gamma_squared),
                };
                let error = target - ratio;
                println!(
                    "{},{},{},{}",
                    row.n,
                    to_decimal(ratio, 8),
                    to_decimal(target, 8),
                    to_decimal(&error, 8)
                );
            }
        }
        AsymptoticsCmd::PassingRatio { k, to, exact_to } => {
            use pjl_core::rational::pow_int;
            println!("n,closed,closed_ratio,exact,exact_ratio");
            for n in 1..=*to {
                let power = Rat::from_integer(pow_int(&Int::from(1 + k), n));
                let closed = lower_bound_passing_2_closed(n, *k);
                let closed_ratio = Rat::from_integer(closed.clone()) / &power;
                let exact = (n <= *exact_to)
                    .then(|| lower_bound_passing_2_exact(n as usize, *k))
                    .transpose()?;
                let (exact_str, exact_ratio) = match exact {
                    Some(value) => {
                        let ratio = Rat::from_integer(value.clone()) / &power;
                        (value.to_string(), to_decimal(&ratio, 6))
                    }
                    None => (String::new(), String::new()),
                };
                println!(
                    "{n},{closed},{},{exact_str},{exact_ratio}",
                    to_decimal(&closed_ratio, 6)
                );
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// ferrers
// ---------------------------------------------------------------------------

fn run_ferrers(cli: &Cli, cmd: &FerrersCmd) -> Result<bool> {
    match cmd {
        FerrersCmd::Diagrams {
            period,
            balls,
            list,
        } => {
            println!("partition,fills,closed_form");
            for t in 1..=max_parts(*period).max(1) {
                for partition in distinct_partitions(*period, t) {
                    let fills = enumerate_filled_diagrams(&partition, *balls);
                    let display = count_filled_diagrams_display(&partition, *balls);
                    debug_assert_eq!(
                        Int::from(fills.len()),
                        count_filled_diagrams(&partition, *balls)
                    );
                    println!("{partition},{},{}", fills.len(), rational_string(&display));
                    if *list {
                        for fill in &fills {
                            let grid: Vec<String> = fill
                                .rows()
                                .iter()
                                .map(|row| {
                                    row.iter()
                                        .map(|v| v.to_string())
                                        .collect::<Vec<_>>()
                                        .join(",")
                                })
                                .collect();
                            println!("  {}", grid.join(";"));
                        }
                    }
                }
            }
        }
        FerrersCmd::Family { period, balls } => {
            let report = generate_family(*balls, *period)?;
            match cli.format {
                Format::Plain => {
                    println!(
                        "b={} n={}: raw words {}, enumerated {}, distinct cycles {}, collisions {}, all prime {}, bound {}",
                        report.balls,
                        report.period,
                        report.raw_word_count,
                        report.enumerated_words,
                        report.distinct_cycles,
                        report.collisions,
                        report.all_prime,
                        report.lower_bound
                    );
                }
                _ => println!("{}", serde_json::to_string(&report)?),
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// infinite
// ---------------------------------------------------------------------------

fn run_infinite(cli: &Cli, cmd: &InfiniteCmd) -> Result<bool> {
    let _ = cli;
    match cmd {
        InfiniteCmd::Fr { state } => {
            let state = AbbrevState::from_str(state)?;
            println!("{}", state.fr());
        }
        InfiniteCmd::Succ { state, max_len } => {
            let state = AbbrevState::from_str(state)?;
            for successor in state.successors(*max_len)? {
                println!("{successor}");
            }
        }
        InfiniteCmd::Realize { state, balls } => {
            let state = AbbrevState::from_str(state)?;
            println!("{}", state.realize(*balls)?);
        }
        InfiniteCmd::Walks {
            state,
            length,
            max_len,
        } => {
            let state = AbbrevState::from_str(state)?;
            let counts = count_walks_through(&state, *length, *max_len)?;
            eprintln!("with multiplicity: {}", counts.with_multiplicity);
            println!("{}", counts.through);
        }
    }
    Ok(true)
}
