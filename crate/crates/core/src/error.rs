use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A height cap was too small for the state it should contain.
    #[error("height cap {cap} is smaller than the state span {span}")]
    CapTooSmall { cap: usize, span: usize },

    /// A pair of states violates the landing condition `from[i+1] <= to[i]`.
    /// `index` is the 1-based position of the first violated condition.
    #[error("invalid transition: landing condition violated at position {index}")]
    InvalidTransition { index: usize },

    /// A pair of states does not carry the same number of balls.
    #[error("invalid transition: ball count changes from {from} to {to}")]
    BallCountMismatch { from: u32, to: u32 },

    /// A state sequence is not a closed walk; `index` is the failing step.
    #[error("not a closed walk: step {index} is not a valid transition")]
    NotClosed { index: usize },

    /// Enumeration gave up before stabilising.
    #[error("enumeration budget exceeded at cap {cap} (count so far: {partial})")]
    BudgetExceeded { cap: usize, partial: u64 },

    /// An exact-rational accumulation that must be an integer was not.
    /// This signals an implementation bug, never bad input.
    #[error("internal consistency error: accumulated value {value} is not an integer")]
    NonIntegral { value: String },

    /// Textual state or word syntax could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// An abbreviated state holds more balls than the requested realization.
    #[error("state has {ones} scheduled balls but only {balls} were requested")]
    InsufficientBalls { ones: u32, balls: u32 },

    /// The pattern-generation algorithm could not assign a throw.
    #[error("malformed landing word: {0}")]
    MalformedWord(String),

    /// A spacing collection violates disjointness or non-emptiness.
    #[error("invalid spacing collection: {0}")]
    InvalidSpacings(String),

    /// Catch-all for invalid arguments.
    #[error("{0}")]
    Invalid(String),
}
