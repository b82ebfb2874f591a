//! Exact enumeration of prime juggling patterns and their variants.
//!
//! A prime pattern of period `n` is a simple cycle of length `n` in the state
//! graph of a juggling variant: normal (single throws), multiplex (up to `k`
//! balls per landing site), colored (distinguishable balls), and passing
//! (`k` hands). The crate pairs closed-form counts with a brute-force
//! state-graph oracle so that every formula can be checked differentially at
//! desk scale, and evaluates the asymptotic constants governing the growth of
//! each count.
//!
//! Modules:
//! - [`states`]: the four state representations, transition generation, cards.
//! - [`oracle`]: brute-force prime-cycle enumeration with cap-stability sweep.
//! - [`partitions`]: distinct-part partitions, `c(t, n)`, spacing collections
//!   and their bijection with 2-ball patterns.
//! - [`counting`]: all closed-form counts and lower bounds.
//! - [`ferrers`]: filled Ferrers diagrams, landing words and the generated
//!   b-ball pattern family.
//! - [`asymptotics`]: `q_t`, `r_t`, the gamma constants, and numeric bound
//!   verification via exact rational intervals.
//! - [`infinite`]: the infinite state graph, flip-reverse involution, and
//!   windowed walk counting.

pub mod asymptotics;
pub mod counting;
pub mod ferrers;
pub mod infinite;
pub mod interval;
pub mod oracle;
pub mod par;
pub mod partitions;
pub mod rational;
pub mod states;

mod error;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
