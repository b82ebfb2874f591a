//! Data-parallel map with a sequential fallback.
//!
//! Enumeration work in this crate is partitioned over independent units
//! (oracle root states, Ferrers partitions) and merged order-insensitively,
//! so results are identical whether the `parallel` feature is enabled or not.

/// True when this build runs map operations on a rayon pool.
#[cfg(feature = "parallel")]
pub fn is_parallel() -> bool {
    true
}

/// True when this build runs map operations on a rayon pool.
#[cfg(not(feature = "parallel"))]
pub fn is_parallel() -> bool {
    false
}

/// Maps `f` over `items`, preserving input order in the output.
#[cfg(feature = "parallel")]
pub fn map_units<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

/// Maps `f` over `items`, preserving input order in the output.
#[cfg(not(feature = "parallel"))]
pub fn map_units<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Caps the worker count for subsequent parallel maps. Returns false when the
/// pool was already initialised (rayon allows one global configuration).
#[cfg(feature = "parallel")]
pub fn configure_jobs(jobs: usize) -> bool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .is_ok()
}

/// No-op in sequential builds.
#[cfg(not(feature = "parallel"))]
pub fn configure_jobs(_jobs: usize) -> bool {
    false
}
