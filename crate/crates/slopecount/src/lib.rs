//! Parallel point counting, verification suites, a JSON-lines result cache
//! and the `slopecount` command-line front-end, on top of `slopecount-core`.

pub mod cache;
pub mod count;
mod error;
pub mod suites;

pub use count::{count_zeros, tabulate_by_type, CountOptions, CountReport, TypeRow};
pub use error::Error;

pub use slopecount_core as core;

/// Environment variable overriding the default worker count.
pub const THREADS_ENV: &str = "SLOPECOUNT_THREADS";

/// Worker count from `SLOPECOUNT_THREADS`, else the available parallelism.
pub fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}
