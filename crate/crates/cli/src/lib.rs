//! Verification harness for the defective correspondence coloring results:
//! claim procedures, the seeded fuzzer and the file-level commands behind
//! the `dcc` binary.

pub mod claims;
pub mod commands;
pub mod error;
pub mod fuzz;
pub mod report;

pub use error::CliError;
pub use report::{Check, Report, Verdict};

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Threads(e.to_string()))?;
    Ok(pool.install(f))
}
