//! Command-line harness for the congruence catalog: parallel sweeps,
//! JSONL/CSV/table reports and a persistent sequence cache.

pub mod cache;
pub mod cli;
pub mod config;
pub mod report;
pub mod run;

use std::sync::OnceLock;
use std::time::Instant;

/// Microseconds since the first call; the clock behind the `us` field.
pub fn micros() -> u64 {
    static START: OnceLock<Instant> = OnceLock::new();
    START.get_or_init(Instant::now).elapsed().as_micros() as u64
}
