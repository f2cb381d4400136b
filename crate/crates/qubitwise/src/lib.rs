//! Circuit files, text output and benchmarks on top of [`qubitwise_core`].
//!
//! - [`qc`]: the `.qc` circuit format (parser and printer).
//! - [`format`]: number formatting shared by all CLI output.
//! - [`report`]: renderers for the `simulate`, `stats`, `sample` and bench
//!   commands.
//! - [`bench`]: timed runs behind `bench` and `bench-trace`.

pub mod bench;
pub mod format;
pub mod qc;
pub mod report;

pub use qc::{parse_circuit, print_circuit, ParseError};

use std::path::Path;

use anyhow::Context;
use qubitwise_core::Circuit;

/// Reads and parses a `.qc` file.
pub fn load_circuit(path: &Path) -> anyhow::Result<Circuit> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_circuit(&text).with_context(|| path.display().to_string())
}
