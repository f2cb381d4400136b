//! Text renderers for the CLI. Each returns the full output as a `String`.

use std::fmt::Write as _;

use anyhow::Result;
use qubitwise_core::analysis::{all_qubit_stats, pair_stats_for, stabilizer_renyi_entropy};
use qubitwise_core::measurement::{BranchTree, Histogram};
use qubitwise_core::StateVector;

use crate::bench::{SimReport, TraceReport};
use crate::format::{bits, complex, real, ZERO_THRESHOLD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StateView {
    #[default]
    Amplitudes,
    Probabilities,
}

/// One `bits: value` line per basis state whose value does not print as 0.
/// If nothing survives (an all-zero vector), prints nothing.
pub fn render_state(psi: &StateVector, view: StateView) -> String {
    let mut out = String::new();
    write_state(&mut out, psi, view, "");
    out
}

fn write_state(out: &mut String, psi: &StateVector, view: StateView, indent: &str) {
    for (i, a) in psi.amplitudes().iter().enumerate() {
        let value = match view {
            StateView::Amplitudes if a.norm() >= ZERO_THRESHOLD => complex(*a),
            StateView::Probabilities if a.norm_sqr() >= ZERO_THRESHOLD => real(a.norm_sqr()),
            _ => continue,
        };
        if value == "0" {
            continue;
        }
        writeln!(out, "{indent}{}: {value}", bits(i, psi.n())).expect("String write");
    }
}

/// Each leaf: its outcomes and probability, the original wires its residual
/// covers (most significant first, matching the bit strings), then the
/// residual state.
pub fn render_branches(tree: &BranchTree, view: StateView) -> String {
    let mut out = String::new();
    for leaf in tree.leaves() {
        let outcomes: Vec<String> = leaf
            .outcomes
            .iter()
            .map(|(w, b)| format!("q{w}={b}"))
            .collect();
        let label = if outcomes.is_empty() {
            "(none)".to_string()
        } else {
            outcomes.join(" ")
        };
        writeln!(
            out,
            "outcome {label} probability {}",
            real(leaf.probability)
        )
        .expect("String write");
        let wires: Vec<String> = leaf.wires.iter().rev().map(|w| format!("q{w}")).collect();
        let wires = if wires.is_empty() {
            "(none)".to_string()
        } else {
            wires.join(" ")
        };
        writeln!(out, "  wires {wires}").expect("String write");
        write_state(&mut out, &leaf.state, view, "  ");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum StatsFormat {
    /// Aligned columns, one row per qubit.
    #[default]
    Table,
    /// `qN.field value` lines.
    Kv,
}

const STAT_COLUMNS: [&str; 9] = [
    "prob1",
    "x",
    "y",
    "z",
    "r",
    "theta",
    "phi",
    "purity",
    "lin_entropy",
];

pub struct StatsRequest {
    pub pair: Option<(usize, usize)>,
    pub magic: bool,
    pub format: StatsFormat,
}

pub fn render_stats(psi: &StateVector, request: &StatsRequest) -> Result<String> {
    let mut out = String::new();
    let stats = all_qubit_stats(psi)?;
    let rows: Vec<[String; 9]> = stats
        .iter()
        .map(|s| {
            [
                s.prob1,
                s.x,
                s.y,
                s.z,
                s.r,
                s.theta,
                s.phi,
                s.purity,
                s.linear_entropy,
            ]
            .map(real)
        })
        .collect();
    match request.format {
        StatsFormat::Table => {
            let mut widths = STAT_COLUMNS.map(str::len);
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let qubit_width = "qubit".len().max(stats.len().to_string().len());
            let mut line = format!("{:>qubit_width$}", "qubit");
            for (name, w) in STAT_COLUMNS.iter().zip(widths) {
                write!(line, "  {name:>w$}").expect("String write");
            }
            writeln!(out, "{}", line.trim_end()).expect("String write");
            for (q, row) in rows.iter().enumerate() {
                let mut line = format!("{q:>qubit_width$}");
                for (cell, w) in row.iter().zip(widths) {
                    write!(line, "  {cell:>w$}").expect("String write");
                }
                writeln!(out, "{line}").expect("String write");
            }
        }
        StatsFormat::Kv => {
            for (q, row) in rows.iter().enumerate() {
                for (name, cell) in STAT_COLUMNS.iter().zip(row) {
                    writeln!(out, "q{q}.{name} {cell}").expect("String write");
                }
            }
        }
    }
    if let Some((i, j)) = request.pair {
        let p = pair_stats_for(psi, i, j)?;
        let fields = [
            ("purity", p.purity),
            ("lin_entropy", p.linear_entropy),
            ("concurrence", p.concurrence),
            ("von_neumann", p.von_neumann_entropy),
        ];
        for (name, value) in fields {
            writeln!(out, "pair({i},{j}).{name} {}", real(value)).expect("String write");
        }
    }
    if request.magic {
        let m = stabilizer_renyi_entropy(psi)?;
        writeln!(out, "magic.m2 {}", real(m)).expect("String write");
    }
    Ok(out)
}

/// `key: count` lines in key order. Circuits without measurements have a
/// single empty key, printed as `-`.
pub fn render_histogram(histogram: &Histogram) -> String {
    let mut out = String::new();
    for (key, count) in histogram {
        let key = if key.is_empty() { "-" } else { key.as_str() };
        writeln!(out, "{key}: {count}").expect("String write");
    }
    out
}

pub fn render_sim_report(r: &SimReport) -> String {
    format!(
        "method {:?}\nqubits {}\ndepth {}\nseconds {}\n",
        r.method,
        r.qubits,
        r.depth,
        real(r.seconds)
    )
    .to_lowercase()
}

pub fn render_trace_report(r: &TraceReport) -> String {
    format!(
        "method {:?}\nqubits {}\nkeep {}\nseconds {}\n",
        r.method,
        r.qubits,
        r.keep,
        real(r.seconds)
    )
    .to_lowercase()
}
