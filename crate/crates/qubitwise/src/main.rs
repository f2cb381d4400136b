use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use qubitwise::bench::{bench_simulation, bench_trace, GateSet, SimMethod, TraceMethod};
use qubitwise::load_circuit;
use qubitwise::report::{
    render_branches, render_histogram, render_sim_report, render_state, render_stats,
    render_trace_report, StateView, StatsFormat, StatsRequest,
};
use qubitwise_core::engine::run_circuit;
use qubitwise_core::measurement::{run_with_branches, sample_shots};
use qubitwise_core::StateVector;

/// State-vector quantum circuit simulator.
#[derive(Parser)]
#[command(name = "qubitwise", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a circuit from |0...0> and print the final state.
    Simulate(SimulateArgs),
    /// Per-qubit Bloch statistics, optional pair statistics and magic.
    Stats(StatsArgs),
    /// Sample measurement outcomes.
    Sample(SampleArgs),
    /// Time a seeded random circuit.
    Bench(BenchArgs),
    /// Time a partial trace of a seeded random state.
    BenchTrace(BenchTraceArgs),
}

#[derive(Args)]
struct SimulateArgs {
    file: PathBuf,
    /// Print amplitudes (the default).
    #[arg(long, conflicts_with = "probs")]
    amplitudes: bool,
    /// Print probabilities instead of amplitudes.
    #[arg(long)]
    probs: bool,
    /// Print every measurement branch. Implied when the circuit measures.
    #[arg(long)]
    branches: bool,
}

#[derive(Args)]
struct StatsArgs {
    file: PathBuf,
    /// Also report purity, linear entropy, concurrence and von Neumann
    /// entropy of wires I and J.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pair: Option<Vec<usize>>,
    /// Also report the stabilizer Renyi entropy (at most 10 qubits).
    #[arg(long)]
    magic: bool,
    #[arg(long, value_enum, default_value_t)]
    format: StatsFormat,
}

#[derive(Args)]
struct SampleArgs {
    file: PathBuf,
    #[arg(long)]
    shots: u64,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    qubits: usize,
    #[arg(long)]
    depth: usize,
    #[arg(long, value_enum)]
    method: SimMethod,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t)]
    gates: GateSet,
}

#[derive(Args)]
struct BenchTraceArgs {
    #[arg(long)]
    qubits: usize,
    /// Number of low qubits kept.
    #[arg(long)]
    keep: usize,
    #[arg(long, value_enum)]
    method: TraceMethod,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Simulate(args) => {
            let circuit = load_circuit(&args.file)?;
            let view = if args.probs {
                StateView::Probabilities
            } else {
                StateView::Amplitudes
            };
            let psi0 = StateVector::zero(circuit.n())?;
            if args.branches || circuit.has_measurements() {
                Ok(render_branches(&run_with_branches(&circuit, &psi0)?, view))
            } else {
                Ok(render_state(&run_circuit(&circuit, &psi0)?, view))
            }
        }
        Command::Stats(args) => {
            let circuit = load_circuit(&args.file)?;
            let psi = run_circuit(&circuit, &StateVector::zero(circuit.n())?)?;
            let request = StatsRequest {
                pair: args.pair.map(|p| (p[0], p[1])),
                magic: args.magic,
                format: args.format,
            };
            render_stats(&psi, &request)
        }
        Command::Sample(args) => {
            if args.shots == 0 {
                bail!("--shots must be at least 1");
            }
            let circuit = load_circuit(&args.file)?;
            let psi0 = StateVector::zero(circuit.n())?;
            Ok(render_histogram(&sample_shots(
                &circuit, &psi0, args.shots, args.seed,
            )?))
        }
        Command::Bench(args) => {
            let report =
                bench_simulation(args.qubits, args.depth, args.method, args.gates, args.seed)?;
            Ok(render_sim_report(&report))
        }
        Command::BenchTrace(args) => {
            let report = bench_trace(args.qubits, args.keep, args.method, args.seed)?;
            Ok(render_trace_report(&report))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
