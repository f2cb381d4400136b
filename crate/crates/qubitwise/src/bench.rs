//! Wall-clock comparisons: full-matrix vs. qubit-wise simulation, and
//! density-matrix vs. state-vector partial traces.

use std::time::Instant;

use anyhow::{Context, Result};
use qubitwise_core::analysis::{partial_trace_matrix, partial_trace_state, Selection};
use qubitwise_core::engine::Engine;
use qubitwise_core::linalg::outer;
use qubitwise_core::oracle::simulate_naive;
use qubitwise_core::random::{random_circuit, random_state, CircuitOptions};
use qubitwise_core::{Circuit, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SimMethod {
    /// Multiply by a full 2^n x 2^n matrix per step.
    Naive,
    Qubitwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum GateSet {
    /// Uncontrolled single-qubit catalog gates.
    #[default]
    Single,
    /// Whole catalog with random controls and anticontrols.
    Full,
}

impl GateSet {
    fn options(self) -> CircuitOptions {
        match self {
            GateSet::Single => CircuitOptions::single_qubit(),
            GateSet::Full => CircuitOptions::full(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TraceMethod {
    /// Build `|ψ⟩⟨ψ|`, then trace the matrix.
    Matrix,
    /// Trace straight from the amplitudes.
    Statevector,
}

#[derive(Debug, Clone)]
pub struct SimReport {
    pub qubits: usize,
    pub depth: usize,
    pub method: SimMethod,
    pub seconds: f64,
    pub state: StateVector,
}

/// The seeded random circuit that [`bench_simulation`] runs.
pub fn bench_circuit(qubits: usize, depth: usize, gates: GateSet, seed: u64) -> Result<Circuit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_circuit(&mut rng, qubits, depth, &gates.options())?)
}

pub fn bench_simulation(
    qubits: usize,
    depth: usize,
    method: SimMethod,
    gates: GateSet,
    seed: u64,
) -> Result<SimReport> {
    let circuit = bench_circuit(qubits, depth, gates, seed)?;
    let psi0 = StateVector::zero(qubits)?;
    let start = Instant::now();
    let state = match method {
        SimMethod::Naive => simulate_naive(&circuit, &psi0).context("naive simulation")?,
        SimMethod::Qubitwise => Engine::default().run(&circuit, &psi0)?,
    };
    Ok(SimReport {
        qubits,
        depth,
        method,
        seconds: start.elapsed().as_secs_f64(),
        state,
    })
}

#[derive(Debug, Clone)]
pub struct TraceReport {
    pub qubits: usize,
    pub keep: usize,
    pub method: TraceMethod,
    pub seconds: f64,
}

/// Times the reduction of a seeded random `qubits`-qubit state to its lowest
/// `keep` qubits.
pub fn bench_trace(
    qubits: usize,
    keep: usize,
    method: TraceMethod,
    seed: u64,
) -> Result<TraceReport> {
    anyhow::ensure!(keep <= qubits, "cannot keep {keep} of {qubits} qubits");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = random_state(&mut rng, qubits)?;
    let kept: Vec<usize> = (0..keep).collect();
    let start = Instant::now();
    let reduced = match method {
        TraceMethod::Matrix => {
            let rho = outer(&psi, &psi)?;
            partial_trace_matrix(qubits, &rho, &kept, Selection::Keep)?
        }
        TraceMethod::Statevector => {
            partial_trace_state(&psi, &kept, Selection::Keep)?.into_matrix()
        }
    };
    let seconds = start.elapsed().as_secs_f64();
    std::hint::black_box(reduced);
    Ok(TraceReport {
        qubits,
        keep,
        method,
        seconds,
    })
}
