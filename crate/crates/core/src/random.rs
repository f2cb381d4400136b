//! Seeded random circuits and states for tests and benchmarks.

use alloc::vec::Vec;
use core::f64::consts::TAU;

// Float methods for f64 under no_std; std provides them inherently in tests.
#[allow(unused_imports)]
use num_traits::Float;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{Circuit, Control, ControlSpec, GateOp};
use crate::gates::Gate;
use crate::linalg::{Complex, StateVector};
use crate::Result;

#[derive(Debug, Clone)]
pub struct CircuitOptions {
    /// Gates drawn uniformly from this list. Two-qubit gates are skipped when
    /// `n < 2`.
    pub gates: Vec<Gate>,
    /// Gates that may receive controls; the rest are always uncontrolled.
    pub controllable: Vec<Gate>,
    /// Upper bound on control plus anticontrol wires per gate.
    pub max_controls: usize,
    /// Probability that a chosen control wire is an anticontrol.
    pub anti_probability: f64,
}

impl CircuitOptions {
    /// Whole catalog, up to two controls, half of them anticontrols.
    pub fn full() -> Self {
        Self {
            gates: Gate::ALL.to_vec(),
            controllable: Gate::ALL.to_vec(),
            max_controls: 2,
            anti_probability: 0.5,
        }
    }

    /// Uncontrolled single-qubit catalog gates.
    pub fn single_qubit() -> Self {
        Self {
            gates: Gate::ALL.into_iter().filter(|g| g.arity() == 1).collect(),
            controllable: Vec::new(),
            max_controls: 0,
            anti_probability: 0.0,
        }
    }

    /// H, S, SWAP and singly (anti)controlled Paulis, so every circuit is
    /// Clifford.
    pub fn clifford() -> Self {
        Self {
            gates: alloc::vec![
                Gate::H,
                Gate::S,
                Gate::Sdg,
                Gate::X,
                Gate::Y,
                Gate::Z,
                Gate::Swap
            ],
            controllable: alloc::vec![Gate::X, Gate::Y, Gate::Z],
            max_controls: 1,
            anti_probability: 0.5,
        }
    }
}

impl Default for CircuitOptions {
    fn default() -> Self {
        Self::full()
    }
}

/// One random step on `n` wires, or `None` if no listed gate fits.
pub fn random_op<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    options: &CircuitOptions,
) -> Option<GateOp> {
    let fitting: Vec<Gate> = options
        .gates
        .iter()
        .copied()
        .filter(|g| g.arity() <= n)
        .collect();
    let gate = *fitting.choose(rng)?;
    let mut wires: Vec<usize> = (0..n).collect();
    wires.shuffle(rng);
    let targets = &wires[..gate.arity()];
    let free = if options.controllable.contains(&gate) {
        n - gate.arity()
    } else {
        0
    };
    let count = rng.gen_range(0..=options.max_controls.min(free));
    let controls = wires[gate.arity()..gate.arity() + count]
        .iter()
        .map(|&w| {
            if rng.gen_bool(options.anti_probability) {
                Control::anti(w)
            } else {
                Control::on(w)
            }
        })
        .collect();
    let controls = ControlSpec::new(controls).expect("wires are distinct");
    Some(GateOp::gate(gate, targets, controls))
}

/// `depth` random steps on `n` wires.
pub fn random_circuit<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    depth: usize,
    options: &CircuitOptions,
) -> Result<Circuit> {
    let mut circuit = Circuit::new(n)?;
    for _ in 0..depth {
        if let Some(op) = random_op(rng, n, options) {
            circuit.push(op)?;
        }
    }
    Ok(circuit)
}

/// Standard normal sample (Box-Muller).
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

/// Haar-random pure state: i.i.d. complex Gaussians, normalized.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<StateVector> {
    let amps = (0..1usize << n)
        .map(|_| Complex::new(standard_normal(rng), standard_normal(rng)))
        .collect();
    StateVector::normalized(amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn circuits_are_valid_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        for n in 1..6 {
            let ca = random_circuit(&mut a, n, 20, &CircuitOptions::full()).unwrap();
            let cb = random_circuit(&mut b, n, 20, &CircuitOptions::full()).unwrap();
            assert_eq!(ca, cb);
            assert_eq!(ca.len(), 20);
            for op in ca.ops() {
                op.validate(n).unwrap();
            }
        }
    }

    #[test]
    fn single_qubit_option_has_no_controls() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = random_circuit(&mut rng, 4, 50, &CircuitOptions::single_qubit()).unwrap();
        assert!(c
            .ops()
            .iter()
            .all(|op| op.controls.is_empty() && op.targets.len() == 1));
    }

    #[test]
    fn random_states_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 0..6 {
            let psi = random_state(&mut rng, n).unwrap();
            assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}
