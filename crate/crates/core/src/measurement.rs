//! Mid-circuit measurement, either by following every outcome (a branch
//! tree) or by sampling one outcome per shot.
//!
//! Measuring a qubit removes it from the state: each residual has half as many
//! amplitudes. Later gates still name wires of the original circuit, so every
//! branch carries a map from its current bit positions back to those wires.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

// Float methods for f64 under no_std; std provides them inherently in tests.
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::Engine;
use crate::linalg::{Complex, StateVector, ZERO};
use crate::{Circuit, Error, GateOp, Operation, Result};

/// Branches with probability below this carry no residual and are pruned
/// from branch trees.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// One outcome of measuring a single qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBranch {
    pub outcome: u8,
    pub probability: f64,
    /// Normalized post-measurement state on the remaining qubits, or `None`
    /// when `probability < PRUNE_THRESHOLD`.
    pub residual: Option<StateVector>,
}

/// Deletes bit `q` from `i`, shifting the higher bits down.
fn delete_bit(i: usize, q: usize) -> usize {
    let low = i & ((1 << q) - 1);
    low | ((i >> (q + 1)) << q)
}

/// Splits `psi` on `qubit`. Branch `b` keeps the amplitudes whose bit `qubit`
/// equals `b`, with that bit removed from the index, rescaled by
/// `1/√Pr[b]`. Phases are left as they are.
pub fn measure_qubit(
    psi: &StateVector,
    qubit: usize,
) -> Result<(MeasurementBranch, MeasurementBranch)> {
    let n = psi.n();
    if qubit >= n {
        return Err(Error::WireOutOfRange { wire: qubit, n });
    }
    let half = psi.len() / 2;
    let mut parts = [alloc::vec![ZERO; half], alloc::vec![ZERO; half]];
    let mut probs = [0.0; 2];
    for (i, &a) in psi.amplitudes().iter().enumerate() {
        let b = (i >> qubit) & 1;
        parts[b][delete_bit(i, qubit)] = a;
        probs[b] += a.norm_sqr();
    }
    let [zero, one] = parts;
    let branch = |outcome: u8, amps: Vec<Complex>, p: f64| {
        let residual = (p >= PRUNE_THRESHOLD).then(|| {
            let scale = 1.0 / p.sqrt();
            StateVector::from_raw(n - 1, amps.into_iter().map(|a| a * scale).collect())
        });
        MeasurementBranch {
            outcome,
            probability: p,
            residual,
        }
    };
    Ok((branch(0, zero, probs[0]), branch(1, one, probs[1])))
}

/// Tracks which original wire each bit of a shrinking state belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
struct WireMap {
    /// `wires[k]` is the original wire at bit `k`.
    wires: Vec<usize>,
}

impl WireMap {
    fn identity(n: usize) -> Self {
        Self {
            wires: (0..n).collect(),
        }
    }

    fn position(&self, wire: usize, n: usize) -> Result<usize> {
        if wire >= n {
            return Err(Error::WireOutOfRange { wire, n });
        }
        self.wires
            .iter()
            .position(|&w| w == wire)
            .ok_or(Error::MeasuredWire { wire })
    }

    fn remap(&self, op: &GateOp, n: usize) -> Result<GateOp> {
        if self.wires.len() == n {
            return Ok(op.clone());
        }
        let targets = op
            .targets
            .iter()
            .map(|&t| self.position(t, n))
            .collect::<Result<Vec<_>>>()?;
        for c in op.controls.entries() {
            self.position(c.wire, n)?;
        }
        let controls = op
            .controls
            .map_wires(|w| self.position(w, n).expect("checked above"));
        Ok(GateOp {
            op: op.op,
            targets,
            controls,
        })
    }

    fn remove(&mut self, position: usize) {
        self.wires.remove(position);
    }
}

/// A leaf of a [`BranchTree`]: one full sequence of measurement outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchLeaf {
    /// `(wire, outcome)` in measurement order.
    pub outcomes: Vec<(usize, u8)>,
    /// Product of the branch probabilities along the path.
    pub probability: f64,
    pub state: StateVector,
    /// `wires[k]` is the original circuit wire held at bit `k` of `state`.
    pub wires: Vec<usize>,
}

impl BranchLeaf {
    /// Measured bits in measurement order, e.g. `"01"`.
    pub fn outcome_string(&self) -> String {
        self.outcomes
            .iter()
            .map(|&(_, b)| if b == 1 { '1' } else { '0' })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BranchNode {
    Leaf(BranchLeaf),
    /// A measurement of `wire`. Children are ordered by outcome; pruned
    /// outcomes are missing.
    Split {
        wire: usize,
        children: Vec<(u8, f64, BranchNode)>,
    },
}

/// Every outcome path of a circuit with measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchTree {
    pub root_state: StateVector,
    pub root: BranchNode,
}

impl BranchTree {
    /// Leaves in depth-first order, outcome 0 before outcome 1.
    pub fn leaves(&self) -> Vec<&BranchLeaf> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![&self.root];
        while let Some(node) = stack.pop() {
            match node {
                BranchNode::Leaf(leaf) => out.push(leaf),
                BranchNode::Split { children, .. } => {
                    stack.extend(children.iter().rev().map(|(_, _, c)| c));
                }
            }
        }
        out
    }

    pub fn total_probability(&self) -> f64 {
        self.leaves().iter().map(|l| l.probability).sum()
    }
}

fn check_input(circuit: &Circuit, psi0: &StateVector, engine: &Engine) -> Result<()> {
    let n = circuit.n();
    let max = engine.config().max_qubits;
    if n > max {
        return Err(Error::TooManyQubits { n, max });
    }
    if psi0.n() != n {
        return Err(Error::DimensionMismatch {
            op: "measurement",
            left: (1 << n, 1),
            right: (psi0.len(), 1),
        });
    }
    Ok(())
}

struct Path {
    state: StateVector,
    wires: WireMap,
    outcomes: Vec<(usize, u8)>,
    probability: f64,
}

fn grow(engine: &Engine, n: usize, ops: &[GateOp], mut path: Path) -> Result<BranchNode> {
    for (i, op) in ops.iter().enumerate() {
        let local = path.wires.remap(op, n)?;
        match op.op {
            Operation::Gate(_) => engine.apply_in_place(&local, &mut path.state)?,
            Operation::Measure => {
                let wire = op.targets[0];
                let position = local.targets[0];
                let (b0, b1) = measure_qubit(&path.state, position)?;
                let mut wires = path.wires.clone();
                wires.remove(position);
                let mut children = Vec::with_capacity(2);
                for branch in [b0, b1] {
                    let Some(residual) = branch.residual else {
                        continue;
                    };
                    let mut outcomes = path.outcomes.clone();
                    outcomes.push((wire, branch.outcome));
                    let child = Path {
                        state: residual,
                        wires: wires.clone(),
                        outcomes,
                        probability: path.probability * branch.probability,
                    };
                    children.push((
                        branch.outcome,
                        branch.probability,
                        grow(engine, n, &ops[i + 1..], child)?,
                    ));
                }
                return Ok(BranchNode::Split { wire, children });
            }
        }
    }
    Ok(BranchNode::Leaf(BranchLeaf {
        outcomes: path.outcomes,
        probability: path.probability,
        state: path.state,
        wires: path.wires.wires,
    }))
}

/// Runs `circuit` following both outcomes of every measurement. Outcomes
/// with probability below [`PRUNE_THRESHOLD`] are dropped.
pub fn run_with_branches(circuit: &Circuit, psi0: &StateVector) -> Result<BranchTree> {
    run_with_branches_using(&Engine::default(), circuit, psi0)
}

pub fn run_with_branches_using(
    engine: &Engine,
    circuit: &Circuit,
    psi0: &StateVector,
) -> Result<BranchTree> {
    check_input(circuit, psi0, engine)?;
    let n = circuit.n();
    let path = Path {
        state: psi0.clone(),
        wires: WireMap::identity(n),
        outcomes: Vec::new(),
        probability: 1.0,
    };
    Ok(BranchTree {
        root_state: psi0.clone(),
        root: grow(engine, n, circuit.ops(), path)?,
    })
}

/// Outcome counts keyed by measured bits in measurement order.
pub type Histogram = BTreeMap<String, usize>;

/// Runs `circuit` `shots` times, drawing each measurement outcome at random
/// with its Born probability.
///
/// The generator is ChaCha8 seeded with `seed_from_u64(seed)`. A measurement
/// yields 1 when a uniform draw `u ∈ [0, 1)` satisfies `u < Pr[1]`. The gates
/// before the first measurement are simulated once and shared by all shots.
/// A circuit without measurements puts every shot under the empty key; zero
/// shots give an empty histogram.
pub fn sample_shots(
    circuit: &Circuit,
    psi0: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<Histogram> {
    sample_shots_using(&Engine::default(), circuit, psi0, shots, seed)
}

pub fn sample_shots_using(
    engine: &Engine,
    circuit: &Circuit,
    psi0: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<Histogram> {
    check_input(circuit, psi0, engine)?;
    let n = circuit.n();
    let ops = circuit.ops();
    let first = ops
        .iter()
        .position(GateOp::is_measurement)
        .unwrap_or(ops.len());
    let mut prefix = psi0.clone();
    for op in &ops[..first] {
        engine.apply_in_place(op, &mut prefix)?;
    }
    let rest = &ops[first..];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut histogram = Histogram::new();
    for _ in 0..shots {
        let mut state = prefix.clone();
        let mut wires = WireMap::identity(n);
        let mut key = String::with_capacity(circuit.measurement_count());
        for op in rest {
            let local = wires.remap(op, n)?;
            match op.op {
                Operation::Gate(_) => engine.apply_in_place(&local, &mut state)?,
                Operation::Measure => {
                    let position = local.targets[0];
                    let (b0, b1) = measure_qubit(&state, position)?;
                    let u: f64 = rng.gen();
                    let chosen = if u < b1.probability { b1 } else { b0 };
                    key.push(if chosen.outcome == 1 { '1' } else { '0' });
                    state = chosen
                        .residual
                        .expect("an outcome drawn with positive probability has a residual");
                    wires.remove(position);
                }
            }
        }
        *histogram.entry(key).or_insert(0) += 1;
    }
    Ok(histogram)
}
