//! O(2^n) gate kernels that never build a layer matrix.
//!
//! Every kernel comes in two flavors: a copying one that reads from the input
//! and writes into a fresh vector, and an `_in_place` one that updates the
//! amplitudes directly. Both produce bit-identical results.

use alloc::vec;
use alloc::vec::Vec;

use crate::circuit::{Circuit, ControlSpec, GateOp, Operation};
use crate::gates::{is_unitary, Gate};
use crate::linalg::{Complex, DenseMatrix, StateVector, ZERO};
use crate::{Error, Result, DEFAULT_MAX_QUBITS};

/// Which SWAP implementation [`Engine`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SwapKernel {
    /// Precomputed masks; only indices with bit i set and bit j clear do work.
    #[default]
    Masked,
    /// Calls [`swap_bits`] for every index. Kept for differential testing.
    Reference,
}

/// What to do when a multi-qubit gate matrix fails [`is_unitary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnitarityCheck {
    #[default]
    Reject,
    /// Log a warning and apply the matrix anyway.
    Warn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub max_qubits: usize,
    pub swap_kernel: SwapKernel,
    pub unitarity: UnitarityCheck,
    /// Update one state vector in place instead of allocating per gate.
    pub in_place: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            max_qubits: DEFAULT_MAX_QUBITS,
            swap_kernel: SwapKernel::Masked,
            unitarity: UnitarityCheck::Reject,
            in_place: false,
        }
    }
}

fn check_wire(wire: usize, n: usize) -> Result<()> {
    if wire >= n {
        Err(Error::WireOutOfRange { wire, n })
    } else {
        Ok(())
    }
}

fn single_qubit_entries(u: &DenseMatrix) -> Result<[Complex; 4]> {
    if u.rows() != 2 || u.cols() != 2 {
        return Err(Error::DimensionMismatch {
            op: "qubit_wise_multiply",
            left: (u.rows(), u.cols()),
            right: (2, 2),
        });
    }
    Ok([u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]])
}

/// Applies the 2×2 matrix `u` to wire `target`, restricted to amplitudes
/// whose index satisfies the control masks. Equivalent to multiplying by
/// `I ⊗ … ⊗ U ⊗ … ⊗ I` with the controls folded in.
pub fn qubit_wise_multiply(
    u: &DenseMatrix,
    target: usize,
    a: &StateVector,
    controls: &ControlSpec,
) -> Result<StateVector> {
    let u = single_qubit_entries(u)?;
    let n = a.n();
    check_wire(target, n)?;
    controls.validate(n, &[target])?;
    let (inclusion, desired) = controls.masks();

    let src = a.amplitudes();
    let mut b = src.to_vec();
    let half_block = 1usize << target;
    let block = half_block << 1;
    for b0 in (0..src.len()).step_by(block) {
        for offset in 0..half_block {
            let i1 = b0 | offset;
            if i1 & inclusion != desired {
                continue;
            }
            let i2 = i1 | half_block;
            b[i1] = u[0] * src[i1] + u[1] * src[i2];
            b[i2] = u[2] * src[i1] + u[3] * src[i2];
        }
    }
    Ok(StateVector::from_raw(n, b))
}

/// In-place form of [`qubit_wise_multiply`].
pub fn qubit_wise_multiply_in_place(
    u: &DenseMatrix,
    target: usize,
    a: &mut StateVector,
    controls: &ControlSpec,
) -> Result<()> {
    let u = single_qubit_entries(u)?;
    let n = a.n();
    check_wire(target, n)?;
    controls.validate(n, &[target])?;
    let (inclusion, desired) = controls.masks();
    qubit_wise_in_place(&u, target, inclusion, desired, a.amplitudes_mut());
    Ok(())
}

fn qubit_wise_in_place(
    u: &[Complex; 4],
    target: usize,
    inclusion: usize,
    desired: usize,
    amps: &mut [Complex],
) {
    let half_block = 1usize << target;
    let block = half_block << 1;
    for b0 in (0..amps.len()).step_by(block) {
        for offset in 0..half_block {
            let i1 = b0 | offset;
            if i1 & inclusion != desired {
                continue;
            }
            let i2 = i1 | half_block;
            let (x, y) = (amps[i1], amps[i2]);
            amps[i1] = u[0] * x + u[1] * y;
            amps[i2] = u[2] * x + u[3] * y;
        }
    }
}

/// Returns `k` with bits `i` and `j` exchanged.
#[inline]
pub fn swap_bits(k: usize, i: usize, j: usize) -> usize {
    if i == j {
        return k;
    }
    let bit_i = (k >> i) & 1;
    let bit_j = (k >> j) & 1;
    if bit_i != bit_j {
        k ^ ((1 << i) | (1 << j))
    } else {
        k
    }
}

fn check_swap(n: usize, i: usize, j: usize, controls: &ControlSpec) -> Result<(usize, usize)> {
    check_wire(i, n)?;
    check_wire(j, n)?;
    controls.validate(n, &[i, j])?;
    Ok(controls.masks())
}

/// SWAP of wires `i` and `j` (optionally controlled), using precomputed
/// masks instead of [`swap_bits`].
pub fn apply_swap(
    i: usize,
    j: usize,
    a: &StateVector,
    controls: &ControlSpec,
) -> Result<StateVector> {
    let mut b = a.clone();
    apply_swap_in_place(i, j, &mut b, controls)?;
    Ok(b)
}

pub fn apply_swap_in_place(
    i: usize,
    j: usize,
    a: &mut StateVector,
    controls: &ControlSpec,
) -> Result<()> {
    let (inclusion, desired) = check_swap(a.n(), i, j, controls)?;
    if i != j {
        swap_masked(i, j, inclusion, desired, a.amplitudes_mut());
    }
    Ok(())
}

/// Exchanges `k` and `k2` for every `k` with bit `i` set and bit `j` clear;
/// `k2` clears bit `i` and sets bit `j`. Each pair is visited exactly once.
fn swap_masked(i: usize, j: usize, inclusion: usize, desired: usize, amps: &mut [Complex]) {
    let antimask_i = !(1usize << i);
    let mask_j = 1usize << j;
    for k in 0..amps.len() {
        if k & inclusion != desired {
            continue;
        }
        if (k >> i) & 1 == 1 && (k >> j) & 1 == 0 {
            let k2 = (k & antimask_i) | mask_j;
            amps.swap(k, k2);
        }
    }
}

/// The straightforward SWAP loop built on [`swap_bits`].
pub fn apply_swap_reference(
    i: usize,
    j: usize,
    a: &StateVector,
    controls: &ControlSpec,
) -> Result<StateVector> {
    let (inclusion, desired) = check_swap(a.n(), i, j, controls)?;
    let src = a.amplitudes();
    let mut b = src.to_vec();
    if i != j {
        for k in 0..src.len() {
            if k & inclusion != desired {
                continue;
            }
            let k2 = swap_bits(k, i, j);
            if k2 > k {
                b[k2] = src[k];
                b[k] = src[k2];
            }
        }
    }
    Ok(StateVector::from_raw(a.n(), b))
}

/// Applies a `2^m × 2^m` matrix to `targets` (bit `k` of the matrix index is
/// `targets[k]`). Targets are rewired onto wires `0..m` by unconditional
/// SWAPs, the block kernel runs with the remapped controls, and the SWAPs are
/// undone.
pub fn apply_multi_qubit_gate(
    u: &DenseMatrix,
    targets: &[usize],
    a: &StateVector,
    controls: &ControlSpec,
) -> Result<StateVector> {
    let mut b = a.clone();
    apply_multi_qubit_gate_in_place(u, targets, &mut b, controls)?;
    Ok(b)
}

pub fn apply_multi_qubit_gate_in_place(
    u: &DenseMatrix,
    targets: &[usize],
    a: &mut StateVector,
    controls: &ControlSpec,
) -> Result<()> {
    multi_qubit_in_place(
        u,
        targets,
        a,
        controls,
        UnitarityCheck::Reject,
        SwapKernel::Masked,
    )
}

fn multi_qubit_in_place(
    u: &DenseMatrix,
    targets: &[usize],
    a: &mut StateVector,
    controls: &ControlSpec,
    unitarity: UnitarityCheck,
    swap_kernel: SwapKernel,
) -> Result<()> {
    let n = a.n();
    let m = targets.len();
    if m == 0 || m > n {
        return Err(Error::ArityMismatch {
            gate: "matrix",
            expected: u.rows().trailing_zeros() as usize,
            got: m,
        });
    }
    for (idx, &t) in targets.iter().enumerate() {
        check_wire(t, n)?;
        if targets[..idx].contains(&t) {
            return Err(Error::DuplicateTarget { wire: t });
        }
    }
    let dim = 1usize << m;
    if u.rows() != dim || u.cols() != dim {
        return Err(Error::DimensionMismatch {
            op: "apply_multi_qubit_gate",
            left: (u.rows(), u.cols()),
            right: (dim, dim),
        });
    }
    controls.validate(n, targets)?;
    if !is_unitary(u) {
        match unitarity {
            UnitarityCheck::Reject => return Err(Error::NotUnitary),
            UnitarityCheck::Warn => log::warn!("applying a non-unitary {dim}x{dim} matrix"),
        }
    }

    if m == 1 {
        let (inclusion, desired) = controls.masks();
        let entries = single_qubit_entries(u)?;
        qubit_wise_in_place(&entries, targets[0], inclusion, desired, a.amplitudes_mut());
        return Ok(());
    }

    let mut sorted = targets.to_vec();
    sorted.sort_unstable();

    // position_of[w]: where original wire w currently lives.
    // wire_at[p]: original wire currently at position p.
    let mut position_of: Vec<usize> = (0..n).collect();
    let mut wire_at: Vec<usize> = (0..n).collect();
    let mut swaps = Vec::new();
    for (k, &w) in sorted.iter().enumerate() {
        let p = position_of[w];
        if p != k {
            rewire_swap(k, p, a.amplitudes_mut(), swap_kernel);
            swaps.push((k, p));
            let displaced = wire_at[k];
            wire_at.swap(k, p);
            position_of[w] = k;
            position_of[displaced] = p;
        }
    }

    // Matrix index bit k now refers to wire sorted[k]; map it back to the
    // caller's target order.
    let source_bit: Vec<usize> = sorted
        .iter()
        .map(|w| targets.iter().position(|t| t == w).unwrap_or(0))
        .collect();
    let permute = |idx: usize| -> usize {
        source_bit
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &src)| acc | (((idx >> k) & 1) << src))
    };
    let mut permuted = vec![ZERO; dim * dim];
    for r in 0..dim {
        let pr = permute(r);
        for c in 0..dim {
            permuted[r * dim + c] = u[(pr, permute(c))];
        }
    }

    let remapped = controls.map_wires(|w| position_of[w]);
    let (inclusion, desired) = remapped.masks();
    block_kernel(&permuted, dim, inclusion, desired, a.amplitudes_mut());

    for &(k, p) in swaps.iter().rev() {
        rewire_swap(k, p, a.amplitudes_mut(), swap_kernel);
    }
    Ok(())
}

fn rewire_swap(i: usize, j: usize, amps: &mut [Complex], kernel: SwapKernel) {
    match kernel {
        SwapKernel::Masked => swap_masked(i, j, 0, 0, amps),
        SwapKernel::Reference => {
            for k in 0..amps.len() {
                let k2 = swap_bits(k, i, j);
                if k2 > k {
                    amps.swap(k, k2);
                }
            }
        }
    }
}

/// Multiplies every contiguous block of `dim` amplitudes that passes the
/// control masks by the row-major `dim × dim` matrix `u`.
fn block_kernel(u: &[Complex], dim: usize, inclusion: usize, desired: usize, amps: &mut [Complex]) {
    let mut gathered = vec![ZERO; dim];
    for (base, chunk) in amps.chunks_exact_mut(dim).enumerate() {
        if (base * dim) & inclusion != desired {
            continue;
        }
        gathered.copy_from_slice(chunk);
        for (r, out) in chunk.iter_mut().enumerate() {
            let row = &u[r * dim..(r + 1) * dim];
            *out = row.iter().zip(&gathered).map(|(&x, &y)| x * y).sum();
        }
    }
}

/// Runs circuits gate by gate with a fixed configuration.
#[derive(Debug, Clone, Copy, Default)]
pub struct Engine {
    config: EngineConfig,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Self { config }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// Applies one unitary step in place. Measurements are rejected.
    pub fn apply_in_place(&self, op: &GateOp, state: &mut StateVector) -> Result<()> {
        let Operation::Gate(gate) = op.op else {
            return Err(Error::UnexpectedMeasurement);
        };
        op.validate(state.n())?;
        match gate {
            Gate::Swap => {
                let (i, j) = (op.targets[0], op.targets[1]);
                match self.config.swap_kernel {
                    SwapKernel::Masked => apply_swap_in_place(i, j, state, &op.controls),
                    SwapKernel::Reference => {
                        *state = apply_swap_reference(i, j, state, &op.controls)?;
                        Ok(())
                    }
                }
            }
            g if g.arity() == 1 => {
                qubit_wise_multiply_in_place(&g.matrix(), op.targets[0], state, &op.controls)
            }
            g => multi_qubit_in_place(
                &g.matrix(),
                &op.targets,
                state,
                &op.controls,
                self.config.unitarity,
                self.config.swap_kernel,
            ),
        }
    }

    /// Copying form of [`Engine::apply_in_place`].
    pub fn apply(&self, op: &GateOp, state: &StateVector) -> Result<StateVector> {
        let Operation::Gate(gate) = op.op else {
            return Err(Error::UnexpectedMeasurement);
        };
        op.validate(state.n())?;
        match gate {
            Gate::Swap => {
                let (i, j) = (op.targets[0], op.targets[1]);
                match self.config.swap_kernel {
                    SwapKernel::Masked => apply_swap(i, j, state, &op.controls),
                    SwapKernel::Reference => apply_swap_reference(i, j, state, &op.controls),
                }
            }
            g if g.arity() == 1 => {
                qubit_wise_multiply(&g.matrix(), op.targets[0], state, &op.controls)
            }
            _ => {
                let mut out = state.clone();
                self.apply_in_place(op, &mut out)?;
                Ok(out)
            }
        }
    }

    /// Applies every step of a measurement-free circuit to `psi0`.
    pub fn run(&self, circuit: &Circuit, psi0: &StateVector) -> Result<StateVector> {
        let n = circuit.n();
        if n > self.config.max_qubits {
            return Err(Error::TooManyQubits {
                n,
                max: self.config.max_qubits,
            });
        }
        if psi0.n() != n {
            return Err(Error::DimensionMismatch {
                op: "run_circuit",
                left: (1 << n, 1),
                right: (psi0.len(), 1),
            });
        }
        if circuit.has_measurements() {
            return Err(Error::UnexpectedMeasurement);
        }
        let mut state = psi0.clone();
        for op in circuit.ops() {
            if self.config.in_place {
                self.apply_in_place(op, &mut state)?;
            } else {
                state = self.apply(op, &state)?;
            }
        }
        Ok(state)
    }
}

/// [`Engine::run`] with the default configuration.
pub fn run_circuit(circuit: &Circuit, psi0: &StateVector) -> Result<StateVector> {
    Engine::default().run(circuit, psi0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Control;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn amp(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn assert_state(state: &StateVector, expected: &[(usize, Complex)]) {
        for (idx, &a) in state.amplitudes().iter().enumerate() {
            let want = expected
                .iter()
                .find(|(i, _)| *i == idx)
                .map_or(ZERO, |&(_, v)| v);
            assert!(
                (a - want).norm() < 1e-12,
                "index {idx:b}: got {a}, want {want}"
            );
        }
    }

    fn none() -> ControlSpec {
        ControlSpec::none()
    }

    #[test]
    fn swap_bits_examples() {
        assert_eq!(swap_bits(14, 0, 3), 7);
        assert_eq!(swap_bits(10, 0, 3), 3);
        assert_eq!(swap_bits(13, 1, 2), 11);
        assert_eq!(swap_bits(10, 1, 2), 12);
        assert_eq!(swap_bits(0b1011, 2, 2), 0b1011);
    }

    #[test]
    fn hadamard_on_zero() {
        let psi = StateVector::zero(1).unwrap();
        let out = qubit_wise_multiply(&Gate::H.matrix(), 0, &psi, &none()).unwrap();
        assert_state(
            &out,
            &[(0, amp(FRAC_1_SQRT_2, 0.0)), (1, amp(FRAC_1_SQRT_2, 0.0))],
        );
    }

    #[test]
    fn controlled_x_flips_target() {
        let psi = StateVector::basis(2, 0b10).unwrap();
        let out = qubit_wise_multiply(
            &Gate::X.matrix(),
            0,
            &psi,
            &ControlSpec::controls(&[1]).unwrap(),
        )
        .unwrap();
        assert_state(&out, &[(0b11, amp(1.0, 0.0))]);
    }

    #[test]
    fn first_example_circuit_gate_sequence() {
        let x = Gate::X.matrix();
        let ctrl1 = ControlSpec::controls(&[1]).unwrap();
        let mut psi = StateVector::zero(3).unwrap();
        psi = qubit_wise_multiply(&Gate::H.matrix(), 1, &psi, &none()).unwrap();
        psi = qubit_wise_multiply(&x, 2, &psi, &none()).unwrap();
        psi = qubit_wise_multiply(&x, 0, &psi, &ctrl1).unwrap();
        psi = qubit_wise_multiply(&Gate::Z.matrix(), 0, &psi, &none()).unwrap();
        psi = qubit_wise_multiply(&x, 2, &psi, &ctrl1).unwrap();
        assert_state(
            &psi,
            &[
                (0b100, amp(FRAC_1_SQRT_2, 0.0)),
                (0b011, amp(-FRAC_1_SQRT_2, 0.0)),
            ],
        );
    }

    #[test]
    fn swap_and_anticontrol_example_circuit() {
        let x = Gate::X.matrix();
        let mut psi = StateVector::zero(3).unwrap();
        psi = qubit_wise_multiply(&Gate::H.matrix(), 0, &psi, &none()).unwrap();
        psi = apply_swap(0, 2, &psi, &none()).unwrap();
        let anti2 = ControlSpec::new(vec![Control::anti(2)]).unwrap();
        psi = qubit_wise_multiply(&x, 1, &psi, &anti2).unwrap();
        psi = qubit_wise_multiply(&x, 0, &psi, &ControlSpec::controls(&[1]).unwrap()).unwrap();
        psi = qubit_wise_multiply(&Gate::Y.matrix(), 0, &psi, &none()).unwrap();
        psi = apply_swap(1, 2, &psi, &ControlSpec::controls(&[0]).unwrap()).unwrap();
        psi = qubit_wise_multiply(&Gate::Z.matrix(), 1, &psi, &none()).unwrap();
        assert_state(
            &psi,
            &[
                (0b010, amp(0.0, FRAC_1_SQRT_2)),
                (0b011, amp(0.0, -FRAC_1_SQRT_2)),
            ],
        );
    }

    #[test]
    fn identity_with_controls_is_a_no_op() {
        let psi = StateVector::normalized((0..8).map(|k| amp(k as f64, 1.0 - k as f64)).collect())
            .unwrap();
        let spec = ControlSpec::new(vec![Control::on(0), Control::anti(2)]).unwrap();
        let out = qubit_wise_multiply(&Gate::I.matrix(), 1, &psi, &spec).unwrap();
        assert_eq!(out, psi);
    }

    #[test]
    fn swap_basics() {
        let psi = StateVector::basis(2, 0b01).unwrap();
        let out = apply_swap(0, 1, &psi, &none()).unwrap();
        assert_state(&out, &[(0b10, amp(1.0, 0.0))]);
        assert_eq!(apply_swap(1, 1, &psi, &none()).unwrap(), psi);
        assert_eq!(apply_swap(0, 1, &out, &none()).unwrap(), psi);
    }

    #[test]
    fn kernels_reject_bad_wires() {
        let psi = StateVector::zero(2).unwrap();
        let x = Gate::X.matrix();
        assert_eq!(
            qubit_wise_multiply(&x, 2, &psi, &none()),
            Err(Error::WireOutOfRange { wire: 2, n: 2 })
        );
        assert_eq!(
            qubit_wise_multiply(&x, 0, &psi, &ControlSpec::controls(&[0]).unwrap()),
            Err(Error::ControlOnTarget { wire: 0 })
        );
        assert_eq!(
            apply_swap(0, 1, &psi, &ControlSpec::controls(&[1]).unwrap()),
            Err(Error::ControlOnTarget { wire: 1 })
        );
        assert!(matches!(
            qubit_wise_multiply(&Gate::Swap.matrix(), 0, &psi, &none()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn multi_qubit_gate_rejects_non_unitary() {
        let psi = StateVector::zero(2).unwrap();
        let m = DenseMatrix::zeros(4, 4).unwrap();
        assert_eq!(
            apply_multi_qubit_gate(&m, &[0, 1], &psi, &none()),
            Err(Error::NotUnitary)
        );
        let mut state = psi.clone();
        multi_qubit_in_place(
            &m,
            &[0, 1],
            &mut state,
            &none(),
            UnitarityCheck::Warn,
            SwapKernel::Masked,
        )
        .unwrap();
        assert_eq!(state.norm_sqr(), 0.0);
    }

    #[test]
    fn iswap_on_non_adjacent_wires() {
        let psi = StateVector::basis(3, 0b001).unwrap();
        let out = apply_multi_qubit_gate(&Gate::ISwap.matrix(), &[0, 2], &psi, &none()).unwrap();
        assert_state(&out, &[(0b100, amp(0.0, 1.0))]);
    }

    #[test]
    fn swap_matrix_matches_swap_kernel() {
        let psi = StateVector::normalized(
            (0..16)
                .map(|k| amp((k * 7 % 5) as f64, (k % 3) as f64))
                .collect(),
        )
        .unwrap();
        let spec = ControlSpec::new(vec![Control::anti(3)]).unwrap();
        for (i, j) in [(0, 1), (1, 0), (0, 2), (2, 1)] {
            let via_matrix =
                apply_multi_qubit_gate(&Gate::Swap.matrix(), &[i, j], &psi, &spec).unwrap();
            let via_kernel = apply_swap(i, j, &psi, &spec).unwrap();
            assert!(via_matrix.max_abs_diff(&via_kernel) < 1e-15);
        }
    }

    #[test]
    fn target_order_of_matrix_is_respected() {
        // 4x4 CX with bit 1 (targets[1]) as control and bit 0 as target.
        let cx = DenseMatrix::from_real_rows([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]);
        let psi = StateVector::normalized(
            (0..16)
                .map(|k| amp(k as f64 + 1.0, (k % 4) as f64))
                .collect(),
        )
        .unwrap();
        for (t, c) in [(0, 1), (1, 0), (3, 1), (0, 3), (2, 0)] {
            let via_matrix = apply_multi_qubit_gate(&cx, &[t, c], &psi, &none()).unwrap();
            let via_kernel = qubit_wise_multiply(
                &Gate::X.matrix(),
                t,
                &psi,
                &ControlSpec::controls(&[c]).unwrap(),
            )
            .unwrap();
            assert!(via_matrix.max_abs_diff(&via_kernel) < 1e-15, "t={t} c={c}");
        }
    }

    #[test]
    fn run_circuit_edge_cases() {
        let psi = StateVector::zero(2).unwrap();
        let empty = Circuit::new(2).unwrap();
        assert_eq!(run_circuit(&empty, &psi).unwrap(), psi);
        let mut measured = Circuit::new(2).unwrap();
        measured.measure(0).unwrap();
        assert_eq!(
            run_circuit(&measured, &psi),
            Err(Error::UnexpectedMeasurement)
        );
        let wrong = StateVector::zero(3).unwrap();
        assert!(matches!(
            run_circuit(&empty, &wrong),
            Err(Error::DimensionMismatch { .. })
        ));
        let capped = Engine::new(EngineConfig {
            max_qubits: 1,
            ..EngineConfig::default()
        });
        assert!(matches!(
            capped.run(&empty, &psi),
            Err(Error::TooManyQubits { .. })
        ));
    }

    #[test]
    fn third_example_circuit() {
        let mut c = Circuit::new(3).unwrap();
        c.gate(Gate::H, &[0]).unwrap();
        c.cx(0, 1).unwrap();
        c.gate(Gate::H, &[2]).unwrap();
        let out = run_circuit(&c, &StateVector::zero(3).unwrap()).unwrap();
        let h = amp(0.5, 0.0);
        assert_state(&out, &[(0b000, h), (0b011, h), (0b100, h), (0b111, h)]);
    }
}
