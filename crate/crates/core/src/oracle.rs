//! Slow reference implementations built from full `2^n × 2^n` matrices.
//!
//! Nothing here calls into [`crate::engine`] or [`crate::analysis`]; the
//! point of this module is to be an independent check on both.

use alloc::vec::Vec;

use crate::circuit::{Circuit, ControlKind, ControlSpec, Operation};
use crate::gates::{is_unitary, Gate};
use crate::linalg::{dagger, kron, matmul, DenseMatrix, StateVector, ONE};
use crate::{Error, Result};

/// Matrix construction is refused above this many qubits (a 2^12 × 2^12
/// complex matrix is 256 MiB).
pub const MAX_ORACLE_QUBITS: usize = 12;

/// Full unitary for one circuit step.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerMatrix {
    n: usize,
    matrix: DenseMatrix,
}

impl LayerMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.matrix
    }

    pub fn is_unitary(&self) -> bool {
        is_unitary(&self.matrix)
    }
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_ORACLE_QUBITS {
        Err(Error::TooManyQubits {
            n,
            max: MAX_ORACLE_QUBITS,
        })
    } else {
        Ok(())
    }
}

fn bit(x: usize, k: usize) -> usize {
    (x >> k) & 1
}

/// Builds the layer matrix of `gate` on `targets` column by column: column
/// `b` is the gate's action on `|b⟩`, read straight off the gate matrix when
/// every control bit of `b` has its required value and the identity
/// otherwise.
pub fn build_gate_full_matrix(
    n: usize,
    gate: Gate,
    targets: &[usize],
    controls: &ControlSpec,
) -> Result<LayerMatrix> {
    guard(n)?;
    if targets.len() != gate.arity() {
        return Err(Error::ArityMismatch {
            gate: gate.name(),
            expected: gate.arity(),
            got: targets.len(),
        });
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n {
            return Err(Error::WireOutOfRange { wire: t, n });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateTarget { wire: t });
        }
    }
    controls.validate(n, targets)?;

    let u = gate.matrix();
    let dim = 1usize << n;
    let sub_dim = 1usize << targets.len();
    let mut m = DenseMatrix::zeros(dim, dim)?;
    for b in 0..dim {
        let active = controls.entries().iter().all(|c| {
            let want = match c.kind {
                ControlKind::Control => 1,
                ControlKind::AntiControl => 0,
            };
            bit(b, c.wire) == want
        });
        if !active {
            m[(b, b)] = ONE;
            continue;
        }
        let mut input = 0;
        let mut cleared = b;
        for (k, &t) in targets.iter().enumerate() {
            input |= bit(b, t) << k;
            cleared &= !(1 << t);
        }
        for output in 0..sub_dim {
            let mut row = cleared;
            for (k, &t) in targets.iter().enumerate() {
                row |= bit(output, k) << t;
            }
            m[(row, b)] += u[(output, input)];
        }
    }
    Ok(LayerMatrix { n, matrix: m })
}

/// Right-to-left product `L_D ⋯ L_1 |ψ0⟩`, one matrix-vector product per
/// step.
pub fn simulate_naive(circuit: &Circuit, psi0: &StateVector) -> Result<StateVector> {
    let n = circuit.n();
    guard(n)?;
    if psi0.n() != n {
        return Err(Error::DimensionMismatch {
            op: "simulate_naive",
            left: (1 << n, 1),
            right: (psi0.len(), 1),
        });
    }
    let mut column = DenseMatrix::column(psi0);
    for op in circuit.ops() {
        let Operation::Gate(gate) = op.op else {
            return Err(Error::UnexpectedMeasurement);
        };
        let layer = build_gate_full_matrix(n, gate, &op.targets, &op.controls)?;
        column = matmul(layer.matrix(), &column)?;
    }
    Ok(StateVector::from_raw(n, column.into_data()))
}

/// Explicit permutation matrix `P` with `P|b⟩ = |perm(b)⟩`.
fn permutation_matrix(n: usize, perm: impl Fn(usize) -> usize) -> Result<DenseMatrix> {
    let dim = 1usize << n;
    let mut p = DenseMatrix::zeros(dim, dim)?;
    for b in 0..dim {
        p[(perm(b), b)] = ONE;
    }
    Ok(p)
}

/// Textbook partial trace `Σ_t (I_A ⊗ ⟨t|) ρ (I_A ⊗ |t⟩)`.
///
/// The traced qubits are first permuted to the low bit positions (in
/// ascending order) and the kept qubits above them, so the result's bit `k`
/// is the `k`-th kept qubit in ascending order.
pub fn partial_trace_by_definition(
    rho: &DenseMatrix,
    n: usize,
    qubits_to_trace_out: &[usize],
) -> Result<DenseMatrix> {
    guard(n)?;
    let dim = 1usize << n;
    if rho.rows() != dim || rho.cols() != dim {
        return Err(Error::DimensionMismatch {
            op: "partial_trace_by_definition",
            left: (rho.rows(), rho.cols()),
            right: (dim, dim),
        });
    }
    let mut traced = Vec::new();
    for &q in qubits_to_trace_out {
        if q >= n || traced.contains(&q) {
            return Err(Error::InvalidQubitList);
        }
        traced.push(q);
    }
    traced.sort_unstable();
    let kept: Vec<usize> = (0..n).filter(|q| !traced.contains(q)).collect();
    let t_count = traced.len();

    // new position of each original qubit
    let mut destination = alloc::vec![0usize; n];
    for (j, &q) in traced.iter().enumerate() {
        destination[q] = j;
    }
    for (k, &q) in kept.iter().enumerate() {
        destination[q] = t_count + k;
    }
    let p = permutation_matrix(n, |b| {
        (0..n).fold(0, |acc, q| acc | (bit(b, q) << destination[q]))
    })?;
    let permuted = matmul(&matmul(&p, rho)?, &dagger(&p))?;

    let identity_a = DenseMatrix::identity(1 << kept.len())?;
    let traced_dim = 1usize << t_count;
    let mut out = DenseMatrix::zeros(1 << kept.len(), 1 << kept.len())?;
    for t in 0..traced_dim {
        let mut bra = DenseMatrix::zeros(1, traced_dim)?;
        bra[(0, t)] = ONE;
        let left = kron(&identity_a, &bra)?;
        let right = dagger(&left);
        let term = matmul(&matmul(&left, &permuted)?, &right)?;
        out = out.add(&term)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Control;
    use crate::linalg::{outer, trace, Complex, ZERO};
    use alloc::vec;
    use core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn hadamard_layer_is_kron_product() {
        let id = Gate::I.matrix();
        let expected = kron(&kron(&id, &Gate::H.matrix()).unwrap(), &id).unwrap();
        let layer = build_gate_full_matrix(3, Gate::H, &[1], &ControlSpec::none()).unwrap();
        assert!(layer.matrix().max_abs_diff(&expected) < 1e-15);
        let x2_h1 = kron(&kron(&Gate::X.matrix(), &Gate::H.matrix()).unwrap(), &id).unwrap();
        assert!(x2_h1.is_square() && is_unitary(&x2_h1));
    }

    #[test]
    fn controlled_x_matches_printed_matrix() {
        let layer = build_gate_full_matrix(2, Gate::X, &[0], &ControlSpec::controls(&[1]).unwrap())
            .unwrap();
        let expected = DenseMatrix::from_real_rows([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]);
        assert_eq!(layer.into_matrix(), expected);
        let other_way =
            build_gate_full_matrix(2, Gate::X, &[1], &ControlSpec::controls(&[0]).unwrap())
                .unwrap();
        let expected = DenseMatrix::from_real_rows([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ]);
        assert_eq!(other_way.into_matrix(), expected);
    }

    #[test]
    fn single_qubit_identity() {
        let layer = build_gate_full_matrix(1, Gate::I, &[0], &ControlSpec::none()).unwrap();
        assert_eq!(layer.into_matrix(), DenseMatrix::identity(2).unwrap());
    }

    #[test]
    fn every_catalog_layer_is_unitary() {
        let spec = ControlSpec::new(vec![Control::anti(3)]).unwrap();
        for g in Gate::ALL {
            let targets: &[usize] = if g.arity() == 2 { &[2, 0] } else { &[1] };
            let layer = build_gate_full_matrix(4, g, targets, &spec).unwrap();
            assert!(layer.is_unitary(), "{g}");
        }
    }

    #[test]
    fn naive_first_example_circuit() {
        let mut c = Circuit::new(3).unwrap();
        c.gate(Gate::H, &[1]).unwrap();
        c.gate(Gate::X, &[2]).unwrap();
        c.cx(1, 0).unwrap();
        c.gate(Gate::Z, &[0]).unwrap();
        c.cx(1, 2).unwrap();
        let psi0 = StateVector::zero(3).unwrap();
        let out = simulate_naive(&c, &psi0).unwrap();
        for (i, &a) in out.amplitudes().iter().enumerate() {
            let want = match i {
                0b100 => FRAC_1_SQRT_2,
                0b011 => -FRAC_1_SQRT_2,
                _ => 0.0,
            };
            assert!((a - Complex::new(want, 0.0)).norm() < 1e-12);
        }
        let empty = Circuit::new(3).unwrap();
        assert_eq!(simulate_naive(&empty, &psi0).unwrap(), psi0);
    }

    #[test]
    fn oracle_guard() {
        let big = Circuit::new(13).unwrap();
        let psi = StateVector::zero(13).unwrap();
        assert!(matches!(
            simulate_naive(&big, &psi),
            Err(Error::TooManyQubits { max: 12, .. })
        ));
    }

    #[test]
    fn tracing_everything_gives_the_trace() {
        let psi = StateVector::normalized(vec![
            Complex::new(0.3, 0.1),
            Complex::new(-0.2, 0.5),
            Complex::new(0.0, 0.7),
            Complex::new(0.4, 0.0),
        ])
        .unwrap();
        let rho = outer(&psi, &psi).unwrap();
        let out = partial_trace_by_definition(&rho, 2, &[0, 1]).unwrap();
        assert_eq!((out.rows(), out.cols()), (1, 1));
        assert!((out[(0, 0)] - ONE).norm() < 1e-12);
        let nothing = partial_trace_by_definition(&rho, 2, &[]).unwrap();
        assert!(nothing.max_abs_diff(&rho) < 1e-15);
        assert!((trace(&nothing).unwrap() - ONE).norm() < 1e-12);
    }

    #[test]
    fn tracing_out_a_product_factor() {
        let rho_a = DenseMatrix::from_rows([
            [Complex::new(0.7, 0.0), Complex::new(0.1, -0.2)],
            [Complex::new(0.1, 0.2), Complex::new(0.3, 0.0)],
        ]);
        let rho_b = DenseMatrix::from_rows([
            [Complex::new(0.4, 0.0), Complex::new(0.0, 0.3)],
            [Complex::new(0.0, -0.3), Complex::new(0.6, 0.0)],
        ]);
        // ρ_A ⊗ ρ_B puts A on qubit 1 and B on qubit 0.
        let product = kron(&rho_a, &rho_b).unwrap();
        let got = partial_trace_by_definition(&product, 2, &[0]).unwrap();
        assert!(got.max_abs_diff(&rho_a) < 1e-15);
        let got_b = partial_trace_by_definition(&product, 2, &[1]).unwrap();
        assert!(got_b.max_abs_diff(&rho_b) < 1e-15);
        assert!(matches!(
            partial_trace_by_definition(&product, 2, &[2]),
            Err(Error::InvalidQubitList)
        ));
        assert_ne!(got[(0, 1)], ZERO);
    }
}
