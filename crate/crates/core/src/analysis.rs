//! Reduced density matrices and the statistics read off them.
//!
//! Both partial-trace routines use a precomputed table for the kept-qubit
//! bit scattering and only fill the lower triangle of the (Hermitian) output,
//! mirroring it with conjugation at the end. The unoptimized textbook form
//! lives in [`crate::oracle::partial_trace_by_definition`].

use alloc::vec;
use alloc::vec::Vec;

// Float methods for f64 under no_std; std provides them inherently in tests.
#[allow(unused_imports)]
use num_traits::Float;

use crate::engine::qubit_wise_multiply_in_place;
use crate::gates::Gate;
use crate::linalg::{
    dagger, hermitian_eigen, hermitian_eigenvalues, kron, matmul, outer, trace, Complex,
    DenseMatrix, StateVector, ONE, ZERO,
};
use crate::{Error, Result};

/// Tolerance for Hermiticity and unit trace of density matrices.
pub const DENSITY_TOLERANCE: f64 = 1e-10;
/// Smallest eigenvalue still accepted as positive semidefinite.
pub const PSD_TOLERANCE: f64 = 1e-9;
/// Largest qubit count [`stabilizer_renyi_entropy`] will enumerate.
pub const MAX_MAGIC_QUBITS: usize = 10;

/// Returns `i` with bit `k` moved to `positions[k]`; `None` drops the bit.
/// Bits of `i` beyond `positions.len()` are dropped too.
pub fn rearrange_bits(i: usize, positions: &[Option<usize>]) -> usize {
    positions
        .iter()
        .enumerate()
        .filter_map(|(k, p)| p.map(|p| ((i >> k) & 1) << p))
        .fold(0, |acc, b| acc | b)
}

fn scatter_bits(i: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &p)| acc | (((i >> k) & 1) << p))
}

/// How the qubit list handed to a partial trace is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Selection {
    #[default]
    TraceOut,
    Keep,
}

struct TraceLayout {
    traced: Vec<usize>,
    /// `keep_table[r]` scatters the bits of output index `r` onto the kept
    /// qubit positions.
    keep_table: Vec<usize>,
}

impl TraceLayout {
    fn new(n: usize, qubits: &[usize], selection: Selection) -> Result<Self> {
        if qubits.windows(2).any(|w| w[0] >= w[1]) || qubits.iter().any(|&q| q >= n) {
            return Err(Error::InvalidQubitList);
        }
        let (traced, kept): (Vec<usize>, Vec<usize>) = match selection {
            Selection::TraceOut => (
                qubits.to_vec(),
                (0..n).filter(|q| !qubits.contains(q)).collect(),
            ),
            Selection::Keep => (
                (0..n).filter(|q| !qubits.contains(q)).collect(),
                qubits.to_vec(),
            ),
        };
        let keep_table = (0..1usize << kept.len())
            .map(|r| scatter_bits(r, &kept))
            .collect();
        Ok(Self { traced, keep_table })
    }

    fn result_dim(&self) -> usize {
        self.keep_table.len()
    }

    fn traced_dim(&self) -> usize {
        1 << self.traced.len()
    }

    /// Sums `element(input_row, input_col)` into the lower triangle and
    /// mirrors it.
    fn accumulate(&self, mut element: impl FnMut(usize, usize) -> Complex) -> Vec<Complex> {
        let dim = self.result_dim();
        let mut out = vec![ZERO; dim * dim];
        for shared in 0..self.traced_dim() {
            let shared_bits = scatter_bits(shared, &self.traced);
            for (r, &row_bits) in self.keep_table.iter().enumerate() {
                let input_row = shared_bits | row_bits;
                let out_row = &mut out[r * dim..r * dim + r + 1];
                for (slot, &col_bits) in out_row.iter_mut().zip(&self.keep_table) {
                    *slot += element(input_row, shared_bits | col_bits);
                }
            }
        }
        for r in 0..dim {
            for c in 0..r {
                out[c * dim + r] = out[r * dim + c].conj();
            }
        }
        out
    }
}

/// Partial trace of a Hermitian `2^n × 2^n` matrix. `qubits` must be
/// ascending without duplicates; `selection` says whether they are traced out
/// or kept. Bit `k` of the result's index is the `k`-th kept qubit.
pub fn partial_trace_matrix(
    n: usize,
    rho: &DenseMatrix,
    qubits: &[usize],
    selection: Selection,
) -> Result<DenseMatrix> {
    let dim = 1usize.checked_shl(n as u32).ok_or(Error::TooManyQubits {
        n,
        max: crate::DEFAULT_MAX_QUBITS,
    })?;
    if rho.rows() != dim || rho.cols() != dim {
        return Err(Error::DimensionMismatch {
            op: "partial_trace_matrix",
            left: (rho.rows(), rho.cols()),
            right: (dim, dim),
        });
    }
    if !rho.is_hermitian(DENSITY_TOLERANCE) {
        return Err(Error::NotHermitian);
    }
    let layout = TraceLayout::new(n, qubits, selection)?;
    let data = rho.data();
    let out = layout.accumulate(|r, c| data[r * dim + c]);
    DenseMatrix::new(layout.result_dim(), layout.result_dim(), out)
}

/// Partial trace of `|ψ⟩⟨ψ|` computed from the amplitudes, never forming the
/// full density matrix.
pub fn partial_trace_state(
    psi: &StateVector,
    qubits: &[usize],
    selection: Selection,
) -> Result<DensityMatrix> {
    let layout = TraceLayout::new(psi.n(), qubits, selection)?;
    let amps = psi.amplitudes();
    let out = layout.accumulate(|r, c| amps[r] * amps[c].conj());
    let dim = layout.result_dim();
    Ok(DensityMatrix {
        k: dim.trailing_zeros() as usize,
        matrix: DenseMatrix::new(dim, dim, out)?,
    })
}

/// Hermitian, unit-trace, positive semidefinite `2^k × 2^k` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    k: usize,
    matrix: DenseMatrix,
}

impl DensityMatrix {
    /// Validates all density-matrix invariants (the PSD check runs the
    /// eigensolver).
    pub fn new(matrix: DenseMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if !matrix.rows().is_power_of_two() {
            return Err(Error::InvalidDensityMatrix(
                "dimension is not a power of two",
            ));
        }
        let rho = Self {
            k: matrix.rows().trailing_zeros() as usize,
            matrix,
        };
        rho.check_invariants()?;
        Ok(rho)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn pure(psi: &StateVector) -> Result<Self> {
        Ok(Self {
            k: psi.n(),
            matrix: outer(psi, psi)?,
        })
    }

    pub fn check_invariants(&self) -> Result<()> {
        if !self.matrix.is_hermitian(DENSITY_TOLERANCE) {
            return Err(Error::InvalidDensityMatrix("not Hermitian"));
        }
        let tr = trace(&self.matrix)?;
        if (tr - ONE).norm() > DENSITY_TOLERANCE {
            return Err(Error::InvalidDensityMatrix("trace is not 1"));
        }
        let eigenvalues = hermitian_eigenvalues(&self.matrix)?;
        if eigenvalues.first().is_some_and(|&l| l < -PSD_TOLERANCE) {
            return Err(Error::InvalidDensityMatrix("not positive semidefinite"));
        }
        Ok(())
    }

    /// Qubit count of the subsystem.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix).expect("density matrices are Hermitian")
    }
}

/// `Σ |a_i|²` over indices with bit `qubit` set.
pub fn probability_of_one(psi: &StateVector, qubit: usize) -> Result<f64> {
    if qubit >= psi.n() {
        return Err(Error::WireOutOfRange {
            wire: qubit,
            n: psi.n(),
        });
    }
    Ok(psi
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| (i >> qubit) & 1 == 1)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

/// `Tr(ρ²)`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let dim = m.rows();
    let mut sum = 0.0;
    for r in 0..dim {
        for c in 0..dim {
            sum += (m[(r, c)] * m[(c, r)]).re;
        }
    }
    sum
}

pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    1.0 - purity(rho)
}

/// `−Σ λ log₂ λ` in bits, with eigenvalues clamped to `[0, 1]` and
/// `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .into_iter()
        .map(|l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Two-qubit concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`, where `λᵢ` are the
/// descending square roots of the eigenvalues of `ρ ρ̃` with
/// `ρ̃ = (Y⊗Y) ρ* (Y⊗Y)`.
///
/// With `ρ = V V†` where the columns of `V` are the eigenvectors scaled by
/// `√pᵢ`, the `λᵢ` are the singular values of the symmetric matrix
/// `τ = Vᵀ (Y⊗Y) V`. Near-zero `pᵢ` then only enter at second order, which
/// keeps pure states accurate to round-off.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.k() != 2 {
        return Err(Error::InvalidDensityMatrix(
            "concurrence is defined for two-qubit states",
        ));
    }
    let yy = kron(&Gate::Y.matrix(), &Gate::Y.matrix())?;
    let (values, vectors) = hermitian_eigen(rho.matrix())?;
    let roots: Vec<Complex> = values
        .iter()
        .map(|&l| Complex::new(l.max(0.0).sqrt(), 0.0))
        .collect();
    let v = matmul(&vectors, &DenseMatrix::diagonal(&roots)?)?;
    let v_t = transpose(&v);
    let tau = matmul(&matmul(&v_t, &yy)?, &v)?;
    let gram = matmul(&dagger(&tau), &tau)?;

    let mut lambdas: Vec<f64> = hermitian_eigenvalues(&gram)?
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

fn transpose(a: &DenseMatrix) -> DenseMatrix {
    let mut t = dagger(a);
    for z in t.data_mut() {
        *z = z.conj();
    }
    t
}

/// Bloch-sphere description of one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitStats {
    pub prob1: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub r: f64,
    /// Polar angle from +z, radians.
    pub theta: f64,
    /// Azimuth from +x toward +y, radians.
    pub phi: f64,
    pub purity: f64,
    pub linear_entropy: f64,
}

impl QubitStats {
    /// `(I + xX + yY + zZ) / 2`.
    pub fn bloch_matrix(&self) -> DenseMatrix {
        let (x, y, z) = (self.x, self.y, self.z);
        DenseMatrix::from_rows([
            [
                Complex::new((1.0 + z) / 2.0, 0.0),
                Complex::new(x / 2.0, -y / 2.0),
            ],
            [
                Complex::new(x / 2.0, y / 2.0),
                Complex::new((1.0 - z) / 2.0, 0.0),
            ],
        ])
    }
}

/// Radius below which the Bloch angles are reported as zero.
const DEGENERATE_RADIUS: f64 = 1e-12;

/// Statistics of a single-qubit density matrix
/// `[[a, b + ic], [b − ic, 1 − a]]`: `x = 2b`, `y = −2c`, `z = 2a − 1`.
pub fn qubit_stats(rho: &DensityMatrix) -> Result<QubitStats> {
    if rho.k() != 1 {
        return Err(Error::InvalidDensityMatrix(
            "qubit statistics need a 2x2 density matrix",
        ));
    }
    let m = rho.matrix();
    let a = m[(0, 0)].re;
    let b = m[(0, 1)].re;
    let c = m[(0, 1)].im;
    let (x, y, z) = (2.0 * b, -2.0 * c, 2.0 * a - 1.0);
    debug_assert!({
        let tr = |g: Gate| trace(&matmul(m, &g.matrix()).unwrap()).unwrap().re;
        (tr(Gate::X) - x).abs() < 1e-12
            && (tr(Gate::Y) - y).abs() < 1e-12
            && (tr(Gate::Z) - z).abs() < 1e-12
    });
    let r = (x * x + y * y + z * z).sqrt();
    let (theta, phi) = if r < DEGENERATE_RADIUS {
        (0.0, 0.0)
    } else {
        ((z / r).clamp(-1.0, 1.0).acos(), y.atan2(x))
    };
    let p = purity(rho);
    Ok(QubitStats {
        prob1: m[(1, 1)].re,
        x,
        y,
        z,
        r,
        theta,
        phi,
        purity: p,
        linear_entropy: 1.0 - p,
    })
}

/// [`qubit_stats`] for every qubit of `psi`, indexed by wire.
pub fn all_qubit_stats(psi: &StateVector) -> Result<Vec<QubitStats>> {
    (0..psi.n())
        .map(|q| qubit_stats(&partial_trace_state(psi, &[q], Selection::Keep)?))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStats {
    pub purity: f64,
    pub linear_entropy: f64,
    pub concurrence: f64,
    pub von_neumann_entropy: f64,
}

pub fn pair_stats(rho: &DensityMatrix) -> Result<PairStats> {
    let concurrence = concurrence(rho)?;
    let p = purity(rho);
    Ok(PairStats {
        purity: p,
        linear_entropy: 1.0 - p,
        concurrence,
        von_neumann_entropy: von_neumann_entropy(rho),
    })
}

/// [`pair_stats`] of the reduced state of wires `i` and `j`.
pub fn pair_stats_for(psi: &StateVector, i: usize, j: usize) -> Result<PairStats> {
    let n = psi.n();
    for w in [i, j] {
        if w >= n {
            return Err(Error::WireOutOfRange { wire: w, n });
        }
    }
    if i == j {
        return Err(Error::DuplicateTarget { wire: i });
    }
    let keep = [i.min(j), i.max(j)];
    pair_stats(&partial_trace_state(psi, &keep, Selection::Keep)?)
}

/// Index of Pauli `P` at the digit: 0 = I, 1 = X, 2 = Y, 3 = Z.
fn pauli(digit: usize) -> Gate {
    [Gate::I, Gate::X, Gate::Y, Gate::Z][digit]
}

/// Digit `k` of the base-4 reflected Gray code of `i`.
fn gray_digit(i: usize, k: usize) -> usize {
    let q = i >> (2 * k);
    let digit = q & 3;
    if (q >> 2) & 1 == 0 {
        digit
    } else {
        3 - digit
    }
}

/// Order-2 stabilizer Rényi entropy
/// `M₂ = −log₂(Σ_P ⟨ψ|P|ψ⟩⁴ / 2^n)` over all `4^n` Pauli strings.
///
/// Strings are visited in base-4 Gray-code order so consecutive strings differ
/// on one qubit; each step applies the 2×2 product of the new and old Pauli on
/// that qubit with the qubit-wise kernel. Those products have entries in
/// `{0, ±1, ±i}`, so the running vector carries no accumulated round-off.
pub fn stabilizer_renyi_entropy(psi: &StateVector) -> Result<f64> {
    let n = psi.n();
    if n > MAX_MAGIC_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_MAGIC_QUBITS,
        });
    }
    let none = crate::circuit::ControlSpec::none();
    // step[new][old] = P_new · P_old
    let step: Vec<Vec<DenseMatrix>> = (0..4)
        .map(|new| {
            (0..4)
                .map(|old| matmul(&pauli(new).matrix(), &pauli(old).matrix()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut current = psi.clone();
    let mut digits = vec![0usize; n];
    let mut sum = 1.0; // identity string
    for i in 1..1usize << (2 * n) {
        let k = (0..n)
            .find(|&k| gray_digit(i, k) != digits[k])
            .expect("consecutive Gray codes differ in one digit");
        let new = gray_digit(i, k);
        qubit_wise_multiply_in_place(&step[new][digits[k]], k, &mut current, &none)?;
        digits[k] = new;
        let expectation = psi.inner(&current)?.re;
        let sq = expectation * expectation;
        sum += sq * sq;
    }
    let dim = (1usize << n) as f64;
    Ok((-(sum / dim).log2()).max(0.0))
}
