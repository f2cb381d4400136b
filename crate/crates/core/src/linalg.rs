//! Complex dense linear algebra shared by the oracle and analysis layers.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

// Float methods for f64 under no_std; std provides them inherently in tests.
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

pub type Complex = num_complex::Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

/// Largest row or column count any matrix may have.
pub const MAX_DIM: usize = 1 << crate::DEFAULT_MAX_QUBITS;
/// Largest total entry count (2^30 entries is 16 GiB).
pub const MAX_ENTRIES: usize = 1 << 30;

/// Squared norm tolerance for a state vector to count as normalized.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

fn check_dims(rows: usize, cols: usize) -> Result<usize> {
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyMatrix);
    }
    match rows.checked_mul(cols) {
        Some(len) if rows <= MAX_DIM && cols <= MAX_DIM && len <= MAX_ENTRIES => Ok(len),
        _ => Err(Error::DimensionOverflow { rows, cols }),
    }
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        let len = check_dims(rows, cols)?;
        if data.len() != len {
            return Err(Error::DimensionMismatch {
                op: "DenseMatrix::new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        let len = check_dims(rows, cols)?;
        Ok(Self {
            rows,
            cols,
            data: vec![ZERO; len],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim, dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    /// Builds a matrix from nested rows. Panics on ragged or empty input, so
    /// it is meant for literals.
    pub fn from_rows<const R: usize, const C: usize>(rows: [[Complex; C]; R]) -> Self {
        assert!(R > 0 && C > 0, "matrix literal must be non-empty");
        Self {
            rows: R,
            cols: C,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    /// Real-valued literal, see [`DenseMatrix::from_rows`].
    pub fn from_real_rows<const R: usize, const C: usize>(rows: [[f64; C]; R]) -> Self {
        Self::from_rows(rows.map(|r| r.map(|x| Complex::new(x, 0.0))))
    }

    pub fn diagonal(entries: &[Complex]) -> Result<Self> {
        let mut m = Self::zeros(entries.len(), entries.len())?;
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        Ok(m)
    }

    /// Column vector holding the amplitudes of `state`.
    pub fn column(state: &StateVector) -> Self {
        Self {
            rows: state.len(),
            cols: 1,
            data: state.amplitudes().to_vec(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn data(&self) -> &[Complex] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [Complex] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex> {
        self.data
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "add",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    /// Largest entrywise modulus of `self - other`, or infinity when the
    /// shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖A − A†‖_max ≤ tol`; false for non-square matrices.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        for r in 0..n {
            for c in r..n {
                if (self[(r, c)] - self[(c, r)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let rows = a.rows.checked_mul(b.rows);
    let cols = a.cols.checked_mul(b.cols);
    let (Some(rows), Some(cols)) = (rows, cols) else {
        return Err(Error::DimensionOverflow {
            rows: a.rows.saturating_mul(b.rows),
            cols: a.cols.saturating_mul(b.cols),
        });
    };
    let mut out = DenseMatrix::zeros(rows, cols)?;
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let x = a[(ia, ja)];
            if x == ZERO {
                continue;
            }
            for ib in 0..b.rows {
                let row = ia * b.rows + ib;
                for jb in 0..b.cols {
                    out[(row, ja * b.cols + jb)] = x * b[(ib, jb)];
                }
            }
        }
    }
    Ok(out)
}

pub fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "matmul",
            left: (a.rows, a.cols),
            right: (b.rows, b.cols),
        });
    }
    let mut out = DenseMatrix::zeros(a.rows, b.cols)?;
    for i in 0..a.rows {
        let out_row = &mut out.data[i * b.cols..(i + 1) * b.cols];
        for k in 0..a.cols {
            let x = a.data[i * a.cols + k];
            if x == ZERO {
                continue;
            }
            let b_row = &b.data[k * b.cols..(k + 1) * b.cols];
            for (o, &y) in out_row.iter_mut().zip(b_row) {
                *o += x * y;
            }
        }
    }
    Ok(out)
}

/// Conjugate transpose.
pub fn dagger(a: &DenseMatrix) -> DenseMatrix {
    let mut data = Vec::with_capacity(a.data.len());
    for c in 0..a.cols {
        for r in 0..a.rows {
            data.push(a[(r, c)].conj());
        }
    }
    DenseMatrix {
        rows: a.cols,
        cols: a.rows,
        data,
    }
}

pub fn trace(a: &DenseMatrix) -> Result<Complex> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    Ok((0..a.rows).map(|i| a[(i, i)]).sum())
}

/// `|u⟩⟨v|`; the second argument is conjugated.
pub fn outer(u: &StateVector, v: &StateVector) -> Result<DenseMatrix> {
    let mut out = DenseMatrix::zeros(u.len(), v.len())?;
    for (r, &x) in u.amplitudes().iter().enumerate() {
        for (c, &y) in v.amplitudes().iter().enumerate() {
            out[(r, c)] = x * y.conj();
        }
    }
    Ok(out)
}

/// Tolerance on `‖A − A†‖_max` accepted by the eigensolver.
pub const HERMITIAN_TOLERANCE: f64 = 1e-9;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(a: &DenseMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(a).map(|(values, _)| values)
}

/// Eigen-decomposition `A = V diag(λ) V†` of a Hermitian matrix by cyclic
/// complex Jacobi rotations. Eigenvalues are ascending and the columns of `V`
/// are the matching orthonormal eigenvectors.
pub fn hermitian_eigen(a: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if !a.is_hermitian(HERMITIAN_TOLERANCE) {
        return Err(Error::NotHermitian);
    }
    let n = a.rows;
    // Work on the exactly Hermitian part so round-off in the input cannot
    // leak into the rotations.
    let mut m = a.clone();
    for r in 0..n {
        m[(r, r)] = Complex::new(a[(r, r)].re, 0.0);
        for c in r + 1..n {
            let avg = (a[(r, c)] + a[(c, r)].conj()) * 0.5;
            m[(r, c)] = avg;
            m[(c, r)] = avg.conj();
        }
    }
    let mut v = DenseMatrix::identity(n)?;

    let total: f64 = m.data.iter().map(|z| z.norm_sqr()).sum();
    let stop = (f64::EPSILON * f64::EPSILON) * total;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off <= stop || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = DenseMatrix::zeros(n, n)?;
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, dst)] = v[(r, src)];
        }
    }
    Ok((values, vectors))
}

/// One Jacobi step zeroing `m[p][q]`: `m ← J† m J`, `v ← v J` with
/// `J = diag(1, ē) · R(c, s)` acting on the (p, q) plane.
fn rotate(m: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let e = apq / g;
    let theta = (m[(q, q)].re - m[(p, p)].re) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ec = e.conj();
    let n = m.rows;

    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * c - ec * akq * s;
        m[(k, q)] = akp * s + ec * akq * c;
    }
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = apk * c - e * aqk * s;
        m[(q, k)] = apk * s + e * aqk * c;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - ec * vkq * s;
        v[(k, q)] = vkp * s + ec * vkq * c;
    }
}

/// Normalized vector of `2^n` amplitudes; index bit `k` is qubit `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex>,
}

impl StateVector {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n > crate::DEFAULT_MAX_QUBITS {
            return Err(Error::TooManyQubits {
                n,
                max: crate::DEFAULT_MAX_QUBITS,
            });
        }
        let len = 1usize << n;
        if index >= len {
            return Err(Error::WireOutOfRange { wire: index, n });
        }
        let mut amps = vec![ZERO; len];
        amps[index] = ONE;
        Ok(Self { n, amps })
    }

    /// Wraps amplitudes that must already be normalized to within
    /// [`NORM_TOLERANCE`].
    pub fn from_amplitudes(amps: Vec<Complex>) -> Result<Self> {
        let state = Self::from_unnormalized(amps)?;
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(state)
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(amps: Vec<Complex>) -> Result<Self> {
        let mut state = Self::from_unnormalized(amps)?;
        let norm_sqr = state.norm_sqr();
        if norm_sqr == 0.0 || !norm_sqr.is_finite() {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let scale = 1.0 / norm_sqr.sqrt();
        state.amps.iter_mut().for_each(|a| *a *= scale);
        Ok(state)
    }

    fn from_unnormalized(amps: Vec<Complex>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::StateLength { len });
        }
        let n = len.trailing_zeros() as usize;
        if n > crate::DEFAULT_MAX_QUBITS {
            return Err(Error::TooManyQubits {
                n,
                max: crate::DEFAULT_MAX_QUBITS,
            });
        }
        Ok(Self { n, amps })
    }

    /// Kernel output; the caller guarantees the length and the norm.
    pub(crate) fn from_raw(n: usize, amps: Vec<Complex>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n);
        Self { n, amps }
    }

    /// Qubit count.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex] {
        &self.amps
    }

    #[inline]
    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                op: "inner",
                left: (self.len(), 1),
                right: (other.len(), 1),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Multiplies every amplitude by `e^{iθ}`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let phase = Complex::from_polar(1.0, theta);
        Self {
            n: self.n,
            amps: self.amps.iter().map(|&a| a * phase).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Distance after removing the global phase that best aligns `other`
    /// with `self`.
    pub fn max_abs_diff_up_to_phase(&self, other: &Self) -> f64 {
        let Ok(overlap) = other.inner(self) else {
            return f64::INFINITY;
        };
        if overlap.norm() == 0.0 {
            return self.max_abs_diff(other);
        }
        let phase = overlap / overlap.norm();
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(&a, &b)| (a - b * phase).norm())
            .fold(0.0, f64::max)
    }
}
