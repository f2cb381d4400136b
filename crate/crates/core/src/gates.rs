//! Named gate matrices.

use alloc::string::ToString;
use core::f64::consts::FRAC_1_SQRT_2;
use core::fmt;
use core::str::FromStr;

use crate::linalg::{dagger, matmul, Complex, DenseMatrix, I, ONE, ZERO};
use crate::{Error, Result};

/// Tolerance for [`is_unitary`].
pub const UNITARY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    I,
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Swap,
    ISwap,
    SqrtSwap,
}

impl Gate {
    pub const ALL: [Gate; 12] = [
        Gate::I,
        Gate::H,
        Gate::X,
        Gate::Y,
        Gate::Z,
        Gate::S,
        Gate::Sdg,
        Gate::T,
        Gate::Tdg,
        Gate::Swap,
        Gate::ISwap,
        Gate::SqrtSwap,
    ];

    /// Upper-case token used in circuit files.
    pub fn name(self) -> &'static str {
        match self {
            Gate::I => "I",
            Gate::H => "H",
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::S => "S",
            Gate::Sdg => "SDG",
            Gate::T => "T",
            Gate::Tdg => "TDG",
            Gate::Swap => "SWAP",
            Gate::ISwap => "ISWAP",
            Gate::SqrtSwap => "SQRTSWAP",
        }
    }

    /// Number of target qubits, not counting controls.
    pub fn arity(self) -> usize {
        match self {
            Gate::Swap | Gate::ISwap | Gate::SqrtSwap => 2,
            _ => 1,
        }
    }

    /// The gate's `2^arity × 2^arity` matrix. For two-qubit gates, bit 0 of
    /// the row/column index is the first target.
    pub fn matrix(self) -> DenseMatrix {
        let h = FRAC_1_SQRT_2;
        let c = |re, im| Complex::new(re, im);
        match self {
            Gate::I => DenseMatrix::from_rows([[ONE, ZERO], [ZERO, ONE]]),
            Gate::H => DenseMatrix::from_real_rows([[h, h], [h, -h]]),
            Gate::X => DenseMatrix::from_rows([[ZERO, ONE], [ONE, ZERO]]),
            Gate::Y => DenseMatrix::from_rows([[ZERO, -I], [I, ZERO]]),
            Gate::Z => DenseMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]]),
            Gate::S => DenseMatrix::from_rows([[ONE, ZERO], [ZERO, I]]),
            Gate::Sdg => DenseMatrix::from_rows([[ONE, ZERO], [ZERO, -I]]),
            Gate::T => DenseMatrix::from_rows([[ONE, ZERO], [ZERO, c(h, h)]]),
            Gate::Tdg => DenseMatrix::from_rows([[ONE, ZERO], [ZERO, c(h, -h)]]),
            Gate::Swap => DenseMatrix::from_real_rows([
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ]),
            Gate::ISwap => DenseMatrix::from_rows([
                [ONE, ZERO, ZERO, ZERO],
                [ZERO, ZERO, I, ZERO],
                [ZERO, I, ZERO, ZERO],
                [ZERO, ZERO, ZERO, ONE],
            ]),
            Gate::SqrtSwap => {
                let p = c(0.5, 0.5);
                let m = c(0.5, -0.5);
                DenseMatrix::from_rows([
                    [ONE, ZERO, ZERO, ZERO],
                    [ZERO, p, m, ZERO],
                    [ZERO, m, p, ZERO],
                    [ZERO, ZERO, ZERO, ONE],
                ])
            }
        }
    }

    /// The inverse gate, which is again in the catalog.
    pub fn inverse(self) -> Gate {
        match self {
            Gate::S => Gate::Sdg,
            Gate::Sdg => Gate::S,
            Gate::T => Gate::Tdg,
            Gate::Tdg => Gate::T,
            // ISWAP† and SQRTSWAP† are not in the catalog; callers that need
            // them use the dagger of the matrix.
            other => other,
        }
    }

    /// True for gates that are their own inverse.
    pub fn is_self_inverse(self) -> bool {
        !matches!(
            self,
            Gate::S | Gate::Sdg | Gate::T | Gate::Tdg | Gate::ISwap | Gate::SqrtSwap
        )
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Gate {
    type Err = Error;

    /// Case-insensitive catalog lookup.
    fn from_str(s: &str) -> Result<Self> {
        Gate::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownGate(s.to_string()))
    }
}

/// Catalog lookup by (case-insensitive) name.
pub fn gate_matrix(name: &str) -> Result<DenseMatrix> {
    name.parse::<Gate>().map(Gate::matrix)
}

/// `‖M†M − I‖_max ≤ 1e-12`.
pub fn is_unitary(m: &DenseMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let Ok(prod) = matmul(&dagger(m), m) else {
        return false;
    };
    let n = m.rows();
    for r in 0..n {
        for c in 0..n {
            let expected = if r == c { ONE } else { ZERO };
            if (prod[(r, c)] - expected).norm() > UNITARY_TOLERANCE {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(g: Gate) -> DenseMatrix {
        matmul(&g.matrix(), &g.matrix()).unwrap()
    }

    fn close(a: &DenseMatrix, b: &DenseMatrix) -> bool {
        a.max_abs_diff(b) <= 1e-12
    }

    #[test]
    fn printed_matrices() {
        assert_eq!(
            gate_matrix("X").unwrap(),
            DenseMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
        );
        assert_eq!(
            gate_matrix("y").unwrap(),
            DenseMatrix::from_rows([[ZERO, -I], [I, ZERO]])
        );
        let t = gate_matrix("T").unwrap();
        let expected = Complex::from_polar(1.0, core::f64::consts::FRAC_PI_4);
        assert!((t[(1, 1)] - expected).norm() < 1e-15);
        assert_eq!(t[(0, 0)], ONE);
    }

    #[test]
    fn unknown_gate_is_a_catalog_error() {
        assert_eq!(
            gate_matrix("RX"),
            Err(Error::UnknownGate(alloc::string::String::from("RX")))
        );
    }

    #[test]
    fn catalog_is_unitary() {
        for g in Gate::ALL {
            assert!(is_unitary(&g.matrix()), "{g}");
            assert_eq!(g.matrix().rows(), 1 << g.arity());
        }
        assert!(!is_unitary(&DenseMatrix::from_real_rows([
            [1.0, 0.0],
            [0.0, 0.0]
        ])));
        assert!(!is_unitary(&DenseMatrix::zeros(2, 1).unwrap()));
    }

    #[test]
    fn involutions_square_to_identity() {
        let id = DenseMatrix::identity(2).unwrap();
        for g in [Gate::H, Gate::X, Gate::Y, Gate::Z] {
            assert!(close(&sq(g), &id), "{g}");
        }
    }

    #[test]
    fn phase_gate_roots() {
        assert!(close(&sq(Gate::S), &Gate::Z.matrix()));
        assert!(close(&sq(Gate::T), &Gate::S.matrix()));
        let t4 = matmul(&sq(Gate::T), &sq(Gate::T)).unwrap();
        assert!(close(&t4, &Gate::Z.matrix()));
        let z2 = sq(Gate::Z);
        assert!(close(&matmul(&t4, &t4).unwrap(), &z2));
        for g in [Gate::S, Gate::T] {
            let prod = matmul(&g.matrix(), &g.inverse().matrix()).unwrap();
            assert!(close(&prod, &DenseMatrix::identity(2).unwrap()));
            assert!(close(&g.inverse().matrix(), &dagger(&g.matrix())));
        }
    }

    #[test]
    fn sqrt_swap_squares_to_swap() {
        assert!(close(&sq(Gate::SqrtSwap), &Gate::Swap.matrix()));
        assert!(is_unitary(&Gate::ISwap.matrix()));
    }

    #[test]
    fn names_round_trip() {
        for g in Gate::ALL {
            assert_eq!(g.name().parse::<Gate>().unwrap(), g);
            assert_eq!(g.name().to_ascii_lowercase().parse::<Gate>().unwrap(), g);
        }
    }
}
