//! State-vector quantum circuit simulation without materializing layer matrices.
//!
//! The crate is `no_std` (it needs `alloc`). Amplitudes are indexed by basis
//! bit-strings with qubit 0 as the least-significant bit, so for three qubits
//! the amplitude of `|q2 q1 q0⟩ = |011⟩` lives at index 3.
//!
//! - [`linalg`]: dense complex matrices, state vectors, Kronecker products and
//!   a Jacobi eigensolver for small Hermitian matrices.
//! - [`gates`]: the named gate catalog.
//! - [`engine`]: qubit-wise multiplication, bit-swap SWAP and multi-qubit
//!   gates with control/anticontrol masks.
//! - [`oracle`]: slow full-matrix reference implementations for differential
//!   testing.
//! - [`analysis`]: partial trace and per-qubit / per-pair statistics.
//! - [`measurement`]: branch trees and seeded shot sampling.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod circuit;
pub mod engine;
mod error;
pub mod gates;
pub mod linalg;
pub mod measurement;
pub mod oracle;
pub mod random;

pub use circuit::{Circuit, Control, ControlKind, ControlSpec, GateOp, Operation};
pub use error::{Error, Result};
pub use gates::Gate;
pub use linalg::{Complex, DenseMatrix, StateVector};

/// Default cap on the number of qubits (a 2^26 state vector is 1 GiB of
/// `Complex<f64>`).
pub const DEFAULT_MAX_QUBITS: usize = 26;
