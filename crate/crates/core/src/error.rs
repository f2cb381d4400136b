use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// Operand shapes do not conform.
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    /// A result would exceed the supported matrix size.
    DimensionOverflow {
        rows: usize,
        cols: usize,
    },
    /// A matrix or vector had zero rows or columns.
    EmptyMatrix,
    /// Amplitude count is not a power of two.
    StateLength {
        len: usize,
    },
    NotNormalized {
        norm_sqr: f64,
    },
    TooManyQubits {
        n: usize,
        max: usize,
    },
    WireOutOfRange {
        wire: usize,
        n: usize,
    },
    DuplicateTarget {
        wire: usize,
    },
    /// A wire appears more than once among the controls, or as both a
    /// control and an anticontrol.
    ConflictingControl {
        wire: usize,
    },
    ControlOnTarget {
        wire: usize,
    },
    ArityMismatch {
        gate: &'static str,
        expected: usize,
        got: usize,
    },
    MeasurementWithControls,
    NotUnitary,
    NotHermitian,
    NotSquare {
        rows: usize,
        cols: usize,
    },
    InvalidDensityMatrix(&'static str),
    UnknownGate(String),
    /// Qubit lists for the partial trace must be ascending without duplicates.
    InvalidQubitList,
    /// Unitary-only routines were handed a circuit containing measurements.
    UnexpectedMeasurement,
    /// A gate or measurement refers to a wire already removed by measurement.
    MeasuredWire {
        wire: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { op, left, right } => write!(
                f,
                "dimension mismatch in {op}: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::DimensionOverflow { rows, cols } => {
                write!(
                    f,
                    "matrix dimensions {rows}x{cols} exceed the supported size"
                )
            }
            Error::EmptyMatrix => f.write_str("matrix has no entries"),
            Error::StateLength { len } => {
                write!(f, "state vector length {len} is not a power of two")
            }
            Error::NotNormalized { norm_sqr } => {
                write!(
                    f,
                    "state vector is not normalized (squared norm {norm_sqr})"
                )
            }
            Error::TooManyQubits { n, max } => {
                write!(f, "{n} qubits exceeds the configured limit of {max}")
            }
            Error::WireOutOfRange { wire, n } => {
                write!(f, "wire {wire} out of range for {n} qubits")
            }
            Error::DuplicateTarget { wire } => write!(f, "wire {wire} used twice as a target"),
            Error::ConflictingControl { wire } => {
                write!(
                    f,
                    "wire {wire} listed more than once as a control or anticontrol"
                )
            }
            Error::ControlOnTarget { wire } => {
                write!(f, "wire {wire} is both a control and a target")
            }
            Error::ArityMismatch {
                gate,
                expected,
                got,
            } => write!(f, "gate {gate} takes {expected} target(s), got {got}"),
            Error::MeasurementWithControls => f.write_str("measurement cannot be controlled"),
            Error::NotUnitary => f.write_str("matrix is not unitary"),
            Error::NotHermitian => f.write_str("matrix is not Hermitian"),
            Error::NotSquare { rows, cols } => write!(f, "matrix is not square ({rows}x{cols})"),
            Error::InvalidDensityMatrix(why) => write!(f, "invalid density matrix: {why}"),
            Error::UnknownGate(name) => write!(f, "unknown gate `{name}`"),
            Error::InvalidQubitList => {
                f.write_str("qubit list must be ascending, without duplicates, and in range")
            }
            Error::UnexpectedMeasurement => {
                f.write_str("circuit contains measurements; use the measurement module")
            }
            Error::MeasuredWire { wire } => {
                write!(f, "wire {wire} was already consumed by a measurement")
            }
        }
    }
}

impl core::error::Error for Error {}
