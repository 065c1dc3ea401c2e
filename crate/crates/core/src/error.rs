use thiserror::Error;

use crate::algebra::GaussianRational;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Matrix indices are stored zero-based and rendered one-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("division by a function that is identically zero")]
    DivisionByZeroFunction,
    #[error("function has a pole at {point}")]
    PoleAtPoint { point: Box<GaussianRational> },
    #[error("numerator and denominator both vanish at {point} (unnormalized input)")]
    RemovablePoint { point: Box<GaussianRational> },
    #[error("entry ({}, {}) has a pole at the evaluation point", row + 1, col + 1)]
    EntryPole { row: usize, col: usize },
    #[error("{alpha} is both a zero and a pole of the matrix function")]
    MixedPoint { alpha: Box<GaussianRational> },
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix function is singular (determinant identically zero)")]
    SingularMatrixFunction,
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("root finder did not converge after {iterations} iterations")]
    ConvergenceFailure { iterations: usize },
    #[error("{alpha} is not an eigenvalue: the evaluated matrix is nonsingular")]
    NotAnEigenvalue { alpha: String },
    #[error("root function candidate vanishes at the eigenvalue")]
    ZeroEigenvectorCandidate,
    #[error("component {} of the vector is zero; the reciprocal is undefined", index + 1)]
    ZeroComponent { index: usize },
    #[error("vector is not an eigenvector for the given eigenvalue")]
    NotAnEigenpair,
    #[error("derivative of order {order} of unknown {} vanishes identically", unknown + 1)]
    DegenerateDerivative { unknown: usize, order: usize },
    #[error("sample point t = {t} is a singularity of the candidate")]
    SampleAtSingularity { t: String },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: i64, bound: usize },
    #[error("{path}: {msg}")]
    File { path: String, msg: String },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZeroPoly => "DIVISION_BY_ZERO_POLY",
            Error::DivisionByZeroFunction => "DIVISION_BY_ZERO_FUNCTION",
            Error::PoleAtPoint { .. } => "POLE_AT_POINT",
            Error::RemovablePoint { .. } => "REMOVABLE_POINT",
            Error::EntryPole { .. } => "ENTRY_POLE",
            Error::MixedPoint { .. } => "MIXED_POINT",
            Error::NonSquare { .. } => "NON_SQUARE",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::SingularMatrixFunction => "SINGULAR_MATRIX_FUNCTION",
            Error::ZeroPolynomial => "ZERO_POLYNOMIAL",
            Error::ConvergenceFailure { .. } => "CONVERGENCE_FAILURE",
            Error::NotAnEigenvalue { .. } => "NOT_EIGENVALUE",
            Error::ZeroEigenvectorCandidate => "ZERO_EIGENVECTOR_CANDIDATE",
            Error::ZeroComponent { .. } => "ZERO_COMPONENT",
            Error::NotAnEigenpair => "NOT_EIGENPAIR",
            Error::DegenerateDerivative { .. } => "DEGENERATE_DERIVATIVE",
            Error::SampleAtSingularity { .. } => "SAMPLE_AT_SINGULARITY",
            Error::Syntax { .. } => "SYNTAX_ERROR",
            Error::Schema(_) => "SCHEMA_ERROR",
            Error::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
            Error::File { .. } => "FILE_ERROR",
        }
    }

    /// Process exit status for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::Schema(_)
            | Error::IndexOutOfRange { .. }
            | Error::File { .. }
            | Error::DivisionByZeroFunction => 2,
            Error::ConvergenceFailure { .. } => 4,
            Error::DivisionByZeroPoly | Error::RemovablePoint { .. } => 1,
            _ => 3,
        }
    }
}
