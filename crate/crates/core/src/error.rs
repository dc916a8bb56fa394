use thiserror::Error;

/// Errors raised by constructors and operations.
///
/// Failed *axiom checks* are not errors: checkers return a
/// [`crate::algebra::Check`] carrying a witness instead. Errors signal
/// malformed inputs (dimension or field mismatches, broken symmetry),
/// unsatisfiable requests (inverting a singular matrix) or violated
/// preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("axiom violation: {0}")]
    AxiomViolation(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
