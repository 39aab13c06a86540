use thiserror::Error;

/// Errors raised by cycle, Jacobian, number-theory and inference operations.
///
/// Every variant renders as `CODE: detail` where `CODE` is a stable
/// machine-readable tag; the CLI and the Python bindings surface these verbatim.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("AMBIENT_MISMATCH: {0}")]
    AmbientMismatch(String),

    #[error("INDEX_OUT_OF_RANGE: {0}")]
    IndexOutOfRange(String),

    #[error("NON_INJECTIVE_MAP: {0}")]
    NonInjectiveMap(String),

    #[error("NOT_ZERO_DIMENSIONAL: {0}")]
    NotZeroDimensional(String),

    #[error("ARITY_MISMATCH: {0}")]
    ArityMismatch(String),

    #[error("ARITY_TOO_SMALL: {0}")]
    ArityTooSmall(String),

    #[error("GENUS_MISMATCH: {0}")]
    GenusMismatch(String),

    #[error("GENUS_TOO_SMALL: {0}")]
    GenusTooSmall(String),

    #[error("UNSUPPORTED_DECORATION: {0}")]
    UnsupportedDecoration(String),

    #[error("INVALID_GENUS: {0}")]
    InvalidGenus(String),

    #[error("FACT_NOT_DERIVED: {0}")]
    FactNotDerived(String),

    #[error("SYNTAX_ERROR at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("AMBIENT_AMBIGUOUS: {0}")]
    AmbientAmbiguous(String),
}

pub type Result<T> = std::result::Result<T, CycError>;
