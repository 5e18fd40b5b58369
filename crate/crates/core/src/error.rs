//! Error types shared by all engines.

use thiserror::Error;

/// Errors raised by series arithmetic, enumeration kernels and character
/// engines.  Everything is exact, so an error always means a contract
/// violation (bad input, exhausted truncation window, or an internal bug),
/// never a numerical accident.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("series variable mismatch: `{0}` vs `{1}`")]
    VariableMismatch(String, String),

    #[error("coefficient of {var}^{exponent} lies outside the reliable window [{lo}, {hi}]; re-run with a larger truncation order")]
    WindowExhausted {
        var: String,
        exponent: i64,
        lo: i64,
        hi: i64,
    },

    #[error("leading coefficient is not invertible; cannot take series reciprocal")]
    NonInvertibleLeading,

    #[error("permutation size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("support size {0} exceeds the enumeration cap {1}")]
    CapExceeded(usize, usize),

    #[error("division by {divisor} is not exact for {context}; this signals an implementation bug")]
    NonExactDivision { divisor: String, context: String },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),

    #[error("invalid rational: {0}")]
    InvalidRational(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
