//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by polynomial construction, root extraction, transforms
/// and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Operand degrees differ where equal degrees are required.
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// A precondition on arguments failed (degree 0, index out of range,
    /// parameter outside its admissible region, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Root extraction found a conjugate pair beyond tolerance.
    #[error("not real-rooted: residual imaginary part {max_imag:.3e}")]
    NotRealRooted { max_imag: f64 },

    /// The iteration did not reach the residual tolerance.
    #[error("root solver did not converge after {iterations} iterations (worst relative residual {residual:.3e})")]
    NonConvergence { iterations: u32, residual: f64 },

    /// `p = x^d` has no finite S-transform.
    #[error("S-transform undefined for x^d")]
    STransformUndefined,

    /// The polynomial has a coefficient pattern incompatible with
    /// nonnegative roots.
    #[error("negative root detected: {0}")]
    NegativeRoot(String),

    /// Reversal needs all roots strictly positive.
    #[error("root at or below zero: reversal requires e~_d > 0")]
    RootAtOrBelowZero,

    /// The requested law evaluation has no closed form or quadrature path.
    #[error("unsupported for this law: {0}")]
    UnsupportedLaw(String),

    /// Decimal parse failure in the polynomial file format.
    #[error("{0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
