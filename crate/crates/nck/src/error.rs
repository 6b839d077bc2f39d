//! Error type shared by all modules.
//!
//! Every message carries the offending quantity so batch runs can be
//! diagnosed from logs alone.

/// Errors produced by construction and computation routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("non-finite coordinate {value} at position {index}")]
    NonFinite { value: f64, index: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("argument {x} outside domain [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },

    #[error("invalid interval: lo {lo} > hi {hi}")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty delta schedule")]
    EmptyDeltas,

    #[error("alpha too small for delta: omega(delta) = {omega} > alpha = {alpha}")]
    AlphaTooSmall { omega: f64, alpha: f64 },

    #[error("quantization range exceeded: |value| = {value} > lattice bound {bound}")]
    QuantizationRange { value: f64, bound: f64 },

    #[error("grid cannot resolve family: mesh {mesh} >= smallest feature {feature}")]
    MeshTooCoarse { mesh: f64, feature: f64 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects non-positive and non-finite parameters (NaN included).
pub(crate) fn ensure_positive(value: f64, what: &str) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{what} must be positive, got {value}"
        )))
    }
}
