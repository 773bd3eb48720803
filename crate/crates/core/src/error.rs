use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown seminorm index {0}")]
    UnknownSeminorm(usize),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("ring has no multiplicative half")]
    MissingHalf,

    #[error("module-class series cannot be multiplied by a module-class series ({0:?} x {1:?})")]
    ModulePairing(crate::laurent::GrowthClass, crate::laurent::GrowthClass),

    #[error("limit at z=1 is defined only up to summable series, got {0:?}")]
    ClassTooLarge(crate::laurent::GrowthClass),

    #[error("decay certificate failed: seminorm {norm:.3e} exceeds threshold {threshold:.3e}")]
    DecayCertificate { norm: f64, threshold: f64 },

    #[error("spectral class violated: {0}")]
    ClassViolation(String),

    #[error("backend {backend} cannot compute {what}")]
    UnsupportedBackend { backend: &'static str, what: String },

    #[error("error budget {budget:.3e} above tolerance {tolerance:.3e}")]
    NonConvergence { budget: f64, tolerance: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
