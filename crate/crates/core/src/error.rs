use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("mean weight did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// No vertex in the graph has positive attachment weight.
    #[error("total attachment weight is zero: {0}")]
    ZeroTotalWeight(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("expected a {expected} distribution, got {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("calibration infeasible: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn model(msg: impl Into<String>) -> Self {
        Error::InvalidModel(msg.into())
    }

    /// Short stable identifier, used by the CLI's machine-readable error line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::InvalidModel(_) => "invalid_model",
            Error::NoConvergence { .. } => "no_convergence",
            Error::ZeroTotalWeight(_) => "zero_total_weight",
            Error::Parse { .. } => "parse",
            Error::InsufficientData(_) => "insufficient_data",
            Error::KindMismatch { .. } => "kind_mismatch",
            Error::Infeasible(_) => "infeasible",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
