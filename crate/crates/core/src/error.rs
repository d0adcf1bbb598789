use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Adaptive quadrature (or another iterative routine) ran out of refinement budget.
    #[error("numeric failure: {message} (best estimate {estimate:e}, residual {residual:e})")]
    NumericFailure {
        message: String,
        estimate: f64,
        residual: f64,
    },

    #[error("Hilbert space dimension {dimension} exceeds the limit of {limit}; reduce the bin count or the Fock cutoff")]
    DimensionOverflow { dimension: u128, limit: usize },

    /// Every phase is optimal (the spectrum does not depend on it).
    #[error("degenerate optimum: the spectrum is independent of the phase")]
    DegenerateOptimum,

    #[error("invalid scenario:\n  - {}", .0.join("\n  - "))]
    Validation(Vec<String>),

    #[error("config: {0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn finite(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidInput(format!(
            "{name} must be finite, got {x}"
        )))
    }
}
