use thiserror::Error;

/// Errors raised by the phase engines and their building blocks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhaseError {
    /// An input lies outside the domain where the model is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// An adaptive integration did not reach the requested tolerance.
    #[error("quadrature did not converge after {subdivisions} subdivisions: best estimate {estimate:e} with error {error:e}")]
    Quadrature {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    /// A code path that is intentionally not modelled.
    #[error("not modelled: {0}")]
    NotModelled(&'static str),
}

impl PhaseError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        PhaseError::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, PhaseError>;
