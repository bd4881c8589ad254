use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Input problems (bad masses, eccentricity out of range) are separated from
/// numerical failures so that the CLI can map them onto distinct exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("solver failed after {iterations} iterations: {what} (last bracket [{lo}, {hi}])")]
    SolverFailure {
        what: String,
        iterations: usize,
        lo: f64,
        hi: f64,
    },

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("inconsistent data: {0}")]
    Inconsistency(String),

    #[error("integration failed: symplectic residual {residual:e} with {steps} steps; retry with more steps")]
    IntegrationFailure { residual: f64, steps: usize },

    #[error("eigen-solve failed: {0}")]
    EigenFailure(String),

    #[error("marginal classification: {0}")]
    Marginal(String),

    #[error("curve tracing diagnostic: {0}")]
    CurveDiagnostic(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by a numerical method.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::InvalidInput(_) | Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
