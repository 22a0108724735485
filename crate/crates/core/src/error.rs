use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on an input value failed. `field` names the offending input.
    #[error("domain error: {field}: {reason}")]
    Domain { field: &'static str, reason: String },

    /// The coupling function is identically constant: every t in [0, inf] is a
    /// minimizer, so no finite minimizer set exists.
    #[error("coupling function is constant; the minimizer set is all of [0, inf]")]
    ConstantCoupling,

    /// The adaptive quadrature ran out of panel budget before reaching `tol`.
    #[error("quadrature did not converge: estimate {estimate:.3e} > tol {tol:.3e} after {panels} panels")]
    QuadratureDidNotConverge {
        tol: f64,
        estimate: f64,
        panels: usize,
    },

    /// The declared endpoint behavior of the integrand rules out absolute integrability.
    #[error("integrand is not integrable: {reason}")]
    NonIntegrable { reason: String },

    /// A 1-D search terminated on the edge of its bracket instead of at an
    /// interior optimum.
    #[error("optimizer stopped at its bracket boundary (log tau = {log_tau:.3})")]
    OptimizerAtBracketBoundary { log_tau: f64 },

    /// A degenerate minimizer was detected numerically but no classification
    /// row matches the parameters. Signals a tolerance failure, not a theory gap.
    #[error("inconsistent classification: {detail}")]
    InconsistentClassification { detail: String },

    /// A mathematically guaranteed relation failed numerically.
    #[error("numerical check failed: {what}")]
    CheckFailed { what: String },
}

impl Error {
    pub fn domain(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            field,
            reason: reason.into(),
        }
    }

    /// True for errors that indicate a numerical failure rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureDidNotConverge { .. }
                | Error::NonIntegrable { .. }
                | Error::OptimizerAtBracketBoundary { .. }
                | Error::InconsistentClassification { .. }
                | Error::CheckFailed { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
