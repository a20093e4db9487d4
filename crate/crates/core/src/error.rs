use thiserror::Error;

/// Failures reported by the solver and its numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("invalid {param}: {reason}")]
    Domain { param: &'static str, reason: String },

    /// An iterative method stopped without meeting its tolerance.
    #[error("{what} did not converge (achieved residual {residual:.3e})")]
    NonConvergence { what: &'static str, residual: f64 },

    /// A failure while evaluating one point of a mass sweep.
    #[error("at mu = {mu:e}: {source}")]
    AtMass { mu: f64, source: Box<Error> },
}

impl Error {
    pub(crate) fn at_mass(self, mu: f64) -> Self {
        Error::AtMass {
            mu,
            source: Box::new(self),
        }
    }

    pub(crate) fn domain(param: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            param,
            reason: reason.into(),
        }
    }

    /// True for numerical non-convergence, false for argument errors.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::NonConvergence { .. } => true,
            Error::AtMass { source, .. } => source.is_numeric(),
            Error::Domain { .. } => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects non-finite or non-positive values.
pub(crate) fn ensure_positive(param: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(
            param,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}
