use thiserror::Error;

/// Everything that can go wrong while evaluating a response.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// Adaptive quadrature ran out of panels, or a principal value failed
    /// its excision check. `best` is the estimate reached before giving up.
    #[error("no convergence in {op}: best estimate {best_re:e}{best_im:+e}i, error estimate {error_estimate:e} after {panels} panels")]
    Convergence { op: &'static str, best_re: f64, best_im: f64, error_estimate: f64, panels: usize },

    /// The integrand returned a non-finite value.
    #[error("non-finite integrand at abscissa {abscissa:e}")]
    Integrand { abscissa: f64 },

    /// Malformed scenario document.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    /// A scenario field violates its invariant.
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    /// An internal consistency check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { op, reason: reason.into() }
    }

    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation { field: field.into(), message: message.into() }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Validation { .. } | Error::Domain { .. } => 2,
            Error::Convergence { .. } | Error::Integrand { .. } => 3,
            Error::Invariant(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
