use std::path::PathBuf;

use crate::propagator::FieldState;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A physical input lies outside its admissible range.
    #[error("invalid value for `{field}`: {reason}")]
    Domain { field: &'static str, reason: String },

    #[error("susceptibility denominator vanishes (|D| = {magnitude:e}) at {point}")]
    Singular { magnitude: f64, point: String },

    #[error("Re(Γ₄) = 0: the Kerr coefficient is undefined at this detuning")]
    SingularDetuning,

    #[error(
        "Richardson extrapolation for χ⁽³⁾ did not converge: estimates {first:e} and {second:e}"
    )]
    NonConvergent { first: f64, second: f64 },

    #[error("dark-soliton branch (C_n = {c_n:e} ≥ 0) is not supported")]
    Branch { c_n: f64 },

    #[error("scenario violates the validity regime: {}", failing.join(", "))]
    Regime { failing: Vec<String> },

    #[error("zero pivot in tridiagonal solve at row {row} (step {step})")]
    ZeroPivot { row: usize, step: usize },

    #[error("non-finite field at step {step}; try a smaller dz")]
    Divergence { step: usize },

    #[error("propagation failed after {completed} completed steps: {source}")]
    Propagation {
        completed: usize,
        #[source]
        source: Box<Error>,
        last: Box<FieldState>,
    },

    #[error("at {x_index}: {source}")]
    AtPoint {
        x_index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("configuration: {0}")]
    Config(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed field file: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn domain(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
