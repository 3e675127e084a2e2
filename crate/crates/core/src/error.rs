use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector entry {index} is not finite")]
    InvalidVector { index: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("numerical failure{}: {message}", step.map(|s| format!(" at step {s}")).unwrap_or_default())]
    Numerical { step: Option<usize>, message: String },

    #[error("index range violation: {0}")]
    Range(String),

    #[error("range and kernel bases do not split the space (condition estimate {condition:.3e})")]
    DegenerateSplit { condition: f64 },

    #[error("operator has a nonzero offset")]
    NotLinear,

    #[error("I - A is singular or ill-conditioned (condition estimate {condition:.3e})")]
    NonContractive { condition: f64 },

    #[error(
        "no strip with norm <= {target} starting at index {start} within gap {max_gap} \
         (best achievable norm {best_norm:.6})"
    )]
    NoContractiveStrip {
        start: usize,
        max_gap: usize,
        target: f64,
        best_norm: f64,
    },

    #[error("residue class {class} is not Cauchy (residual {residual:.3e})")]
    NotClustered { class: usize, residual: f64 },

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("invalid configuration at `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn numerical(message: impl Into<String>) -> Self {
        Error::Numerical {
            step: None,
            message: message.into(),
        }
    }

    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }

    pub(crate) fn dimension(expected: usize, found: usize) -> Self {
        Error::Dimension { expected, found }
    }
}
