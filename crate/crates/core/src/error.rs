use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid molecule {name:?}: {reason}")]
    Validation { name: String, reason: String },

    #[error("duplicate molecule name {0:?}")]
    DuplicateName(String),

    /// An argument outside the domain of the operation (q outside (0, 1], beta <= 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{molecule} at q = {q} has no bound states")]
    EmptySpectrum { molecule: String, q: f64 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// Partition value that cannot be log-transformed (truncated asymptotic series gone negative).
    #[error("partition value {z} at beta = {beta} is not positive")]
    NonPositivePartition { z: f64, beta: f64 },

    #[error("unsupported method combination: {0}")]
    MethodMismatch(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors that originate in registry input (file access, parsing, validation).
    pub fn is_registry_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. } | Error::Parse(_) | Error::Validation { .. } | Error::DuplicateName(_)
        )
    }

    /// True for failures of the numerical machinery rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonFinite(_) | Error::NonPositivePartition { .. })
    }
}
