use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the domain of a function (branch cut, pole, strip).
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// A named hypothesis of a certificate does not hold.
    #[error("hypothesis `{name}` violated: {detail}")]
    Hypothesis { name: &'static str, detail: String },

    /// Descriptor data violates one of the L-function axioms (L1)-(L4).
    #[error("descriptor violates {axiom}: {detail}")]
    Axiom { axiom: &'static str, detail: String },

    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },

    #[error("invalid descriptor: {0}")]
    Descriptor(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    /// A requested accuracy could not be reached.
    #[error("budget unreachable: {0}")]
    Budget(String),

    #[error("missing coefficient data: {0}")]
    MissingCoefficient(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { func, detail: detail.into() }
    }

    pub(crate) fn hypothesis(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Hypothesis { name, detail: detail.into() }
    }

    pub(crate) fn axiom(axiom: &'static str, detail: impl Into<String>) -> Self {
        Error::Axiom { axiom, detail: detail.into() }
    }
}
