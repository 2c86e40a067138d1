use thiserror::Error;

use crate::magma::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments: out-of-range indices, wrong array shapes, unknown names.
    #[error("input error: {0}")]
    Input(String),

    /// The structure lacks a property the operation needs (no divisions, no identity, ...).
    #[error("structure error: {0}")]
    Structure(String),

    /// A checkable precondition failed; `witness` holds the offending elements.
    #[error("precondition failed: {message} (witness {witness:?})")]
    Precondition { message: String, witness: Vec<Elem> },

    /// A factor system produced a table that is not a quasigroup/loop.
    #[error("factor system rejected: {message} (witness {witness:?})")]
    FactorRejected { message: String, witness: Vec<Elem> },

    #[error("resource bound exceeded: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn precondition(message: impl Into<String>, witness: Vec<Elem>) -> Self {
        Error::Precondition {
            message: message.into(),
            witness,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition { .. } | Error::FactorRejected { .. } | Error::Structure(_) => 1,
            Error::Input(_) | Error::Parse(_) | Error::Io(_) => 2,
            Error::Resource(_) => 3,
        }
    }
}
