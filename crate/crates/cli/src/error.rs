use std::io;
use std::path::PathBuf;

use bmwcert_core::{BmwError, FamilyError, ScalarError};
use thiserror::Error;

/// Errors that stop a job before a report can be produced.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error in {context} at position {pos}: {msg}")]
    Parse {
        context: String,
        pos: usize,
        msg: String,
    },
    #[error("{context}: {source}")]
    Scalar {
        context: String,
        #[source]
        source: ScalarError,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("duplicate entry at {0}")]
    DuplicateEntry(String),
    #[error("cannot access {path}: {source}", path = path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Bmw(#[from] BmwError),
    #[error("{0}")]
    Config(String),
}

impl CliError {
    pub(crate) fn scalar(context: impl Into<String>, source: ScalarError) -> Self {
        match source {
            ScalarError::Syntax { pos, msg } => CliError::Parse {
                context: context.into(),
                pos,
                msg,
            },
            source => CliError::Scalar {
                context: context.into(),
                source,
            },
        }
    }

    pub(crate) fn json(context: impl Into<String>, e: serde_json::Error) -> Self {
        CliError::Parse {
            context: context.into(),
            pos: e.column(),
            msg: format!("line {}: {e}", e.line()),
        }
    }
}
