use std::path::PathBuf;

use thiserror::Error;

/// Everything that can stop a command before it produces a report.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed input document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input document: {0}")]
    Document(String),
    #[error("object `{name}`: {source}")]
    Object {
        name: String,
        #[source]
        source: bks::Error,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(#[from] bks::Error),
}

impl CliError {
    /// 1 for numerical failures inside a computation (a regression), 2 for
    /// anything caused by the input or the invocation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute(
                bks::Error::NumericalBreakdown { .. }
                | bks::Error::NoConvergence { .. }
                | bks::Error::IterationCap { .. },
            ) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
