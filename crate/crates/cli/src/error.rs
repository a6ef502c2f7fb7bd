use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced to the user, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("set file {path}: {reason}")]
    SetFile { path: PathBuf, reason: String },

    #[error(transparent)]
    Model(#[from] relaxfit_core::Error),

    #[error("{failed} of {total} sweep entries failed")]
    Sweep { failed: usize, total: usize, numeric: bool },
}

impl CliError {
    /// 2 for config and input problems, 3 for numeric or physicality failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Read { .. } | CliError::Write { .. } | CliError::SetFile { .. } => 2,
            CliError::Model(relaxfit_core::Error::InvalidParameter { .. }) => 2,
            CliError::Model(_) => 3,
            CliError::Sweep { numeric, .. } => {
                if *numeric {
                    3
                } else {
                    2
                }
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
