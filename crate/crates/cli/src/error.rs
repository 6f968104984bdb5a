use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] recollement::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{0}")]
    Usage(String),

    #[error("{failed} of {total} corpus entries failed")]
    Corpus { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use recollement::Error as E;
        match self {
            CliError::Core(E::Parse(_)) | CliError::Usage(_) => 2,
            CliError::Core(E::NotAdmissibleWithinBound { .. }) => 3,
            CliError::Core(E::ScopeViolation(_)) => 4,
            _ => 1,
        }
    }
}

pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
