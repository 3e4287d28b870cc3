use std::path::PathBuf;

/// Everything that can stop a CLI run, split by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("cannot read config file {path}: {source}")]
    ConfigFile {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("solver failure: {0}")]
    Solver(#[from] fracpc::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::ConfigFile { .. } | CliError::Output { .. } => 1,
            CliError::Solver(_) => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
