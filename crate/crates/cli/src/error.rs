use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] coinwalk_core::Error),

    #[error("{0}")]
    Validation(String),

    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 = validation, 3 = numerical convergence, 1 = everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(coinwalk_core::Error::QuadratureConvergence { .. }) => 3,
            CliError::Core(_) | CliError::Validation(_) => 2,
            CliError::Io { .. } => 1,
        }
    }
}

pub fn io_error(path: &std::path::Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}
