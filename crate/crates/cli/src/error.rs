use thiserror::Error;

/// Exit codes: 0 success, 1 usage, 2 data, 3 numerical failure.
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("config {path}: {message}")]
    Config { path: String, message: String },

    #[error("{path}: {source}")]
    Input { path: String, source: netspectra::Error },

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] netspectra::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Config { .. } | CliError::Io { .. } => EXIT_DATA,
            CliError::Input { source, .. } | CliError::Core(source) => core_exit_code(source),
        }
    }
}

fn core_exit_code(e: &netspectra::Error) -> i32 {
    use netspectra::Error::*;
    match e {
        NoConvergence { .. } => EXIT_NUMERICAL,
        InvalidParameter(_) | InvalidNode { .. } => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}
