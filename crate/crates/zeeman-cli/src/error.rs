use thiserror::Error;

/// Failures that stop a command before it produces output.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at `{path}` (line {line}, column {column}): {message}")]
    Config {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Library(#[from] zeeman::Error),
}

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAIL: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const NUMERIC_ERROR: u8 = 3;
}
