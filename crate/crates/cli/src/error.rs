use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const VERIFICATION_FAILED: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const SINGULARITY: u8 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(#[from] reidlab::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Wraps a core error raised while validating input.
    pub fn config(e: impl std::fmt::Display) -> Self {
        CliError::Config(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numerical(e) if !e.is_singularity() && is_input_error(e) => exit::CONFIG,
            CliError::Numerical(_) => exit::SINGULARITY,
            _ => exit::CONFIG,
        }
    }
}

/// Core errors that mean the request itself was malformed.
fn is_input_error(e: &reidlab::Error) -> bool {
    use reidlab::Error::*;
    matches!(e, InvalidParams(_) | Unsupported(_) | ConstraintViolated { .. } | ZeroA | PathTooShort { .. })
}

pub type CliResult<T> = std::result::Result<T, CliError>;
