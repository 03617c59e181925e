use prytz_core::Error as EngineError;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const USAGE: u8 = 2;
    pub const INPUT: u8 = 3;
    pub const NUMERIC: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    /// Bad or missing command-line arguments.
    #[error("{0}")]
    Usage(String),
    /// Unreadable or malformed input files.
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl AppError {
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => exit::USAGE,
            AppError::Engine(EngineError::NumericFailure(_)) => exit::NUMERIC,
            AppError::Input(_) | AppError::Engine(_) | AppError::Io(_) => exit::INPUT,
        }
    }
}

impl From<serde_json::Error> for AppError {
    fn from(e: serde_json::Error) -> Self {
        AppError::Input(format!("invalid JSON: {e}"))
    }
}

impl From<csv::Error> for AppError {
    fn from(e: csv::Error) -> Self {
        AppError::Input(format!("CSV error: {e}"))
    }
}

pub type AppResult<T> = Result<T, AppError>;
