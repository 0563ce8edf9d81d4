use serde::Serialize;
use thiserror::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_OUT_OF_BAND: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },
    #[error("validation error: {invariant}")]
    Validation { invariant: String },
    #[error("degenerate fit: error {error:e} is below the noise floor")]
    DegenerateFit { error: f64 },
    #[error(transparent)]
    Numerical(#[from] asymlab::Error),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn validation(invariant: impl Into<String>) -> Self {
        CliError::Validation {
            invariant: invariant.into(),
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, err: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } => EXIT_VALIDATION,
            CliError::DegenerateFit { .. } | CliError::Numerical(_) | CliError::Io { .. } => {
                EXIT_NUMERICAL
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Validation { .. } => "validation",
            CliError::DegenerateFit { .. } => "degenerate-fit",
            CliError::Numerical(_) => "numerical",
            CliError::Io { .. } => "io",
        }
    }

    pub fn record(&self) -> ErrorRecord {
        ErrorRecord {
            error: self.kind(),
            message: self.to_string(),
            exit_code: self.exit_code(),
        }
    }
}

/// JSON error record emitted when a command aborts.
#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub error: &'static str,
    pub message: String,
    pub exit_code: i32,
}
