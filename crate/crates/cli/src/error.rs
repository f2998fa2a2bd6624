use std::io;

use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] partcalc::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse { .. } => 1,
            CliError::Validation(_) | CliError::Core(_) | CliError::Usage(_) => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CliError::Io(_) => "IoError",
            CliError::Parse { .. } => "ParseError",
            CliError::Validation(_) => "ValidationError",
            CliError::Core(e) => e.kind(),
            CliError::Usage(_) => "UsageError",
        }
    }

    /// One-line JSON object for stderr.
    pub fn to_json(&self) -> String {
        let mut v = json!({ "error": self.name(), "message": self.to_string() });
        if let CliError::Parse { line, column, .. } = self {
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        v.to_string()
    }
}
