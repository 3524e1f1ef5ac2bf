use thiserror::Error;

/// Invalid or unreadable configuration; maps to exit status 2.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("scenario {scenario} requires group su2, configured {group}")]
    Incompatible { scenario: String, group: String },
    #[error("unknown integral `{0}`")]
    UnknownIntegral(String),
}

/// Malformed saved report.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {message}")]
pub struct ReportError {
    pub line: usize,
    pub message: String,
}
