use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hqdisk::Error),
    #[error(
        "unknown lift `{0}` (expected identity, example3, smoothstep, phi_n:<n>, phi_cantor or mobius:<re>[,<im>])"
    )]
    UnknownLift(String),
    #[error("{command} cannot be written as {format}")]
    Unsupported { command: &'static str, format: &'static str },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
