//! Library surface of the CLI crate: table persistence and the check
//! runner, shared between the binary and integration tests.

pub mod ocmp;
pub mod verify;

use minrep::engine::EngineError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    CheckFailed(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Engine(#[from] EngineError),
    #[error("{0}")]
    Analysis(#[from] minrep::analysis::AnalysisError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Usage(_) => 2,
            _ => 3,
        }
    }
}
