use std::path::PathBuf;

use clarforce::{ClarError, ForcingError, GraphError, MatchingError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] GraphError),
    #[error("{0}")]
    Usage(String),
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("invariant violated [{check}]: {detail}")]
    Invariant { check: &'static str, detail: String },
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::NoPerfectMatching => 3,
            CliError::Invariant { .. } | CliError::Write { .. } => 4,
            CliError::Budget(_) => 5,
        }
    }

    pub fn invariant(check: &'static str, detail: impl Into<String>) -> Self {
        CliError::Invariant {
            check,
            detail: detail.into(),
        }
    }
}

impl From<MatchingError> for CliError {
    fn from(e: MatchingError) -> Self {
        match e {
            MatchingError::NoPerfectMatching => CliError::NoPerfectMatching,
            MatchingError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            other => CliError::invariant("matching", other.to_string()),
        }
    }
}

impl From<ClarError> for CliError {
    fn from(e: ClarError) -> Self {
        match e {
            ClarError::NoPerfectMatching => CliError::NoPerfectMatching,
            other => CliError::invariant("clar-cover", other.to_string()),
        }
    }
}

impl From<ForcingError> for CliError {
    fn from(e: ForcingError) -> Self {
        match e {
            ForcingError::NoPerfectMatching => CliError::NoPerfectMatching,
            ForcingError::BudgetExceeded(_) | ForcingError::DepthExceeded(_) => {
                CliError::Budget(e.to_string())
            }
            ForcingError::Clar(c) => c.into(),
            ForcingError::Matching(m) => m.into(),
            other => CliError::invariant("forcing-equals-clar", other.to_string()),
        }
    }
}
