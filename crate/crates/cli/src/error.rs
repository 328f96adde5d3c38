use std::process::ExitCode;

use slet_core::{SletError, Stage};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{} at stage {stage}: {}", .error.kind(), .error.root())]
    Numerical { stage: String, error: SletError },
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
    #[error("{0} verification check(s) failed")]
    Verification(usize),
}

impl From<SletError> for CliError {
    fn from(err: SletError) -> Self {
        match err.root() {
            SletError::InvalidMass(_)
            | SletError::InvalidPotential(_)
            | SletError::InvalidQuantumNumber(_) => CliError::Usage(err.to_string()),
            _ => CliError::Numerical {
                stage: err
                    .stage()
                    .map_or_else(|| "input".to_string(), |s| s.to_string()),
                error: err,
            },
        }
    }
}

impl CliError {
    /// A numerical failure from a step that does not tag its own stage.
    pub fn at(stage: Stage, err: SletError) -> Self {
        match CliError::from(err) {
            CliError::Numerical { error, .. } if error.stage().is_none() => CliError::Numerical {
                stage: stage.to_string(),
                error,
            },
            other => other,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            _ => ExitCode::from(1),
        }
    }
}
