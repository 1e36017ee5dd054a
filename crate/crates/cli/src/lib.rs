//! Command-line driver: time scans, phase-space grids, coefficient dumps and
//! verification suites for the coupler library.

pub mod config;
pub mod format;
pub mod run;
pub mod verify;

pub use config::{Format, RunConfig};
pub use format::MatrixFile;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Numeric(#[from] coupler_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use coupler_core::Error as E;
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Numeric(E::InvalidInput(_) | E::UnsupportedState(_) | E::UnsupportedClosedForm(_)) => 1,
            CliError::Numeric(_) => 3,
        }
    }
}
