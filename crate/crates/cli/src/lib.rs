//! Drivers behind the `bifurcate` binary: configuration parsing, the
//! exact verification report and the file-writing subcommands.

pub mod commands;
pub mod config;
pub mod initial;
pub mod verify;

use std::path::{Path, PathBuf};

use bifurcate_core::dynamics::DynamicsError;
use bifurcate_core::pde::PdeError;
use bifurcate_core::reduction::ReductionError;
use bifurcate_core::spectral::SpectralError;

/// Version reported in run summaries: `git describe` when available.
pub const VERSION: &str = env!("BIFURCATE_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Pde(#[from] PdeError),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// 2 for bad input or I/O, 1 for failures of the computation itself.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 2,
            _ => 1,
        }
    }
}
