use thiserror::Error;

use dcc_core::classify::ClassifyError;
use dcc_core::gadgets::GadgetError;
use dcc_core::io::IoError;
use dcc_core::outerplanar::OuterplanarError;
use dcc_core::{CoverError, SolverError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown claim `{0}`; run `dcc list` for the registered claims")]
    UnknownClaim(String),
    #[error("unknown fuzz target `{0}`; run `dcc list` for the registered targets")]
    UnknownTarget(String),
    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
    #[error("bad argument: {0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] IoError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Outerplanar(#[from] OuterplanarError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("thread pool: {0}")]
    Threads(String),
}

impl CliError {
    pub fn file(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::File {
            path: path.display().to_string(),
            source,
        }
    }
}
