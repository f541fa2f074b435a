use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("placement infeasible: {placed} of {requested} agents placed after {rejected} rejected candidates")]
    PlacementInfeasible {
        requested: usize,
        placed: usize,
        rejected: usize,
    },
    #[error("sweep geometry error at step {step}: shift would leave the arena before coverage completed")]
    SweepGeometry { step: u64 },
    #[error("empty input to uniformity")]
    EmptyVisits,
    #[error("run did not reach full coverage")]
    Incomplete,
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to parse config {path}: {message}")]
    ConfigParse { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, SimError>;
