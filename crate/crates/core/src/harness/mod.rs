//! Batch experiments: configuration, initial placement, parallel runs and result files.

pub mod config;
pub mod export;
pub mod placement;
pub mod runner;

pub use config::{parse_strategies, ExperimentConfig, FileConfig};
pub use export::export;
pub use placement::{place_decentralized, PlacementSpec};
pub use runner::{build_simulation, run_experiment, run_single, ExperimentResult};
