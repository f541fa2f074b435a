//! Seeded, synchronous simulator for multi-UAV sweep coverage of a square arena.
//!
//! A [`sim::Simulation`] advances a swarm one fixed step at a time under a strategy
//! [`sim::Controller`]. Finished runs become [`metrics::RunRecord`]s, and the
//! [`harness`] batches them into experiments.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod agent;
pub mod arena;
pub mod config;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod harness;
pub mod metrics;
pub mod sensing;
pub mod sim;
pub mod strategies;
pub mod trace;

pub use arena::ArenaSpec;
pub use config::SimConfig;
pub use error::{Result, SimError};
pub use metrics::RunRecord;
pub use sim::Simulation;
pub use strategies::Strategy;
