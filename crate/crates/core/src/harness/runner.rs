//! Building and running batches of independent simulations.

use rayon::prelude::*;

use crate::agent::AgentRng;
use crate::error::{Result, SimError};
use crate::metrics::{summarize, RunRecord, StrategySummary};
use crate::sim::Simulation;
use crate::strategies::decentralized::DecentralizedController;
use crate::strategies::sons::{spawn_formation, SonsVariant};
use crate::strategies::Strategy;

use super::config::ExperimentConfig;
use super::placement::{place_decentralized, PlacementSpec};

/// A ready-to-run simulation of `strategy` seeded with `seed`.
pub fn build_simulation(
    cfg: &ExperimentConfig,
    strategy: Strategy,
    seed: u64,
) -> Result<Simulation> {
    let arena = cfg.arena;
    let sim_cfg = crate::config::SimConfig {
        seed,
        ..cfg.sim.clone()
    };
    match strategy {
        Strategy::SonsBs | Strategy::SonsRw => {
            let variant = if strategy == Strategy::SonsBs {
                SonsVariant::Bs
            } else {
                SonsVariant::Rw
            };
            let (agents, controller) = spawn_formation(
                &arena,
                &sim_cfg,
                variant,
                cfg.supervisors,
                cfg.samplers(),
                seed,
            )?;
            Simulation::new(arena, sim_cfg, agents, Box::new(controller), None)
        }
        _ => {
            let controller = DecentralizedController::new(strategy)?;
            let spec = PlacementSpec::for_arena(&arena, sim_cfg.sampling_altitude);
            let agents =
                place_decentralized(&spec, cfg.n_uavs, seed, &mut AgentRng::for_run(seed))?;
            let field = controller.pheromone_field(&arena);
            Simulation::new(arena, sim_cfg, agents, Box::new(controller), field)
        }
    }
}

/// Run `index` of `strategy`. Budget exhaustion yields an incomplete record, not an error.
pub fn run_single(cfg: &ExperimentConfig, strategy: Strategy, index: usize) -> Result<RunRecord> {
    build_simulation(cfg, strategy, cfg.run_seed(index))?.run()
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    /// Grouped by strategy in config order, then by run index.
    pub records: Vec<RunRecord>,
    pub summaries: Vec<StrategySummary>,
}

impl ExperimentResult {
    pub fn records_for(&self, strategy: Strategy) -> impl Iterator<Item = &RunRecord> {
        self.records.iter().filter(move |r| r.strategy == strategy)
    }

    pub fn incomplete(&self) -> usize {
        self.summaries.iter().map(|s| s.incomplete).sum()
    }
}

/// Every run of every configured strategy, on at most `jobs` threads (all cores if `None`).
/// Results do not depend on `jobs`.
pub fn run_experiment(cfg: &ExperimentConfig, jobs: Option<usize>) -> Result<ExperimentResult> {
    cfg.validate()?;
    let tasks: Vec<(Strategy, usize)> = cfg
        .strategies
        .iter()
        .flat_map(|&s| (0..cfg.runs).map(move |i| (s, i)))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| SimError::InvalidConfig(format!("cannot start worker pool: {e}")))?;
    let records: Vec<RunRecord> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(s, i)| run_single(cfg, s, i))
            .collect::<Result<Vec<_>>>()
    })?;
    let summaries = cfg
        .strategies
        .iter()
        .map(|&s| {
            let rs: Vec<RunRecord> = records
                .iter()
                .filter(|r| r.strategy == s)
                .cloned()
                .collect();
            summarize(s, &rs, &cfg.arena)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentResult { records, summaries })
}
