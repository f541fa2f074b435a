//! Experiment configuration and its flat TOML file form.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::arena::ArenaSpec;
use crate::config::SimConfig;
use crate::error::{Result, SimError};
use crate::strategies::Strategy;

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Run in this order; every strategy gets the same `runs` seeds.
    pub strategies: Vec<Strategy>,
    pub runs: usize,
    pub base_seed: u64,
    pub arena: ArenaSpec,
    pub n_uavs: usize,
    /// Supervisory nodes in SoNS formations, brain included.
    pub supervisors: usize,
    pub sim: SimConfig,
    /// Not serialised, so artifacts do not depend on where they are written.
    #[serde(skip, default = "default_output_dir")]
    pub output_dir: PathBuf,
    pub heatmaps: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            strategies: vec![Strategy::Rb],
            runs: 30,
            base_seed: 0,
            arena: ArenaSpec::default(),
            n_uavs: 25,
            supervisors: 5,
            sim: SimConfig::default(),
            output_dir: default_output_dir(),
            heatmaps: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.strategies.is_empty() {
            return Err(SimError::InvalidConfig("no strategy selected".into()));
        }
        if self.runs < 1 {
            return Err(SimError::InvalidConfig("runs must be at least 1".into()));
        }
        if self.n_uavs < 1 {
            return Err(SimError::InvalidConfig(
                "at least one UAV is required".into(),
            ));
        }
        if self.strategies.iter().any(|s| s.is_sons()) {
            if self.supervisors < 1 {
                return Err(SimError::InvalidConfig(
                    "SoNS needs at least one supervisor (the brain)".into(),
                ));
            }
            if self.n_uavs <= self.supervisors {
                return Err(SimError::InvalidConfig(format!(
                    "{} UAVs leave no samplers after {} supervisors",
                    self.n_uavs, self.supervisors
                )));
            }
        }
        self.arena.validate()?;
        self.sim.validate()
    }

    /// Seed of run `index`.
    pub fn run_seed(&self, index: usize) -> u64 {
        self.base_seed.wrapping_add(index as u64)
    }

    pub fn samplers(&self) -> usize {
        self.n_uavs.saturating_sub(self.supervisors)
    }

    /// Overlay every key present in `file`.
    pub fn apply_file(&mut self, file: &FileConfig) -> Result<()> {
        if let Some(s) = &file.strategy {
            self.strategies = parse_strategies(s)?;
        }
        macro_rules! set {
            ($src:ident => $($dst:tt)+) => {
                if let Some(v) = file.$src.clone() {
                    self.$($dst)+ = v;
                }
            };
        }
        set!(runs => runs);
        set!(seed => base_seed);
        set!(uavs => n_uavs);
        set!(supervisors => supervisors);
        set!(out => output_dir);
        set!(heatmaps => heatmaps);
        set!(arena_side => arena.side_length);
        set!(cell_size => arena.cell_size);
        set!(region_size => arena.region_size);
        set!(dt => sim.dt);
        set!(max_steps => sim.max_steps);
        set!(velocity => sim.target_sampling_velocity);
        set!(sampling_altitude => sim.sampling_altitude);
        set!(supervisory_altitude => sim.supervisory_altitude);
        set!(comm_range => sim.comm_range_max);
        if let Some(deg) = file.turn_rate_deg {
            self.sim.turn_rate_default = deg.to_radians();
        }
        Ok(())
    }
}

/// `"all"` or a comma-separated list of strategy names; duplicates are dropped.
pub fn parse_strategies(s: &str) -> Result<Vec<Strategy>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Strategy::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        let x = part.parse::<Strategy>().map_err(SimError::InvalidConfig)?;
        if !out.contains(&x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Flat key-value file; every key optional, unknown keys rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub strategy: Option<String>,
    pub runs: Option<usize>,
    pub seed: Option<u64>,
    pub uavs: Option<usize>,
    pub supervisors: Option<usize>,
    pub out: Option<PathBuf>,
    pub heatmaps: Option<bool>,
    pub arena_side: Option<f64>,
    pub cell_size: Option<f64>,
    pub region_size: Option<f64>,
    pub dt: Option<f64>,
    pub max_steps: Option<u64>,
    pub velocity: Option<f64>,
    pub sampling_altitude: Option<f64>,
    pub supervisory_altitude: Option<f64>,
    pub comm_range: Option<f64>,
    pub turn_rate_deg: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| SimError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| SimError::ConfigParse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }
}
