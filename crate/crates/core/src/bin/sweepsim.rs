//! Batch runner for the coverage strategies.
//!
//! Exit status: 0 when every run reached full coverage, 2 when some ran out of steps,
//! 1 on any error.

use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

use sweep_core::harness::{self, parse_strategies, ExperimentConfig, FileConfig};

#[derive(Debug, Parser)]
#[command(
    name = "sweepsim",
    version,
    about = "Seeded multi-UAV sweep coverage experiments"
)]
struct Cli {
    /// Comma-separated strategies (rb, ldr_random, ldr_repulsive, pm, sons_bs, sons_rw) or all.
    #[arg(long)]
    strategy: Option<String>,
    /// Run all six strategies.
    #[arg(long, conflicts_with = "strategy")]
    all: bool,
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed; run i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
    /// Arena side length, metres.
    #[arg(long)]
    arena_side: Option<f64>,
    #[arg(long)]
    uavs: Option<usize>,
    /// Seconds per step.
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    max_steps: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-run visit-count heatmaps.
    #[arg(long)]
    heatmaps: bool,
    /// Flat TOML config; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

fn resolve(cli: &Cli) -> sweep_core::Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(&FileConfig::load(path)?)?;
    }
    if cli.all {
        cfg.strategies = sweep_core::Strategy::ALL.to_vec();
    } else if let Some(s) = &cli.strategy {
        cfg.strategies = parse_strategies(s)?;
    }
    if let Some(v) = cli.runs {
        cfg.runs = v;
    }
    if let Some(v) = cli.seed {
        cfg.base_seed = v;
    }
    if let Some(v) = cli.arena_side {
        cfg.arena.side_length = v;
    }
    if let Some(v) = cli.uavs {
        cfg.n_uavs = v;
    }
    if let Some(v) = cli.dt {
        cfg.sim.dt = v;
    }
    if let Some(v) = cli.max_steps {
        cfg.sim.max_steps = v;
    }
    if let Some(v) = &cli.out {
        cfg.output_dir = v.clone();
    }
    cfg.heatmaps |= cli.heatmaps;
    cfg.validate()?;
    Ok(cfg)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.3}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = resolve(&cli).and_then(|cfg| {
        let result = harness::run_experiment(&cfg, cli.jobs)?;
        harness::export(&cfg, &result, &cfg.output_dir)?;
        Ok((cfg, result))
    });
    let (cfg, result) = match outcome {
        Ok(v) => v,
        Err(e) => {
            eprintln!("sweepsim: {e}");
            return ExitCode::from(1);
        }
    };
    println!(
        "{:<14} {:>5} {:>10} {:>9} {:>8} {:>8} {:>8} {:>8} {:>7}",
        "strategy", "done", "cct", "sd", "tcu", "sd", "lcu", "sd", "ratio"
    );
    for s in &result.summaries {
        println!(
            "{:<14} {:>2}/{:<2} {:>10} {:>9} {:>8} {:>8} {:>8} {:>8} {:>7}",
            s.strategy.name(),
            s.complete,
            s.runs,
            fmt_opt(s.cct.map(|m| m.mean)),
            fmt_opt(s.cct.and_then(|m| m.sd)),
            fmt_opt(s.tcu.map(|m| m.mean)),
            fmt_opt(s.tcu.and_then(|m| m.sd)),
            fmt_opt(s.lcu.map(|m| m.mean)),
            fmt_opt(s.lcu.and_then(|m| m.sd)),
            fmt_opt(s.tcu_lcu_ratio),
        );
    }
    println!("results written to {}", cfg.output_dir.display());
    if result.incomplete() > 0 {
        eprintln!(
            "sweepsim: {} run(s) exhausted the step budget",
            result.incomplete()
        );
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
