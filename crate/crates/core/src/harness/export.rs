//! Result files: `summary.json`, `runs.csv`, `cpr.csv` and optional heatmaps.
//!
//! Floats carry 9 significant digits; CSV files are comma-separated with LF line endings.

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Result, SimError};
use crate::metrics::{block_uniformity, cpr, lcu, tcu, MeanSd, StrategySummary};
use crate::strategies::Strategy;

use super::config::ExperimentConfig;
use super::runner::ExperimentResult;

/// `x` rounded to 9 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

/// Shortest text that reads back as `round_sig(x)`.
pub fn fmt_sig(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_json),
        Value::Object(o) => o.values_mut().for_each(round_json),
        _ => {}
    }
}

#[derive(Debug, Serialize)]
struct SummaryRow {
    strategy: Strategy,
    runs: usize,
    complete: usize,
    incomplete: usize,
    mean_cct: Option<f64>,
    sd_cct: Option<f64>,
    mean_tcu: Option<f64>,
    sd_tcu: Option<f64>,
    mean_lcu: Option<f64>,
    sd_lcu: Option<f64>,
    tcu_lcu_ratio: Option<f64>,
}

impl From<&StrategySummary> for SummaryRow {
    fn from(s: &StrategySummary) -> Self {
        let split = |m: Option<MeanSd>| (m.map(|m| m.mean), m.and_then(|m| m.sd));
        let (mean_cct, sd_cct) = split(s.cct);
        let (mean_tcu, sd_tcu) = split(s.tcu);
        let (mean_lcu, sd_lcu) = split(s.lcu);
        Self {
            strategy: s.strategy,
            runs: s.runs,
            complete: s.complete,
            incomplete: s.incomplete,
            mean_cct,
            sd_cct,
            mean_tcu,
            sd_tcu,
            mean_lcu,
            sd_lcu,
            tcu_lcu_ratio: s.tcu_lcu_ratio,
        }
    }
}

#[derive(Serialize)]
struct SummaryFile<'a> {
    config: &'a ExperimentConfig,
    strategies: Vec<SummaryRow>,
}

pub fn summary_json(cfg: &ExperimentConfig, result: &ExperimentResult) -> String {
    let file = SummaryFile {
        config: cfg,
        strategies: result.summaries.iter().map(SummaryRow::from).collect(),
    };
    let mut v = serde_json::to_value(&file).expect("summary serialises");
    round_json(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("summary serialises");
    s.push('\n');
    s
}

pub fn runs_csv(cfg: &ExperimentConfig, result: &ExperimentResult) -> Result<String> {
    let blocks = {
        let per_side = cfg.arena.cells_per_side() / cfg.arena.cells_per_region().max(1);
        per_side * per_side
    };
    let mut out = String::from("strategy,run,seed,complete,cct,tcu,lcu");
    for b in 0..blocks {
        let _ = write!(out, ",block_{b}");
    }
    out.push('\n');
    for s in &cfg.strategies {
        for (i, r) in result.records_for(*s).enumerate() {
            let _ = write!(out, "{},{},{},{}", s.name(), i, r.seed, r.is_complete());
            if r.is_complete() {
                let cct = r.cct.expect("complete");
                let _ = write!(
                    out,
                    ",{cct},{},{}",
                    fmt_sig(tcu(r)?),
                    fmt_sig(lcu(r, &cfg.arena)?)
                );
            } else {
                out.push_str(",,,");
            }
            // per-block values are reported for incomplete runs too, at the budget snapshot
            for b in block_uniformity(&r.final_visits, &cfg.arena)? {
                let _ = write!(out, ",{}", fmt_sig(b));
            }
            out.push('\n');
        }
    }
    Ok(out)
}

/// Long format: one row per strategy and step.
pub fn cpr_csv(cfg: &ExperimentConfig, result: &ExperimentResult) -> String {
    let mut out = String::from("strategy,step,mean_coverage\n");
    for s in &cfg.strategies {
        let rs: Vec<_> = result.records_for(*s).cloned().collect();
        for (i, v) in cpr(&rs).iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", s.name(), i + 1, fmt_sig(*v));
        }
    }
    out
}

/// First line `cols,rows,cell_size` as values, then one line of counts per grid row, south first.
pub fn heatmap_csv(grid: &crate::grid::CoverageGrid, cell_size: f64) -> String {
    let mut out = format!("{},{},{}\n", grid.cols(), grid.rows(), fmt_sig(cell_size));
    for row in grid.visits().chunks(grid.cols()) {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn write(path: PathBuf, text: &str) -> Result<()> {
    fs::write(&path, text).map_err(|source| SimError::Io { path, source })
}

/// Write every artifact into `dir`, creating it if needed. Returns the paths written.
pub fn export(
    cfg: &ExperimentConfig,
    result: &ExperimentResult,
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| SimError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    let mut put = |name: String, text: &str| -> Result<()> {
        let p = dir.join(name);
        write(p.clone(), text)?;
        written.push(p);
        Ok(())
    };
    put("summary.json".into(), &summary_json(cfg, result))?;
    put("runs.csv".into(), &runs_csv(cfg, result)?)?;
    put("cpr.csv".into(), &cpr_csv(cfg, result))?;
    if cfg.heatmaps {
        for s in &cfg.strategies {
            for (i, r) in result.records_for(*s).enumerate() {
                put(
                    format!("heatmap_{}_{i}.csv", s.name()),
                    &heatmap_csv(&r.final_visits, cfg.arena.cell_size),
                )?;
            }
        }
    }
    Ok(written)
}
