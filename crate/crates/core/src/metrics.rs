//! Completion time, coverage uniformity and coverage progress.
//!
//! Uniformity is the negated mean absolute deviation of visit counts from their median. It is
//! 0 only when every cell has the same count and grows more negative as visits pile up
//! unevenly.

use serde::{Deserialize, Serialize};

use crate::arena::ArenaSpec;
use crate::error::{Result, SimError};
use crate::grid::CoverageGrid;
use crate::strategies::Strategy;

/// Everything the metrics need from one finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub strategy: Strategy,
    pub seed: u64,
    /// Fraction of cells visited at the end of each step, step 1 first.
    pub coverage_fraction: Vec<f64>,
    /// Visit counts at completion, or at the step budget if the run never completed.
    pub final_visits: CoverageGrid,
    /// Step at which coverage became complete.
    pub cct: Option<u64>,
}

impl RunRecord {
    pub fn is_complete(&self) -> bool {
        self.cct.is_some()
    }
}

/// Median with the even-length convention of averaging the two middle values.
fn median_sorted(sorted: &[u32]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        f64::from(sorted[n / 2])
    } else {
        (f64::from(sorted[n / 2 - 1]) + f64::from(sorted[n / 2])) / 2.0
    }
}

/// ρ: minus the mean absolute deviation of `visits` from their median. Always ≤ 0.
pub fn uniformity(visits: &[u32]) -> Result<f64> {
    if visits.is_empty() {
        return Err(SimError::EmptyVisits);
    }
    let mut sorted = visits.to_vec();
    sorted.sort_unstable();
    let m = median_sorted(&sorted);
    let total: f64 = sorted.iter().map(|&v| (f64::from(v) - m).abs()).sum();
    // an all-equal grid reports +0, not -0
    Ok(if total == 0.0 {
        0.0
    } else {
        -total / sorted.len() as f64
    })
}

/// Total coverage uniformity: ρ over every cell at completion.
pub fn tcu(record: &RunRecord) -> Result<f64> {
    if !record.is_complete() {
        return Err(SimError::Incomplete);
    }
    uniformity(record.final_visits.visits())
}

/// ρ of each `region_size` block, row-major from the south-west block.
pub fn block_uniformity(grid: &CoverageGrid, arena: &ArenaSpec) -> Result<Vec<f64>> {
    let b = arena.cells_per_region();
    if b == 0 || !grid.cols().is_multiple_of(b) || !grid.rows().is_multiple_of(b) {
        return Err(SimError::InvalidConfig(format!(
            "a {}x{} grid does not split into {b}x{b} blocks",
            grid.cols(),
            grid.rows()
        )));
    }
    let visits = grid.visits();
    let mut out = Vec::with_capacity((grid.cols() / b) * (grid.rows() / b));
    let mut block = Vec::with_capacity(b * b);
    for br in 0..grid.rows() / b {
        for bc in 0..grid.cols() / b {
            block.clear();
            for r in br * b..(br + 1) * b {
                let row = &visits[r * grid.cols()..(r + 1) * grid.cols()];
                block.extend_from_slice(&row[bc * b..(bc + 1) * b]);
            }
            out.push(uniformity(&block)?);
        }
    }
    Ok(out)
}

/// Local coverage uniformity: the mean of the per-block ρ values.
pub fn lcu(record: &RunRecord, arena: &ArenaSpec) -> Result<f64> {
    if !record.is_complete() {
        return Err(SimError::Incomplete);
    }
    let blocks = block_uniformity(&record.final_visits, arena)?;
    Ok(blocks.iter().sum::<f64>() / blocks.len() as f64)
}

/// Mean coverage fraction per step across runs. Runs that finished earlier count as fully
/// covered afterwards; the series is as long as the longest run.
pub fn cpr(records: &[RunRecord]) -> Vec<f64> {
    let len = records
        .iter()
        .map(|r| r.coverage_fraction.len())
        .max()
        .unwrap_or(0);
    if records.is_empty() {
        return Vec::new();
    }
    let mut sums = vec![0.0; len];
    for r in records {
        let pad = if r.is_complete() {
            1.0
        } else {
            r.coverage_fraction.last().copied().unwrap_or(0.0)
        };
        for (i, s) in sums.iter_mut().enumerate() {
            *s += r.coverage_fraction.get(i).copied().unwrap_or(pad);
        }
    }
    let n = records.len() as f64;
    sums.into_iter().map(|s| s / n).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanSd {
    pub mean: f64,
    /// Sample standard deviation; `None` with fewer than two values.
    pub sd: Option<f64>,
}

impl MeanSd {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let sd = (values.len() >= 2).then(|| {
            let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
            (ss / (n - 1.0)).sqrt()
        });
        Some(Self { mean, sd })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategySummary {
    pub strategy: Strategy,
    pub runs: usize,
    pub complete: usize,
    pub incomplete: usize,
    pub cct: Option<MeanSd>,
    pub tcu: Option<MeanSd>,
    pub lcu: Option<MeanSd>,
    /// Mean TCU over mean LCU; `None` when mean LCU is 0.
    pub tcu_lcu_ratio: Option<f64>,
}

/// Per-strategy statistics over complete runs; incomplete runs are only counted.
pub fn summarize(
    strategy: Strategy,
    records: &[RunRecord],
    arena: &ArenaSpec,
) -> Result<StrategySummary> {
    let complete: Vec<&RunRecord> = records.iter().filter(|r| r.is_complete()).collect();
    let ccts: Vec<f64> = complete
        .iter()
        .filter_map(|r| r.cct)
        .map(|c| c as f64)
        .collect();
    let tcus = complete
        .iter()
        .map(|r| tcu(r))
        .collect::<Result<Vec<_>>>()?;
    let lcus = complete
        .iter()
        .map(|r| lcu(r, arena))
        .collect::<Result<Vec<_>>>()?;
    let tcu_s = MeanSd::of(&tcus);
    let lcu_s = MeanSd::of(&lcus);
    let tcu_lcu_ratio = match (tcu_s, lcu_s) {
        (Some(t), Some(l)) if l.mean != 0.0 => Some(t.mean / l.mean),
        _ => None,
    };
    Ok(StrategySummary {
        strategy,
        runs: records.len(),
        complete: complete.len(),
        incomplete: records.len() - complete.len(),
        cct: MeanSd::of(&ccts),
        tcu: tcu_s,
        lcu: lcu_s,
        tcu_lcu_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(counts: Vec<u32>, side: usize, cct: Option<u64>, series: Vec<f64>) -> RunRecord {
        RunRecord {
            strategy: Strategy::Rb,
            seed: 0,
            coverage_fraction: series,
            final_visits: CoverageGrid::from_counts(side, side, counts),
            cct,
        }
    }

    #[test]
    fn hand_computed() {
        assert_eq!(uniformity(&[1, 2, 3, 4]).unwrap(), -1.0);
        assert_eq!(uniformity(&[3, 3, 3]).unwrap(), 0.0);
        assert!(matches!(uniformity(&[]), Err(SimError::EmptyVisits)));
        let mut v = vec![1; 1600];
        v[17] = 2;
        assert!((uniformity(&v).unwrap() + 1.0 / 1600.0).abs() < 1e-15);
    }

    #[test]
    fn lcu_ignores_between_block_differences() {
        let arena = ArenaSpec::default();
        // south-west block all 2s, the rest all 1s
        let counts: Vec<u32> = (0..1600)
            .map(|i| if i % 40 < 10 && i / 40 < 10 { 2 } else { 1 })
            .collect();
        let r = record(counts, 40, Some(1), vec![1.0]);
        assert_eq!(lcu(&r, &arena).unwrap(), 0.0);
        assert!(tcu(&r).unwrap() < 0.0);
        let blocks = block_uniformity(&r.final_visits, &arena).unwrap();
        assert_eq!(blocks.len(), 16);
    }

    #[test]
    fn single_block_lcu_equals_tcu() {
        let arena = ArenaSpec::with_side(10.0);
        let counts: Vec<u32> = (0..100).map(|i| (i * 7 % 5) as u32).collect();
        let r = record(counts, 10, Some(1), vec![1.0]);
        assert_eq!(lcu(&r, &arena).unwrap(), tcu(&r).unwrap());
    }

    #[test]
    fn cpr_padding() {
        let a = record(
            vec![1],
            1,
            Some(10),
            (1..=10).map(|i| i as f64 / 10.0).collect(),
        );
        let b = record(
            vec![1],
            1,
            Some(20),
            (1..=20).map(|i| i as f64 / 20.0).collect(),
        );
        let c = cpr(&[a, b.clone()]);
        assert_eq!(c.len(), 20);
        for (i, v) in c.iter().enumerate().skip(10) {
            assert!((v - (1.0 + b.coverage_fraction[i]) / 2.0).abs() < 1e-15);
        }
        assert_eq!(*c.last().unwrap(), 1.0);
        assert_eq!(cpr(std::slice::from_ref(&b)), b.coverage_fraction);
    }

    #[test]
    fn summary_statistics() {
        let arena = ArenaSpec::with_side(10.0);
        let same = |cct| record(vec![1; 100], 10, Some(cct), vec![1.0]);
        let s = summarize(Strategy::SonsBs, &[same(5), same(5)], &arena).unwrap();
        assert_eq!(s.cct.unwrap().sd, Some(0.0));
        assert_eq!(s.tcu_lcu_ratio, None);
        let s = summarize(
            Strategy::Rb,
            &[same(2), same(4), record(vec![0; 100], 10, None, vec![0.0])],
            &arena,
        )
        .unwrap();
        assert_eq!(s.incomplete, 1);
        let c = s.cct.unwrap();
        assert_eq!(c.mean, 3.0);
        assert!((c.sd.unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }
}
