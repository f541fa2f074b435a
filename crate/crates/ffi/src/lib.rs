//! C ABI over `sweep-core`.
//!
//! Simulations live behind an opaque `SweepSim` handle created with [`sweep_sim_new`] and
//! released with [`sweep_sim_free`]. Every fallible call returns a [`SweepStatus`]; on
//! failure [`sweep_last_error`] holds a message for the calling thread. Panics never cross
//! the boundary: they are caught and reported as `SWEEP_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use sweep_core::harness::{build_simulation, export, run_experiment, ExperimentConfig};
use sweep_core::metrics::{lcu, tcu, uniformity};
use sweep_core::sim::{Simulation, StepOutcome};
use sweep_core::{SimError, Strategy};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidConfig = 3,
    PlacementInfeasible = 4,
    SweepGeometry = 5,
    /// The run has not reached full coverage, so the requested metric is undefined.
    Incomplete = 6,
    Io = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepStrategy {
    Rb = 0,
    LdrRandom = 1,
    LdrRepulsive = 2,
    Pm = 3,
    SonsBs = 4,
    SonsRw = 5,
}

/// Result of one [`sweep_sim_step`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepStepState {
    Running = 0,
    Complete = 1,
    BudgetExhausted = 2,
}

/// Plain-data run configuration. Start from [`sweep_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    /// One of `SweepStrategy`.
    pub strategy: u32,
    pub n_uavs: u32,
    /// Supervisory nodes in SoNS formations, brain included.
    pub supervisors: u32,
    pub arena_side: f64,
    pub cell_size: f64,
    pub region_size: f64,
    pub dt: f64,
    pub max_steps: u64,
    pub seed: u64,
}

/// Opaque simulation handle.
pub struct SweepSim {
    sim: Simulation,
    arena: sweep_core::ArenaSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &SimError) -> SweepStatus {
    match err {
        SimError::InvalidConfig(_) | SimError::ConfigParse { .. } => SweepStatus::InvalidConfig,
        SimError::PlacementInfeasible { .. } => SweepStatus::PlacementInfeasible,
        SimError::SweepGeometry { .. } => SweepStatus::SweepGeometry,
        SimError::EmptyVisits => SweepStatus::InvalidArgument,
        SimError::Incomplete => SweepStatus::Incomplete,
        SimError::Io { .. } => SweepStatus::Io,
    }
}

/// Run `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (SweepStatus, String)>) -> SweepStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SweepStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SweepStatus::Panic
        }
    }
}

fn core_err(e: SimError) -> (SweepStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (SweepStatus, String) {
    (SweepStatus::NullPointer, format!("{what} is null"))
}

fn strategy_of(code: u32) -> Result<Strategy, (SweepStatus, String)> {
    Ok(match code {
        0 => Strategy::Rb,
        1 => Strategy::LdrRandom,
        2 => Strategy::LdrRepulsive,
        3 => Strategy::Pm,
        4 => Strategy::SonsBs,
        5 => Strategy::SonsRw,
        other => {
            return Err((
                SweepStatus::InvalidArgument,
                format!("unknown strategy code {other}"),
            ))
        }
    })
}

fn experiment_of(cfg: &SweepConfig) -> Result<ExperimentConfig, (SweepStatus, String)> {
    let mut e = ExperimentConfig {
        strategies: vec![strategy_of(cfg.strategy)?],
        base_seed: cfg.seed,
        n_uavs: cfg.n_uavs as usize,
        supervisors: cfg.supervisors as usize,
        ..ExperimentConfig::default()
    };
    e.arena.side_length = cfg.arena_side;
    e.arena.cell_size = cfg.cell_size;
    e.arena.region_size = cfg.region_size;
    e.sim.dt = cfg.dt;
    e.sim.max_steps = cfg.max_steps;
    Ok(e)
}

/// Defaults of the reference setup: RB, 25 UAVs, 40 m arena, 0.1 s steps.
#[no_mangle]
pub extern "C" fn sweep_config_default() -> SweepConfig {
    let e = ExperimentConfig::default();
    SweepConfig {
        strategy: SweepStrategy::Rb as u32,
        n_uavs: e.n_uavs as u32,
        supervisors: e.supervisors as u32,
        arena_side: e.arena.side_length,
        cell_size: e.arena.cell_size,
        region_size: e.arena.region_size,
        dt: e.sim.dt,
        max_steps: e.sim.max_steps,
        seed: e.base_seed,
    }
}

/// Message for the last failed call on this thread, or null. The pointer stays valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sweep_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Build a simulation seeded with `cfg.seed`. On success `*out` owns a new handle.
///
/// # Safety
/// `cfg` must point to a valid `SweepConfig`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sweep_sim_new(
    cfg: *const SweepConfig,
    out: *mut *mut SweepSim,
) -> SweepStatus {
    guard(|| {
        let cfg = cfg.as_ref().ok_or_else(|| null("cfg"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = ptr::null_mut();
        let e = experiment_of(cfg)?;
        e.validate().map_err(core_err)?;
        let sim = build_simulation(&e, e.strategies[0], e.base_seed).map_err(core_err)?;
        *out = Box::into_raw(Box::new(SweepSim {
            sim,
            arena: e.arena,
        }));
        Ok(())
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `sim` must come from [`sweep_sim_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sweep_sim_free(sim: *mut SweepSim) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Advance one step.
///
/// # Safety
/// `sim` must be a live handle; `state` may be null.
#[no_mangle]
pub unsafe extern "C" fn sweep_sim_step(
    sim: *mut SweepSim,
    state: *mut SweepStepState,
) -> SweepStatus {
    guard(|| {
        let h = sim.as_mut().ok_or_else(|| null("sim"))?;
        let s = match h.sim.step().map_err(core_err)? {
            StepOutcome::Running => SweepStepState::Running,
            StepOutcome::Complete { .. } => SweepStepState::Complete,
            StepOutcome::BudgetExhausted => SweepStepState::BudgetExhausted,
        };
        if let Some(out) = state.as_mut() {
            *out = s;
        }
        Ok(())
    })
}

/// Step until full coverage or the step budget. `*cct` is the completion step, or 0 when
/// the budget ran out.
///
/// # Safety
/// `sim` must be a live handle; `cct` may be null.
#[no_mangle]
pub unsafe extern "C" fn sweep_sim_run(sim: *mut SweepSim, cct: *mut u64) -> SweepStatus {
    guard(|| {
        let h = sim.as_mut().ok_or_else(|| null("sim"))?;
        let done = h.sim.run_to_end().map_err(core_err)?;
        if let Some(out) = cct.as_mut() {
            *out = match done {
                StepOutcome::Complete { cct } => cct,
                _ => 0,
            };
        }
        Ok(())
    })
}

/// Steps taken so far; 0 for a null handle.
///
/// # Safety
/// `sim` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sweep_sim_steps(sim: *const SweepSim) -> u64 {
    sim.as_ref().map_or(0, |h| h.sim.steps())
}

/// Fraction of cells visited so far.
///
/// # Safety
/// `sim` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sweep_sim_coverage(sim: *const SweepSim, out: *mut f64) -> SweepStatus {
    guard(|| {
        let h = sim.as_ref().ok_or_else(|| null("sim"))?;
        *out.as_mut().ok_or_else(|| null("out"))? = h.sim.grid().coverage_fraction();
        Ok(())
    })
}

/// Grid dimensions in cells.
///
/// # Safety
/// `sim` must be a live handle; `cols` and `rows` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sweep_sim_grid_dims(
    sim: *const SweepSim,
    cols: *mut usize,
    rows: *mut usize,
) -> SweepStatus {
    guard(|| {
        let h = sim.as_ref().ok_or_else(|| null("sim"))?;
        *cols.as_mut().ok_or_else(|| null("cols"))? = h.sim.grid().cols();
        *rows.as_mut().ok_or_else(|| null("rows"))? = h.sim.grid().rows();
        Ok(())
    })
}

/// Copy the row-major visit counts (south row first) into `buf`, which must hold exactly
/// `cols * rows` values.
///
/// # Safety
/// `sim` must be a live handle; `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn sweep_sim_visits(
    sim: *const SweepSim,
    buf: *mut u32,
    len: usize,
) -> SweepStatus {
    guard(|| {
        let h = sim.as_ref().ok_or_else(|| null("sim"))?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let visits = h.sim.grid().visits();
        if len != visits.len() {
            return Err((
                SweepStatus::InvalidArgument,
                format!("buffer holds {len} values, grid has {}", visits.len()),
            ));
        }
        std::slice::from_raw_parts_mut(buf, len).copy_from_slice(visits);
        Ok(())
    })
}

/// Total and local coverage uniformity of a completed run.
///
/// # Safety
/// `sim` must be a live handle; `tcu_out` and `lcu_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sweep_sim_uniformity(
    sim: *const SweepSim,
    tcu_out: *mut f64,
    lcu_out: *mut f64,
) -> SweepStatus {
    guard(|| {
        let h = sim.as_ref().ok_or_else(|| null("sim"))?;
        let t = tcu_out.as_mut().ok_or_else(|| null("tcu_out"))?;
        let l = lcu_out.as_mut().ok_or_else(|| null("lcu_out"))?;
        if h.sim.cct().is_none() {
            return Err((
                SweepStatus::Incomplete,
                "run has not reached full coverage".into(),
            ));
        }
        let record = sweep_core::RunRecord {
            strategy: h.sim.strategy(),
            seed: h.sim.config().seed,
            coverage_fraction: Vec::new(),
            final_visits: h.sim.grid().clone(),
            cct: h.sim.cct(),
        };
        *t = tcu(&record).map_err(core_err)?;
        *l = lcu(&record, &h.arena).map_err(core_err)?;
        Ok(())
    })
}

/// Uniformity of an arbitrary count vector.
///
/// # Safety
/// `visits` must be valid for `len` reads; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sweep_uniformity(
    visits: *const u32,
    len: usize,
    out: *mut f64,
) -> SweepStatus {
    guard(|| {
        if visits.is_null() {
            return Err(null("visits"));
        }
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = uniformity(std::slice::from_raw_parts(visits, len)).map_err(core_err)?;
        Ok(())
    })
}

/// Run `runs` seeds (`cfg.seed + i`) and write the result files into `out_dir`.
/// `*incomplete` receives the number of runs that exhausted the step budget.
///
/// # Safety
/// `cfg` must be valid, `out_dir` a NUL-terminated UTF-8 path, `incomplete` writable or null.
#[no_mangle]
pub unsafe extern "C" fn sweep_run_experiment(
    cfg: *const SweepConfig,
    runs: u32,
    out_dir: *const c_char,
    incomplete: *mut u32,
) -> SweepStatus {
    guard(|| {
        let cfg = cfg.as_ref().ok_or_else(|| null("cfg"))?;
        if out_dir.is_null() {
            return Err(null("out_dir"));
        }
        let dir = CStr::from_ptr(out_dir).to_str().map_err(|_| {
            (
                SweepStatus::InvalidArgument,
                "out_dir is not UTF-8".to_string(),
            )
        })?;
        let mut e = experiment_of(cfg)?;
        e.runs = runs as usize;
        e.output_dir = PathBuf::from(dir);
        let result = run_experiment(&e, None).map_err(core_err)?;
        export(&e, &result, &e.output_dir).map_err(core_err)?;
        if let Some(out) = incomplete.as_mut() {
            *out = result.incomplete() as u32;
        }
        Ok(())
    })
}
