//! Boustrophedon sweep of the brain: strip, exit, shift, reverse.

use crate::arena::ArenaSpec;
use crate::error::{Result, SimError};
use crate::geometry::Vec2;

use super::formation::SonsFormation;

/// How far the sampler line travels past the boundary before shifting, metres.
pub const EXIT_MARGIN: f64 = 0.5;

const DONE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsPhase {
    Sweep,
    ExitBoundary,
    Shift,
    /// One-step hover while the sweep direction reverses.
    Turn,
}

impl BsPhase {
    pub fn label(self) -> &'static str {
        match self {
            BsPhase::Sweep => "sweep",
            BsPhase::ExitBoundary => "exit_boundary",
            BsPhase::Shift => "shift",
            BsPhase::Turn => "turn",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BrainStateBS {
    pub phase: BsPhase,
    pub sweep_direction: Vec2,
    pub shift_direction: Vec2,
    pub shift_progress: f64,
    /// Lateral stride between strips: the sampler footprint.
    pub stride: f64,
}

impl BrainStateBS {
    pub fn new(sweep_direction: Vec2, shift_direction: Vec2, stride: f64) -> Self {
        Self {
            phase: BsPhase::Sweep,
            sweep_direction,
            shift_direction,
            shift_progress: 0.0,
            stride,
        }
    }
}

/// Depth of `p` beyond the edge the sweep is heading for.
fn depth_ahead(arena: &ArenaSpec, p: Vec2, dir: Vec2) -> f64 {
    arena
        .edge_readings(p)
        .iter()
        .filter(|r| r.inward_normal().dot(dir) < -0.5)
        .map(|r| -r.signed_distance)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Whether any sampler would overlap the arena laterally after the next shift.
fn shift_lands_inside(
    arena: &ArenaSpec,
    brain: Vec2,
    state: &BrainStateBS,
    formation: &SonsFormation,
) -> bool {
    let after = brain + state.shift_direction * state.stride;
    let axis = state.shift_direction;
    let lo = arena.min_corner();
    let hi = arena.max_corner();
    let (amin, amax) = {
        let a = axis.dot(lo);
        let b = axis.dot(hi);
        (a.min(b), a.max(b))
    };
    let half = formation.footprint() / 2.0;
    let c = axis.dot(after);
    c + half > amin && c - half < amax
}

/// Brain displacement for this step and the phase that produced it. The brain keeps its heading throughout; the formation
/// translates sideways and backwards without rotating.
pub fn sons_bs_step(
    state: &mut BrainStateBS,
    brain: Vec2,
    arena: &ArenaSpec,
    formation: &SonsFormation,
    stride_len: f64,
    step: u64,
) -> Result<(Vec2, BsPhase)> {
    loop {
        match state.phase {
            BsPhase::Sweep => {
                if depth_ahead(arena, brain, state.sweep_direction) > 0.0 {
                    state.phase = BsPhase::ExitBoundary;
                    continue;
                }
                return Ok((state.sweep_direction * stride_len, BsPhase::Sweep));
            }
            BsPhase::ExitBoundary => {
                let remaining = EXIT_MARGIN - depth_ahead(arena, brain, state.sweep_direction);
                if remaining <= DONE_TOL {
                    if !shift_lands_inside(arena, brain, state, formation) {
                        return Err(SimError::SweepGeometry { step });
                    }
                    state.phase = BsPhase::Shift;
                    state.shift_progress = 0.0;
                    continue;
                }
                return Ok((
                    state.sweep_direction * stride_len.min(remaining),
                    BsPhase::ExitBoundary,
                ));
            }
            BsPhase::Shift => {
                let remaining = state.stride - state.shift_progress;
                if remaining <= DONE_TOL {
                    state.phase = BsPhase::Turn;
                    continue;
                }
                let d = stride_len.min(remaining);
                state.shift_progress += d;
                return Ok((state.shift_direction * d, BsPhase::Shift));
            }
            BsPhase::Turn => {
                state.sweep_direction = -state.sweep_direction;
                state.phase = BsPhase::Sweep;
                return Ok((Vec2::ZERO, BsPhase::Turn));
            }
        }
    }
}
