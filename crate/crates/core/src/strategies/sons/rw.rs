//! Random walk of the whole formation with boundary crossing and re-orientation.

use rand::Rng;
use std::f64::consts::PI;

use crate::arena::{ArenaSpec, EdgeReading};
use crate::geometry::{angular_distance, AngleSet, Rotation, Vec2};
use crate::trace::{Trace, TraceEvent};

use super::formation::SonsFormation;

/// How far the brain overshoots the boundary before choosing a new heading, metres.
pub const CROSSING_DEPTH: f64 = 0.95;
/// Half-width of the excluded cone around the reversed entry heading, degrees.
pub const RECIPROCAL_EXCLUSION: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RwPhase {
    Cruise,
    /// Outside the arena, still moving straight.
    ExitBoundary,
    /// Sampling-safe rotation until the formation axis is parallel to the crossed edge.
    Align {
        target: f64,
    },
    /// Sampling paused, fast rotation to the chosen heading.
    Prepare,
}

impl RwPhase {
    pub fn label(self) -> &'static str {
        match self {
            RwPhase::Cruise => "cruise",
            RwPhase::ExitBoundary => "exit_boundary",
            RwPhase::Align { .. } => "align",
            RwPhase::Prepare => "prepare",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BrainStateRW {
    pub phase: RwPhase,
    pub theta_rand: Option<f64>,
    pub d_rand: Option<Rotation>,
    pub d_adjust: Option<Rotation>,
}

impl Default for BrainStateRW {
    fn default() -> Self {
        Self {
            phase: RwPhase::Cruise,
            theta_rand: None,
            d_rand: None,
            d_adjust: None,
        }
    }
}

/// Brain pose after one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrainMove {
    pub position: Vec2,
    pub heading: f64,
    pub phase: RwPhase,
}

/// New heading after a crossing: interior of every edge the brain is beyond, minus the
/// cone around the reversed heading. Returns the heading and whether the cone had to be
/// dropped because nothing else was left.
pub fn choose_theta_rand<R: Rng + ?Sized>(
    heading: f64,
    normals: &[Vec2],
    rng: &mut R,
) -> (f64, bool) {
    let interior = normals.iter().fold(AngleSet::full(), |acc, n| {
        acc.intersect(&AngleSet::half_plane(*n))
    });
    let allowed = interior.without_cone(heading + PI, RECIPROCAL_EXCLUSION.to_radians());
    if let Some(t) = allowed.sample(rng) {
        return (t, false);
    }
    let t = interior
        .sample(rng)
        .unwrap_or_else(|| normals.iter().fold(Vec2::ZERO, |acc, n| acc + *n).angle());
    (t, true)
}

/// Rotation direction toward the nearer heading that puts the formation axis parallel to
/// the edge with inward normal `normal`. `None` when already aligned.
pub fn adjust_direction(heading: f64, normal: Vec2) -> (f64, Option<Rotation>) {
    let candidates = [(-normal).angle(), normal.angle()];
    let nearer =
        if angular_distance(heading, candidates[0]) <= angular_distance(heading, candidates[1]) {
            candidates[0]
        } else {
            candidates[1]
        };
    (nearer, Rotation::shortest(heading, nearer))
}

#[allow(clippy::too_many_arguments)]
pub fn sons_rw_step<R: Rng + ?Sized>(
    state: &mut BrainStateRW,
    position: Vec2,
    heading: f64,
    arena: &ArenaSpec,
    formation: &SonsFormation,
    v: f64,
    turn_rate: f64,
    dt: f64,
    rng: &mut R,
    step: u64,
    trace: &mut Trace,
) -> BrainMove {
    let forward = |phase| BrainMove {
        position: position + Vec2::from_angle(heading) * (v * dt),
        heading,
        phase,
    };
    loop {
        match state.phase {
            RwPhase::Cruise | RwPhase::ExitBoundary => {
                let readings = arena.edge_readings(position);
                let outside: Vec<EdgeReading> = readings
                    .iter()
                    .copied()
                    .filter(|r| r.signed_distance < 0.0)
                    .collect();
                if outside.is_empty() {
                    state.phase = RwPhase::Cruise;
                    return forward(RwPhase::Cruise);
                }
                let dir = Vec2::from_angle(heading);
                let crossed = outside.iter().any(|r| {
                    r.outside_depth() > CROSSING_DEPTH && dir.dot(r.inward_normal()) <= 0.0
                });
                if !crossed {
                    state.phase = RwPhase::ExitBoundary;
                    return forward(RwPhase::ExitBoundary);
                }
                let normals: Vec<Vec2> = outside.iter().map(EdgeReading::inward_normal).collect();
                let (theta, exclusion_dropped) = choose_theta_rand(heading, &normals, rng);
                let d_rand =
                    Rotation::shortest(heading, theta).unwrap_or(Rotation::CounterClockwise);
                let deepest = outside
                    .iter()
                    .max_by(|a, b| a.outside_depth().total_cmp(&b.outside_depth()))
                    .expect("non-empty");
                let (align_target, d_adjust) = adjust_direction(heading, deepest.inward_normal());
                let aligned_first = d_adjust == Some(d_rand);
                trace.push(TraceEvent::ThetaRand {
                    step,
                    entry_heading: heading,
                    theta,
                    normals,
                    exclusion_dropped,
                    aligned_first,
                });
                state.theta_rand = Some(theta);
                state.d_rand = Some(d_rand);
                state.d_adjust = d_adjust;
                state.phase = if aligned_first {
                    RwPhase::Align {
                        target: align_target,
                    }
                } else {
                    RwPhase::Prepare
                };
            }
            RwPhase::Align { target } => {
                let rotation = state.d_rand.expect("set on crossing");
                let omega = formation.max_omega(v);
                let remaining = rotation.sweep(heading, target);
                let phase = state.phase;
                if remaining <= omega * dt {
                    state.phase = RwPhase::Prepare;
                    return BrainMove {
                        position,
                        heading: target,
                        phase,
                    };
                }
                return BrainMove {
                    position,
                    heading: heading + rotation.sign() * omega * dt,
                    phase,
                };
            }
            RwPhase::Prepare => {
                let rotation = state.d_rand.expect("set on crossing");
                let theta = state.theta_rand.expect("set on crossing");
                let remaining = rotation.sweep(heading, theta);
                if remaining <= turn_rate * dt {
                    state.phase = RwPhase::Cruise;
                    return BrainMove {
                        position,
                        heading: theta,
                        phase: RwPhase::Prepare,
                    };
                }
                return BrainMove {
                    position,
                    heading: heading + rotation.sign() * turn_rate * dt,
                    phase: RwPhase::Prepare,
                };
            }
        }
    }
}
