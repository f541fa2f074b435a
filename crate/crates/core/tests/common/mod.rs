//! Shared audits for the integration and acceptance targets.
#![allow(dead_code)]

use std::collections::HashMap;

use sweep_core::agent::AgentId;
use sweep_core::geometry::{angular_distance, Vec2};
use sweep_core::harness::{build_simulation, ExperimentConfig};
use sweep_core::sim::StepOutcome;
use sweep_core::trace::{ReactionKind, TraceEvent};
use sweep_core::Strategy;

/// Uniformity by exact integer arithmetic: order statistics by counting, deviations doubled
/// so the even-length median stays integral.
pub fn brute_uniformity(v: &[u32]) -> f64 {
    let n = v.len();
    let kth = |k: usize| -> u64 {
        *v.iter()
            .find(|&&x| {
                let below = v.iter().filter(|&&y| y < x).count();
                let upto = v.iter().filter(|&&y| y <= x).count();
                below <= k && k < upto
            })
            .unwrap() as u64
    };
    let twice_median = if n % 2 == 1 {
        2 * kth(n / 2)
    } else {
        kth(n / 2 - 1) + kth(n / 2)
    };
    let total: u64 = v
        .iter()
        .map(|&x| (2 * x as u64).abs_diff(twice_median))
        .sum();
    -(total as f64) / (2 * n) as f64
}

#[derive(Debug, Default)]
pub struct DecentralizedAudit {
    pub steps: u64,
    pub cct: Option<u64>,
    pub outside_positions: usize,
    pub clamps: usize,
    pub boundary_reactions: usize,
    /// Boundary reactions whose target does not point into every triggering half-plane.
    pub non_interior_targets: usize,
    pub density_reactions: usize,
    /// Density reactions that fired while a suppression window was still open.
    pub suppressed_density_reactions: usize,
    pub min_pheromone: f64,
}

/// Full run of a decentralized strategy with every per-step check recorded.
pub fn audit_decentralized(
    cfg: &ExperimentConfig,
    strategy: Strategy,
    seed: u64,
) -> DecentralizedAudit {
    let mut sim = build_simulation(cfg, strategy, seed).unwrap().with_trace();
    let mut a = DecentralizedAudit {
        min_pheromone: f64::INFINITY,
        ..DecentralizedAudit::default()
    };
    loop {
        let out = sim.step().unwrap();
        a.outside_positions += sim
            .agents()
            .iter()
            .filter(|x| !sim.arena().contains(x.position))
            .count();
        if let Some(f) = sim.pheromone() {
            a.min_pheromone = f.levels().iter().copied().fold(a.min_pheromone, f64::min);
        }
        if out != StepOutcome::Running {
            a.cct = sim.cct();
            break;
        }
    }
    a.steps = sim.steps();

    // step at which each agent's density-suppression window was last armed, and its length
    let mut armed: HashMap<AgentId, (u64, u32)> = HashMap::new();
    let ldr = matches!(strategy, Strategy::LdrRandom | Strategy::LdrRepulsive);
    for e in sim.trace().events() {
        match e {
            TraceEvent::Clamped { .. } => a.clamps += 1,
            TraceEvent::BoundaryReaction {
                target, normals, ..
            } => {
                a.boundary_reactions += 1;
                let d = Vec2::from_angle(*target);
                if normals.iter().any(|n| d.dot(*n) <= 0.0) {
                    a.non_interior_targets += 1;
                }
            }
            TraceEvent::DensityReaction { step, agent, .. } => {
                a.density_reactions += 1;
                if let Some(&(s, n)) = armed.get(agent) {
                    // armed at the end of step s, active again from step s + n + 1
                    if *step <= s + u64::from(n) {
                        a.suppressed_density_reactions += 1;
                    }
                }
            }
            TraceEvent::ReactionCompleted {
                step,
                agent,
                kind,
                suppression,
            } if ldr => {
                if matches!(
                    kind,
                    ReactionKind::Density | ReactionKind::Boundary | ReactionKind::Avoidance
                ) {
                    armed.insert(*agent, (*step, *suppression));
                }
            }
            _ => {}
        }
    }
    a
}

#[derive(Debug, Default)]
pub struct RwAudit {
    pub cct: Option<u64>,
    pub steps: u64,
    /// Largest deviation of any pairwise member distance from its formation value, metres.
    pub max_rigidity_error: f64,
    pub phase_steps: HashMap<&'static str, u64>,
    pub prepare_credits: u64,
    pub max_align_sampler_speed: f64,
    pub max_sampling_speed: f64,
    pub theta_rand_count: usize,
    pub theta_not_interior: usize,
    /// Smallest angle between θ_rand and the reversed entry heading, degrees.
    pub min_reciprocal_gap: f64,
    pub exclusion_dropped: usize,
}

pub fn audit_sons(cfg: &ExperimentConfig, strategy: Strategy, seed: u64) -> RwAudit {
    let mut sim = build_simulation(cfg, strategy, seed).unwrap().with_trace();
    let initial: Vec<Vec2> = sim.agents().iter().map(|x| x.position).collect();
    let n = initial.len();
    let reference: Vec<f64> = (0..n * n)
        .map(|k| initial[k / n].distance(initial[k % n]))
        .collect();
    let samplers: Vec<usize> = (0..n)
        .filter(|&i| (sim.agents()[i].altitude - cfg.sim.sampling_altitude).abs() < 1e-9)
        .collect();
    let mut a = RwAudit {
        min_reciprocal_gap: 180.0,
        ..RwAudit::default()
    };
    loop {
        let out = sim.step().unwrap();
        let agents = sim.agents();
        for i in 0..n {
            for j in i + 1..n {
                let e =
                    (agents[i].position.distance(agents[j].position) - reference[i * n + j]).abs();
                a.max_rigidity_error = a.max_rigidity_error.max(e);
            }
        }
        let st = *sim.trace().steps().last().unwrap();
        let phase = st.phase.unwrap_or("-");
        *a.phase_steps.entry(phase).or_default() += 1;
        let vmax = samplers
            .iter()
            .map(|&i| agents[i].speed)
            .fold(0.0, f64::max);
        if phase == "prepare" {
            a.prepare_credits += u64::from(st.credited);
        } else {
            a.max_sampling_speed = a.max_sampling_speed.max(vmax);
        }
        if phase == "align" {
            a.max_align_sampler_speed = a.max_align_sampler_speed.max(vmax);
        }
        if out != StepOutcome::Running {
            break;
        }
    }
    a.cct = sim.cct();
    a.steps = sim.steps();
    for e in sim.trace().events() {
        if let TraceEvent::ThetaRand {
            entry_heading,
            theta,
            normals,
            exclusion_dropped,
            ..
        } = e
        {
            a.theta_rand_count += 1;
            let d = Vec2::from_angle(*theta);
            if normals.iter().any(|nrm| d.dot(*nrm) <= 0.0) {
                a.theta_not_interior += 1;
            }
            let gap = angular_distance(*theta, entry_heading + std::f64::consts::PI).to_degrees();
            a.min_reciprocal_gap = a.min_reciprocal_gap.min(gap);
            a.exclusion_dropped += usize::from(*exclusion_dropped);
        }
    }
    a
}
