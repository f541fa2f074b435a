//! Hierarchical line-formation strategies: a brain steers, every other member holds its
//! rigid offset.

pub mod bs;
pub mod formation;
pub mod rw;

pub use bs::{BrainStateBS, BsPhase};
pub use formation::{Role, SonsFormation};
pub use rw::{BrainStateRW, RwPhase};

use std::f64::consts::FRAC_PI_2;

use crate::agent::{AgentId, AgentMode, AgentRng, AgentState};
use crate::arena::ArenaSpec;
use crate::config::SimConfig;
use crate::error::{Result, SimError};
use crate::geometry::{AngleSet, Vec2};
use crate::sim::{Controller, Motion, StepContext};
use crate::strategies::Strategy;
use crate::trace::Trace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SonsVariant {
    Bs,
    Rw,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BrainState {
    Bs(BrainStateBS),
    Rw(BrainStateRW),
}

#[derive(Debug, Clone)]
pub struct SonsController {
    variant: SonsVariant,
    formation: SonsFormation,
    brain: BrainState,
    order: Vec<AgentId>,
}

impl SonsController {
    pub fn formation(&self) -> &SonsFormation {
        &self.formation
    }

    pub fn brain_state(&self) -> &BrainState {
        &self.brain
    }
}

/// Place the formation at its start pose. Ids follow [`SonsFormation::line`].
///
/// BS starts along the southern edge at its eastern end, RW above the south-east corner
/// facing a random interior heading.
pub fn spawn_formation(
    arena: &ArenaSpec,
    cfg: &SimConfig,
    variant: SonsVariant,
    supervisory: usize,
    samplers: usize,
    seed: u64,
) -> Result<(Vec<AgentState>, SonsController)> {
    let spacing = arena.cell_size;
    let formation = SonsFormation::line(supervisory, samplers, spacing)?;
    if formation.span() > arena.side_length {
        return Err(SimError::InvalidConfig(format!(
            "formation span {} exceeds arena side {}",
            formation.span(),
            arena.side_length
        )));
    }
    let half = arena.half_side();
    let mut brain_rng = AgentRng::for_agent(seed, formation.brain());
    let (position, heading, brain) = match variant {
        SonsVariant::Bs => {
            let p =
                arena.center + Vec2::new(half - formation.footprint() / 2.0, -half + spacing / 2.0);
            let state = BrainStateBS::new(
                Vec2::new(0.0, 1.0),
                Vec2::new(-1.0, 0.0),
                formation.footprint(),
            );
            (p, FRAC_PI_2, BrainState::Bs(state))
        }
        SonsVariant::Rw => {
            let p = arena.center + Vec2::new(half, -half);
            let interior = AngleSet::half_plane(Vec2::new(-1.0, 0.0))
                .intersect(&AngleSet::half_plane(Vec2::new(0.0, 1.0)));
            let h = interior
                .sample(&mut brain_rng)
                .expect("corner interior is non-empty");
            (p, h, BrainState::Rw(BrainStateRW::default()))
        }
    };
    let targets = formation.follow(position, heading);
    let agents = (0..formation.len())
        .map(|i| {
            let id = AgentId(i as u32);
            let role = formation.role(id);
            let altitude = match role {
                Role::Sampler => cfg.sampling_altitude,
                Role::Brain | Role::Supervisor => cfg.supervisory_altitude,
            };
            let mut a = AgentState::new(
                id,
                targets[i],
                heading,
                altitude,
                AgentMode::Sons(role),
                seed,
            );
            if id == formation.brain() {
                // keep the stream position after the start-heading draw
                a.rng = brain_rng.clone();
            }
            a
        })
        .collect();
    let order = formation.downstream_order();
    Ok((
        agents,
        SonsController {
            variant,
            formation,
            brain,
            order,
        },
    ))
}

impl Controller for SonsController {
    fn strategy(&self) -> Strategy {
        match self.variant {
            SonsVariant::Bs => Strategy::SonsBs,
            SonsVariant::Rw => Strategy::SonsRw,
        }
    }

    fn plan(
        &mut self,
        ctx: &StepContext<'_>,
        agents: &mut [AgentState],
        trace: &mut Trace,
    ) -> Result<Vec<Motion>> {
        let cfg = ctx.cfg;
        let b = self.formation.brain().0 as usize;
        let (position, heading) = (agents[b].position, agents[b].heading);
        let (new_position, new_heading, label, sampling) = match &mut self.brain {
            BrainState::Bs(state) => {
                let (delta, phase) = bs::sons_bs_step(
                    state,
                    position,
                    ctx.arena,
                    &self.formation,
                    cfg.stride(),
                    ctx.step,
                )?;
                (position + delta, heading, phase.label(), true)
            }
            BrainState::Rw(state) => {
                let m = rw::sons_rw_step(
                    state,
                    position,
                    heading,
                    ctx.arena,
                    &self.formation,
                    cfg.target_sampling_velocity,
                    cfg.turn_rate_default,
                    cfg.dt,
                    &mut agents[b].rng,
                    ctx.step,
                    trace,
                );
                (
                    m.position,
                    m.heading,
                    m.phase.label(),
                    m.phase != RwPhase::Prepare,
                )
            }
        };
        trace.set_phase(label);

        // brain command relayed down the tree; followers are servo-perfect
        let targets = self.formation.follow(new_position, new_heading);
        let mut motions = vec![Motion::Hold; agents.len()];
        for &id in &self.order {
            let i = id.0 as usize;
            motions[i] = Motion::Pose {
                position: targets[i],
                heading: new_heading,
            };
            agents[i].sampling_active = sampling;
        }
        Ok(motions)
    }
}
