//! Fully decentralized benchmark controllers: RB and its LDR and PM extensions.
//!
//! Every agent runs random billiards as its core behaviour. Boundary reflection preempts
//! obstacle avoidance, which preempts the density or pheromone response. All turns happen
//! in place at the configured turn rate.

pub mod ldr;
pub mod pm;
pub mod rb;

use serde::{Deserialize, Serialize};

pub use ldr::{LdrParams, LdrReaction};
pub use pm::{PheromoneField, PheromoneReadings, PmChoice, PmParams};
pub use rb::RbParams;

use crate::agent::{AgentMode, AgentState, UnicycleCommand};
use crate::arena::{ArenaSpec, EdgeReading};
use crate::error::{Result, SimError};
use crate::geometry::{Rotation, Vec2};
use crate::sensing::{neighbors_within, Neighbor};
use crate::sim::{Controller, Motion, StepContext};
use crate::strategies::Strategy;
use crate::trace::{ReactionKind, Trace, TraceEvent};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Phase {
    #[default]
    Cruise,
    Turning {
        target: f64,
        rotation: Rotation,
        cause: ReactionKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DecentralizedMode {
    pub phase: Phase,
    /// Steps left with the density response disabled.
    pub density_suppression: u32,
    /// Steps left with the pheromone response disabled.
    pub pheromone_suppression: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Extension {
    None,
    Ldr(LdrParams),
    Pm(PmParams),
}

#[derive(Debug, Clone)]
pub struct DecentralizedController {
    strategy: Strategy,
    rb: RbParams,
    extension: Extension,
}

impl DecentralizedController {
    pub fn new(strategy: Strategy) -> Result<Self> {
        let extension = match strategy {
            Strategy::Rb => Extension::None,
            Strategy::LdrRandom => Extension::Ldr(LdrParams::random()),
            Strategy::LdrRepulsive => Extension::Ldr(LdrParams::repulsive()),
            Strategy::Pm => Extension::Pm(PmParams::default()),
            s => {
                return Err(SimError::InvalidConfig(format!(
                    "{s} is not a decentralized strategy"
                )))
            }
        };
        Ok(Self {
            strategy,
            rb: RbParams::default(),
            extension,
        })
    }

    pub fn with_params(strategy: Strategy, rb: RbParams, extension: Extension) -> Result<Self> {
        rb.validate().map_err(SimError::InvalidConfig)?;
        Ok(Self {
            strategy,
            rb,
            extension,
        })
    }

    pub fn rb_params(&self) -> &RbParams {
        &self.rb
    }

    pub fn extension(&self) -> &Extension {
        &self.extension
    }

    /// Pheromone field matching this controller, if it uses one.
    pub fn pheromone_field(&self, arena: &ArenaSpec) -> Option<PheromoneField> {
        match &self.extension {
            Extension::Pm(p) => Some(PheromoneField::new(
                arena,
                p.deposit_amount,
                p.evaporation_rate,
            )),
            _ => None,
        }
    }

    fn sensing_range(&self) -> f64 {
        match &self.extension {
            Extension::Ldr(p) => p.comm_range.max(self.rb.medium_range),
            _ => self.rb.medium_range,
        }
    }

    /// Suppression armed when a reaction of `kind` completes.
    fn suppression_after(&self, kind: ReactionKind) -> (Option<u32>, Option<u32>) {
        match (&self.extension, kind) {
            (Extension::Ldr(p), ReactionKind::Density) => (Some(p.post_reaction_suppression), None),
            (Extension::Ldr(p), ReactionKind::Boundary | ReactionKind::Avoidance) => {
                (Some(p.post_avoidance_suppression), None)
            }
            (Extension::Pm(p), ReactionKind::Pheromone) => {
                (None, Some(p.post_pheromone_suppression))
            }
            (Extension::Pm(p), ReactionKind::Boundary | ReactionKind::Avoidance) => {
                (None, Some(p.post_avoidance_suppression))
            }
            _ => (None, None),
        }
    }
}

/// Largest forward speed that keeps the agent inside the arena, halting half-way into the
/// boundary trigger band so the reflection fires next step instead of overshooting.
fn approach_speed(readings: &[EdgeReading], dir: Vec2, v: f64, dt: f64, trigger: f64) -> f64 {
    let stop = trigger / 2.0;
    let mut travel = v * dt;
    for r in readings {
        let closing = -dir.dot(r.inward_normal());
        if closing > 0.0 {
            travel = travel.min(((r.signed_distance - stop) / closing).max(0.0));
        }
    }
    travel / dt
}

/// In-place rotation toward `target`; also reports whether it is reached this step.
fn turn_command(
    heading: f64,
    target: f64,
    rotation: Rotation,
    rate: f64,
    dt: f64,
) -> (UnicycleCommand, bool) {
    let remaining = rotation.sweep(heading, target);
    if remaining <= rate * dt {
        (
            UnicycleCommand::turn(rotation.sign() * remaining / dt),
            true,
        )
    } else {
        (UnicycleCommand::turn(rotation.sign() * rate), false)
    }
}

struct Decision {
    command: UnicycleCommand,
    completed: Option<ReactionKind>,
}

impl Controller for DecentralizedController {
    fn strategy(&self) -> Strategy {
        self.strategy
    }

    fn deposits_pheromone(&self) -> bool {
        matches!(self.extension, Extension::Pm(_))
    }

    fn confined_to_arena(&self) -> bool {
        true
    }

    fn plan(
        &mut self,
        ctx: &StepContext<'_>,
        agents: &mut [AgentState],
        trace: &mut Trace,
    ) -> Result<Vec<Motion>> {
        let n = agents.len();
        let range = self.sensing_range();

        // sense
        let sensed: Vec<Vec<Neighbor>> = (0..n)
            .map(|i| neighbors_within(ctx.poses, i, range))
            .collect();

        // exchange: ID broadcasts, then high-density notifications within the same round
        let mut notified = vec![false; n];
        let mut heard: Vec<Vec<Neighbor>> = vec![Vec::new(); n];
        if let Extension::Ldr(p) = &self.extension {
            for i in 0..n {
                heard[i] = sensed[i]
                    .iter()
                    .filter(|nb| nb.distance <= p.comm_range)
                    .copied()
                    .collect();
            }
            let mut notifier = vec![false; n];
            for i in 0..n {
                let active = mode(&agents[i]).density_suppression == 0;
                if active && ldr::detects_high_density(heard[i].len(), p) {
                    notifier[i] = true;
                    trace.push(TraceEvent::DensityNotification {
                        step: ctx.step,
                        agent: agents[i].id,
                        heard: heard[i].len(),
                    });
                }
            }
            let index_of = |id: crate::agent::AgentId| ctx.poses.iter().position(|p| p.id == id);
            for i in 0..n {
                notified[i] = heard[i]
                    .iter()
                    .any(|nb| index_of(nb.id).is_some_and(|j| notifier[j]));
            }
        }

        // decide
        let mut motions = Vec::with_capacity(n);
        for i in 0..n {
            let d = self.decide(
                ctx,
                &mut agents[i],
                &sensed[i],
                &heard[i],
                notified[i],
                trace,
            );
            let m = mode_mut(&mut agents[i]);
            m.density_suppression = m.density_suppression.saturating_sub(1);
            m.pheromone_suppression = m.pheromone_suppression.saturating_sub(1);
            if let Some(kind) = d.completed {
                let (density, pheromone) = self.suppression_after(kind);
                if let Some(s) = density {
                    m.density_suppression = s;
                }
                if let Some(s) = pheromone {
                    m.pheromone_suppression = s;
                }
                trace.push(TraceEvent::ReactionCompleted {
                    step: ctx.step,
                    agent: agents[i].id,
                    kind,
                    suppression: density.or(pheromone).unwrap_or(0),
                });
            }
            motions.push(Motion::Unicycle(d.command));
        }
        Ok(motions)
    }
}

fn mode(agent: &AgentState) -> DecentralizedMode {
    match agent.mode {
        AgentMode::Decentralized(m) => m,
        AgentMode::Sons(_) => DecentralizedMode::default(),
    }
}

fn mode_mut(agent: &mut AgentState) -> &mut DecentralizedMode {
    if !matches!(agent.mode, AgentMode::Decentralized(_)) {
        agent.mode = AgentMode::Decentralized(DecentralizedMode::default());
    }
    match &mut agent.mode {
        AgentMode::Decentralized(m) => m,
        AgentMode::Sons(_) => unreachable!(),
    }
}

impl DecentralizedController {
    fn decide(
        &self,
        ctx: &StepContext<'_>,
        agent: &mut AgentState,
        sensed: &[Neighbor],
        heard: &[Neighbor],
        notified: bool,
        trace: &mut Trace,
    ) -> Decision {
        let cfg = ctx.cfg;
        let rate = cfg.turn_rate_default;
        let dt = cfg.dt;
        let heading = agent.heading;
        let current = mode(agent);

        if let Phase::Turning {
            target,
            rotation,
            cause,
        } = current.phase
        {
            return self.continue_turn(agent, target, rotation, cause, rate, dt);
        }

        let readings = ctx.arena.edge_readings(agent.position);
        if let Some(normals) = rb::boundary_trigger(&readings, heading, &self.rb) {
            let target = rb::rb_boundary_react(heading, &normals, &self.rb, &mut agent.rng);
            trace.push(TraceEvent::BoundaryReaction {
                step: ctx.step,
                agent: agent.id,
                heading,
                target,
                normals,
            });
            let rotation =
                Rotation::shortest(heading, target).unwrap_or(Rotation::CounterClockwise);
            return self.start_turn(agent, target, rotation, ReactionKind::Boundary, rate, dt);
        }

        let obstacles: Vec<Neighbor> = sensed
            .iter()
            .filter(|n| n.distance <= self.rb.medium_range)
            .copied()
            .collect();
        if let Some(turn) = rb::rb_avoid(&obstacles, &self.rb, &mut agent.rng) {
            trace.push(TraceEvent::AvoidanceReaction {
                step: ctx.step,
                agent: agent.id,
                short_range: turn.short_range,
                rotation: turn.rotation,
                angle: turn.angle,
            });
            let target = turn.target(heading);
            return self.start_turn(
                agent,
                target,
                turn.rotation,
                ReactionKind::Avoidance,
                rate,
                dt,
            );
        }

        match &self.extension {
            Extension::Ldr(p) if notified && current.density_suppression == 0 => {
                let reaction = ldr::density_reaction(heading, heard, p, &mut agent.rng);
                let target = reaction.map_or(heading, |(t, _)| t);
                trace.push(TraceEvent::DensityReaction {
                    step: ctx.step,
                    agent: agent.id,
                    target,
                });
                return match reaction {
                    Some((t, rotation)) => {
                        self.start_turn(agent, t, rotation, ReactionKind::Density, rate, dt)
                    }
                    None => Decision {
                        command: UnicycleCommand::turn(0.0),
                        completed: Some(ReactionKind::Density),
                    },
                };
            }
            Extension::Pm(p) if current.pheromone_suppression == 0 => {
                if let Some(field) = ctx.pheromone {
                    let r = pm::pm_sense(field, agent.position, heading, ctx.arena);
                    let choice = pm::pm_choose(&r, false, &mut agent.rng);
                    if choice != PmChoice::NoReaction {
                        trace.push(TraceEvent::PheromoneReaction {
                            step: ctx.step,
                            agent: agent.id,
                            readings: r.as_array(),
                        });
                    }
                    let turn = p.turn_angle.to_radians();
                    match choice {
                        PmChoice::TurnLeft => {
                            let t = crate::geometry::wrap_angle(heading + turn);
                            return self.start_turn(
                                agent,
                                t,
                                Rotation::CounterClockwise,
                                ReactionKind::Pheromone,
                                rate,
                                dt,
                            );
                        }
                        PmChoice::TurnRight => {
                            let t = crate::geometry::wrap_angle(heading - turn);
                            return self.start_turn(
                                agent,
                                t,
                                Rotation::Clockwise,
                                ReactionKind::Pheromone,
                                rate,
                                dt,
                            );
                        }
                        PmChoice::Ahead => {
                            return Decision {
                                command: self.cruise(&readings, agent, cfg),
                                completed: Some(ReactionKind::Pheromone),
                            };
                        }
                        PmChoice::NoReaction => {}
                    }
                }
            }
            _ => {}
        }

        Decision {
            command: self.cruise(&readings, agent, cfg),
            completed: None,
        }
    }

    fn cruise(
        &self,
        readings: &[EdgeReading],
        agent: &AgentState,
        cfg: &crate::config::SimConfig,
    ) -> UnicycleCommand {
        UnicycleCommand::forward(approach_speed(
            readings,
            agent.direction(),
            cfg.target_sampling_velocity,
            cfg.dt,
            self.rb.boundary_trigger,
        ))
    }

    fn start_turn(
        &self,
        agent: &mut AgentState,
        target: f64,
        rotation: Rotation,
        cause: ReactionKind,
        rate: f64,
        dt: f64,
    ) -> Decision {
        mode_mut(agent).phase = Phase::Turning {
            target,
            rotation,
            cause,
        };
        self.continue_turn(agent, target, rotation, cause, rate, dt)
    }

    fn continue_turn(
        &self,
        agent: &mut AgentState,
        target: f64,
        rotation: Rotation,
        cause: ReactionKind,
        rate: f64,
        dt: f64,
    ) -> Decision {
        let (command, done) = turn_command(agent.heading, target, rotation, rate, dt);
        if done {
            mode_mut(agent).phase = Phase::Cruise;
        }
        Decision {
            command,
            completed: done.then_some(cause),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agent::AgentId;
    use crate::config::SimConfig;
    use crate::sim::Simulation;

    fn agent(id: u32, x: f64, y: f64, heading_deg: f64) -> AgentState {
        AgentState::new(
            AgentId(id),
            Vec2::new(x, y),
            heading_deg.to_radians(),
            1.5,
            AgentMode::Decentralized(DecentralizedMode::default()),
            5,
        )
    }

    #[test]
    fn approach_halts_inside_trigger_band() {
        let arena = ArenaSpec::default();
        let r = arena.edge_readings(Vec2::new(19.9, 0.0));
        let v = approach_speed(&r, Vec2::new(1.0, 0.0), 1.0, 0.1, 0.05);
        assert!((19.9 + v * 0.1 - 19.975).abs() < 1e-12);
        let free = approach_speed(
            &arena.edge_readings(Vec2::ZERO),
            Vec2::new(1.0, 0.0),
            1.0,
            0.1,
            0.05,
        );
        assert_eq!(free, 1.0);
    }

    #[test]
    fn single_agent_reflects_and_stays_inside() {
        let ctrl = DecentralizedController::new(Strategy::Rb).unwrap();
        let mut sim = Simulation::new(
            ArenaSpec::default(),
            SimConfig::default(),
            vec![agent(0, 19.0, 0.0, 0.0)],
            Box::new(ctrl),
            None,
        )
        .unwrap()
        .with_trace();
        for _ in 0..400 {
            sim.step().unwrap();
        }
        let events = sim.trace().events();
        assert!(events
            .iter()
            .any(|e| matches!(e, TraceEvent::BoundaryReaction { .. })));
        assert!(!events
            .iter()
            .any(|e| matches!(e, TraceEvent::Clamped { .. })));
        assert!(sim.arena().contains(sim.agents()[0].position));
    }

    #[test]
    fn density_reaction_then_suppression() {
        // six agents clustered well inside the arena, none within avoidance cones of each other
        let agents: Vec<_> = (0..6)
            .map(|i| agent(i, -10.0 + 3.0 * i as f64, 0.0, 90.0))
            .collect();
        let ctrl = DecentralizedController::new(Strategy::LdrRandom).unwrap();
        let mut sim = Simulation::new(
            ArenaSpec::default(),
            SimConfig::default(),
            agents,
            Box::new(ctrl),
            None,
        )
        .unwrap()
        .with_trace();
        sim.step().unwrap();
        let reactions = sim
            .trace()
            .events()
            .iter()
            .filter(|e| matches!(e, TraceEvent::DensityReaction { .. }))
            .count();
        assert_eq!(reactions, 6);
        for a in sim.agents() {
            match a.mode {
                AgentMode::Decentralized(m) => assert!(matches!(
                    m.phase,
                    Phase::Turning {
                        cause: ReactionKind::Density,
                        ..
                    }
                )),
                _ => unreachable!(),
            }
        }
    }
}
