//! Synchronous stepping of the whole swarm.
//!
//! One step runs, for every agent in ascending id order: sense and message exchange against
//! the pre-step snapshot, command computation (both owned by the [`Controller`]), kinematic
//! integration, visit recording, pheromone deposit and evaporation, and finally the clock.

use crate::agent::{step_kinematics, AgentState, UnicycleCommand};
use crate::arena::{ArenaSpec, CellIndex};
use crate::config::SimConfig;
use crate::error::Result;
use crate::geometry::{wrap_angle, Vec2};
use crate::grid::CoverageGrid;
use crate::metrics::RunRecord;
use crate::sensing::Pose;
use crate::strategies::decentralized::PheromoneField;
use crate::strategies::Strategy;
use crate::trace::{Trace, TraceEvent};

/// What an agent does during one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Motion {
    Hold,
    Unicycle(UnicycleCommand),
    /// Servo-perfect move to a pose; speed is the realised displacement over `dt`.
    Pose {
        position: Vec2,
        heading: f64,
    },
}

/// Read-only view handed to controllers: the state before this step began.
pub struct StepContext<'a> {
    pub arena: &'a ArenaSpec,
    pub cfg: &'a SimConfig,
    /// 1-based index of the step being computed.
    pub step: u64,
    pub poses: &'a [Pose],
    pub pheromone: Option<&'a PheromoneField>,
}

pub trait Controller: Send {
    fn strategy(&self) -> Strategy;

    /// Sense, exchange messages and return one motion per agent (indexed like `agents`).
    fn plan(
        &mut self,
        ctx: &StepContext<'_>,
        agents: &mut [AgentState],
        trace: &mut Trace,
    ) -> Result<Vec<Motion>>;

    /// Whether credited visits deposit pheromone.
    fn deposits_pheromone(&self) -> bool {
        false
    }

    /// Whether agents are hard-clamped to the arena after integration.
    fn confined_to_arena(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Running,
    /// Full coverage reached at this step.
    Complete {
        cct: u64,
    },
    /// `max_steps` reached without full coverage.
    BudgetExhausted,
}

pub struct Simulation {
    arena: ArenaSpec,
    cfg: SimConfig,
    grid: CoverageGrid,
    agents: Vec<AgentState>,
    last_cells: Vec<Option<CellIndex>>,
    pheromone: Option<PheromoneField>,
    controller: Box<dyn Controller>,
    step: u64,
    coverage: Vec<f64>,
    cct: Option<u64>,
    trace: Trace,
}

impl std::fmt::Debug for Simulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Simulation")
            .field("strategy", &self.controller.strategy())
            .field("step", &self.step)
            .field("agents", &self.agents.len())
            .field("visited", &self.grid.visited_count())
            .finish()
    }
}

impl Simulation {
    pub fn new(
        arena: ArenaSpec,
        cfg: SimConfig,
        agents: Vec<AgentState>,
        controller: Box<dyn Controller>,
        pheromone: Option<PheromoneField>,
    ) -> Result<Self> {
        arena.validate()?;
        cfg.validate()?;
        let last_cells = agents.iter().map(|a| arena.cell_of(a.position)).collect();
        Ok(Self {
            grid: CoverageGrid::new(&arena),
            arena,
            cfg,
            agents,
            last_cells,
            pheromone,
            controller,
            step: 0,
            coverage: Vec::new(),
            cct: None,
            trace: Trace::disabled(),
        })
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = Trace::enabled();
        self
    }

    pub fn arena(&self) -> &ArenaSpec {
        &self.arena
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn grid(&self) -> &CoverageGrid {
        &self.grid
    }

    pub fn agents(&self) -> &[AgentState] {
        &self.agents
    }

    pub fn pheromone(&self) -> Option<&PheromoneField> {
        self.pheromone.as_ref()
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn strategy(&self) -> Strategy {
        self.controller.strategy()
    }

    /// Steps completed so far.
    pub fn steps(&self) -> u64 {
        self.step
    }

    pub fn cct(&self) -> Option<u64> {
        self.cct
    }

    pub fn coverage_series(&self) -> &[f64] {
        &self.coverage
    }

    pub fn step(&mut self) -> Result<StepOutcome> {
        if let Some(cct) = self.cct {
            return Ok(StepOutcome::Complete { cct });
        }
        if self.step >= self.cfg.max_steps {
            return Ok(StepOutcome::BudgetExhausted);
        }
        let step = self.step + 1;
        let first_step = self.step == 0;

        // (1)-(3) sense, exchange, decide
        let poses: Vec<Pose> = self.agents.iter().map(Pose::from).collect();
        let ctx = StepContext {
            arena: &self.arena,
            cfg: &self.cfg,
            step,
            poses: &poses,
            pheromone: self.pheromone.as_ref(),
        };
        self.trace.begin_step(step);
        let motions = self
            .controller
            .plan(&ctx, &mut self.agents, &mut self.trace)?;
        assert_eq!(motions.len(), self.agents.len(), "one motion per agent");

        // (4) integrate
        let dt = self.cfg.dt;
        let confine = self.controller.confined_to_arena();
        for (agent, motion) in self.agents.iter_mut().zip(&motions) {
            match *motion {
                Motion::Hold => agent.speed = 0.0,
                Motion::Unicycle(cmd) => step_kinematics(agent, cmd, dt),
                Motion::Pose { position, heading } => {
                    agent.speed = position.distance(agent.position) / dt;
                    agent.position = position;
                    agent.heading = wrap_angle(heading);
                }
            }
            if confine && !self.arena.contains(agent.position) {
                let lo = self.arena.min_corner();
                let hi = self.arena.max_corner();
                let from = agent.position;
                agent.position = Vec2::new(from.x.clamp(lo.x, hi.x), from.y.clamp(lo.y, hi.y));
                self.trace.push(TraceEvent::Clamped {
                    step,
                    agent: agent.id,
                    from,
                    to: agent.position,
                });
            }
        }

        // (5) visits on cell entry
        let mut credited = Vec::new();
        for (i, agent) in self.agents.iter().enumerate() {
            let cell = self.arena.cell_of(agent.position);
            let entered = first_step || cell != self.last_cells[i];
            self.last_cells[i] = cell;
            if let (true, Some(c)) = (entered, cell) {
                if self.grid.record_visit(c, agent, &self.cfg) {
                    credited.push(c);
                }
            }
        }
        self.trace.record_credits(credited.len() as u32);

        // (6) pheromone
        if let Some(field) = self.pheromone.as_mut() {
            if self.controller.deposits_pheromone() {
                for &c in &credited {
                    field.deposit(c);
                }
            }
            field.evaporate();
        }

        // (7) clock
        self.step = step;
        self.coverage.push(self.grid.coverage_fraction());
        if self.grid.is_complete() {
            self.cct = Some(step);
            return Ok(StepOutcome::Complete { cct: step });
        }
        if self.step >= self.cfg.max_steps {
            return Ok(StepOutcome::BudgetExhausted);
        }
        Ok(StepOutcome::Running)
    }

    /// Step until full coverage or the step budget runs out.
    pub fn run_to_end(&mut self) -> Result<StepOutcome> {
        loop {
            match self.step()? {
                StepOutcome::Running => continue,
                done => return Ok(done),
            }
        }
    }

    pub fn into_record(self) -> RunRecord {
        RunRecord {
            strategy: self.controller.strategy(),
            seed: self.cfg.seed,
            coverage_fraction: self.coverage,
            final_visits: self.grid,
            cct: self.cct,
        }
    }

    pub fn run(mut self) -> Result<RunRecord> {
        self.run_to_end()?;
        Ok(self.into_record())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agent::{AgentId, AgentMode};
    use crate::strategies::decentralized::DecentralizedMode;

    /// Replays a fixed motion per agent each step.
    struct Scripted(Vec<Motion>);

    impl Controller for Scripted {
        fn strategy(&self) -> Strategy {
            Strategy::Rb
        }
        fn plan(
            &mut self,
            _: &StepContext<'_>,
            _: &mut [AgentState],
            _: &mut Trace,
        ) -> Result<Vec<Motion>> {
            Ok(self.0.clone())
        }
    }

    fn agent(id: u32, x: f64, y: f64) -> AgentState {
        AgentState::new(
            AgentId(id),
            Vec2::new(x, y),
            0.0,
            1.5,
            AgentMode::Decentralized(DecentralizedMode::default()),
            0,
        )
    }

    #[test]
    fn empty_swarm_only_advances_clock() {
        let mut sim = Simulation::new(
            ArenaSpec::default(),
            SimConfig::default(),
            Vec::new(),
            Box::new(Scripted(Vec::new())),
            None,
        )
        .unwrap();
        assert_eq!(sim.step().unwrap(), StepOutcome::Running);
        assert_eq!(sim.steps(), 1);
        assert_eq!(sim.grid().visited_count(), 0);
    }

    #[test]
    fn entering_a_cell_credits_once() {
        let fwd = Motion::Unicycle(UnicycleCommand::forward(1.0));
        let mut sim = Simulation::new(
            ArenaSpec::default(),
            SimConfig::default(),
            vec![agent(0, 0.55, 0.5)],
            Box::new(Scripted(vec![fwd])),
            None,
        )
        .unwrap();
        sim.step().unwrap(); // first step credits the start cell
        assert_eq!(sim.grid().visited_count(), 1);
        for _ in 0..3 {
            sim.step().unwrap();
        }
        assert_eq!(sim.grid().visited_count(), 1);
        sim.step().unwrap(); // crosses x = 1.0
        assert_eq!(sim.grid().visited_count(), 2);
    }

    #[test]
    fn two_agents_same_new_cell() {
        let fwd = Motion::Unicycle(UnicycleCommand::forward(1.0));
        let mut sim = Simulation::new(
            ArenaSpec::default(),
            SimConfig::default(),
            vec![agent(0, 0.85, 0.2), agent(1, 0.85, 0.7)],
            Box::new(Scripted(vec![fwd, fwd])),
            None,
        )
        .unwrap();
        sim.step().unwrap(); // both still in (20, 20)
        assert_eq!(sim.grid().get(CellIndex { col: 20, row: 20 }), 2);
        let before = sim.grid().visited_count();
        assert_eq!(before, 1);
        sim.step().unwrap(); // both cross into (21, 20)
        assert_eq!(sim.grid().get(CellIndex { col: 21, row: 20 }), 2);
        assert_eq!(sim.grid().visited_count(), before + 1);
    }

    #[test]
    fn budget_exhaustion() {
        let cfg = SimConfig {
            max_steps: 3,
            ..SimConfig::default()
        };
        let mut sim = Simulation::new(
            ArenaSpec::default(),
            cfg,
            vec![agent(0, 0.0, 0.0)],
            Box::new(Scripted(vec![Motion::Hold])),
            None,
        )
        .unwrap();
        assert_eq!(sim.run_to_end().unwrap(), StepOutcome::BudgetExhausted);
        assert_eq!(sim.steps(), 3);
        let rec = sim.into_record();
        assert_eq!(rec.cct, None);
        assert_eq!(rec.coverage_fraction.len(), 3);
    }
}
