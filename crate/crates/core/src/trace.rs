//! Optional behavioural event log used by audits.

use crate::agent::AgentId;
use crate::geometry::{Rotation, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReactionKind {
    Boundary,
    Avoidance,
    Density,
    Pheromone,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceEvent {
    BoundaryReaction {
        step: u64,
        agent: AgentId,
        heading: f64,
        target: f64,
        /// Inward normals of every edge within the trigger distance.
        normals: Vec<Vec2>,
    },
    AvoidanceReaction {
        step: u64,
        agent: AgentId,
        short_range: bool,
        rotation: Rotation,
        angle: f64,
    },
    DensityNotification {
        step: u64,
        agent: AgentId,
        heard: usize,
    },
    DensityReaction {
        step: u64,
        agent: AgentId,
        target: f64,
    },
    PheromoneReaction {
        step: u64,
        agent: AgentId,
        readings: [f64; 3],
    },
    /// A reaction finished and armed a suppression window of `suppression` steps.
    ReactionCompleted {
        step: u64,
        agent: AgentId,
        kind: ReactionKind,
        suppression: u32,
    },
    Clamped {
        step: u64,
        agent: AgentId,
        from: Vec2,
        to: Vec2,
    },
    ThetaRand {
        step: u64,
        entry_heading: f64,
        theta: f64,
        normals: Vec<Vec2>,
        exclusion_dropped: bool,
        aligned_first: bool,
    },
}

/// Per-step summary.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepTrace {
    pub step: u64,
    pub credited: u32,
    /// Controller phase label for the step, when the controller has one.
    pub phase: Option<&'static str>,
}

#[derive(Debug, Clone, Default)]
pub struct Trace {
    enabled: bool,
    events: Vec<TraceEvent>,
    steps: Vec<StepTrace>,
}

impl Trace {
    pub fn disabled() -> Self {
        Self::default()
    }

    pub fn enabled() -> Self {
        Self {
            enabled: true,
            ..Self::default()
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn push(&mut self, event: TraceEvent) {
        if self.enabled {
            self.events.push(event);
        }
    }

    pub fn begin_step(&mut self, step: u64) {
        if self.enabled {
            self.steps.push(StepTrace {
                step,
                ..StepTrace::default()
            });
        }
    }

    pub fn set_phase(&mut self, phase: &'static str) {
        if let Some(s) = self.steps.last_mut() {
            s.phase = Some(phase);
        }
    }

    pub fn record_credits(&mut self, credited: u32) {
        if let Some(s) = self.steps.last_mut() {
            s.credited = credited;
        }
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn steps(&self) -> &[StepTrace] {
        &self.steps
    }
}
