//! Per-cell visit counts with the sampling-condition gate.

use crate::agent::AgentState;
use crate::arena::{ArenaSpec, CellIndex};
use crate::config::{SimConfig, ALTITUDE_EPSILON, SPEED_EPSILON};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageGrid {
    cols: usize,
    rows: usize,
    visits: Vec<u32>,
    visited_count: usize,
}

/// True when the agent's current state qualifies as sampling.
pub fn sampling_conditions_hold(agent: &AgentState, cfg: &SimConfig) -> bool {
    agent.sampling_active
        && (agent.altitude - cfg.sampling_altitude).abs() <= ALTITUDE_EPSILON
        && agent.speed <= cfg.target_sampling_velocity + SPEED_EPSILON
}

impl CoverageGrid {
    pub fn new(arena: &ArenaSpec) -> Self {
        let n = arena.cells_per_side();
        Self {
            cols: n,
            rows: n,
            visits: vec![0; n * n],
            visited_count: 0,
        }
    }

    /// Rebuild from raw row-major counts.
    pub fn from_counts(cols: usize, rows: usize, visits: Vec<u32>) -> Self {
        assert_eq!(visits.len(), cols * rows);
        let visited_count = visits.iter().filter(|&&v| v > 0).count();
        Self {
            cols,
            rows,
            visits,
            visited_count,
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn visits(&self) -> &[u32] {
        &self.visits
    }

    pub fn get(&self, cell: CellIndex) -> u32 {
        self.visits[cell.row * self.cols + cell.col]
    }

    pub fn visited_count(&self) -> usize {
        self.visited_count
    }

    pub fn len(&self) -> usize {
        self.visits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.visits.is_empty()
    }

    pub fn coverage_fraction(&self) -> f64 {
        self.visited_count as f64 / self.visits.len() as f64
    }

    pub fn is_complete(&self) -> bool {
        self.visited_count == self.visits.len()
    }

    /// Credit `cell` to `agent` if the sampling conditions hold. Returns whether it counted.
    ///
    /// Entry detection (crediting only when the agent changes cell) is the caller's job.
    pub fn record_visit(&mut self, cell: CellIndex, agent: &AgentState, cfg: &SimConfig) -> bool {
        if !sampling_conditions_hold(agent, cfg) {
            return false;
        }
        debug_assert!((agent.altitude - cfg.sampling_altitude).abs() <= ALTITUDE_EPSILON);
        debug_assert!(agent.speed <= cfg.target_sampling_velocity + SPEED_EPSILON);
        let slot = &mut self.visits[cell.row * self.cols + cell.col];
        if *slot == 0 {
            self.visited_count += 1;
        }
        *slot += 1;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agent::{AgentId, AgentMode};
    use crate::geometry::Vec2;
    use crate::strategies::decentralized::DecentralizedMode;

    fn sampler(altitude: f64, speed: f64) -> AgentState {
        let mut a = AgentState::new(
            AgentId(0),
            Vec2::ZERO,
            0.0,
            altitude,
            AgentMode::Decentralized(DecentralizedMode::default()),
            0,
        );
        a.speed = speed;
        a
    }

    #[test]
    fn sampling_gate() {
        let cfg = SimConfig::default();
        let mut g = CoverageGrid::new(&ArenaSpec::default());
        let c = CellIndex { col: 3, row: 4 };
        assert!(g.record_visit(c, &sampler(1.5, 1.0), &cfg));
        assert!(!g.record_visit(c, &sampler(4.0, 1.0), &cfg));
        assert!(!g.record_visit(c, &sampler(1.5, 1.2), &cfg));
        let mut off = sampler(1.5, 0.5);
        off.sampling_active = false;
        assert!(!g.record_visit(c, &off, &cfg));
        assert_eq!(g.get(c), 1);
        assert_eq!(g.visited_count(), 1);
    }

    #[test]
    fn shared_cell_counts_each_agent() {
        let cfg = SimConfig::default();
        let mut g = CoverageGrid::new(&ArenaSpec::default());
        let c = CellIndex { col: 0, row: 0 };
        g.record_visit(c, &sampler(1.5, 1.0), &cfg);
        g.record_visit(c, &sampler(1.5, 1.0), &cfg);
        assert_eq!(g.get(c), 2);
        assert_eq!(g.visited_count(), 1);
    }
}
