//! Neighbour sensing over a pre-step snapshot of the swarm.

use crate::agent::{AgentId, AgentState};
use crate::config::ALTITUDE_EPSILON;
use crate::geometry::Vec2;

/// Publicly observable state of one agent, frozen at the start of a step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub id: AgentId,
    pub position: Vec2,
    pub heading: f64,
    pub altitude: f64,
}

impl From<&AgentState> for Pose {
    fn from(a: &AgentState) -> Self {
        Self {
            id: a.id,
            position: a.position,
            heading: a.heading,
            altitude: a.altitude,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub id: AgentId,
    /// Position in the observer's body frame: +x ahead, +y to the left.
    pub relative: Vec2,
    pub distance: f64,
}

impl Neighbor {
    /// Bearing in `(-π, π]`, positive to the left.
    pub fn bearing(&self) -> f64 {
        self.relative.y.atan2(self.relative.x)
    }
}

/// Every other same-altitude agent within `range` of `observer`, in ascending id order.
pub fn neighbors_within(poses: &[Pose], observer: usize, range: f64) -> Vec<Neighbor> {
    let me = poses[observer];
    poses
        .iter()
        .enumerate()
        .filter(|&(j, p)| j != observer && (p.altitude - me.altitude).abs() <= ALTITUDE_EPSILON)
        .filter_map(|(_, p)| {
            let offset = p.position - me.position;
            let distance = offset.norm();
            (distance <= range).then(|| Neighbor {
                id: p.id,
                relative: offset.rotate(-me.heading),
                distance,
            })
        })
        .collect()
}
