//! Line formation with a caterpillar-tree roster.
//!
//! The brain sits at the midpoint of the sampler line, on the supervisory layer. Offsets are
//! expressed in the brain's body frame (+x along the heading), so the sampler line lies on
//! the body y-axis, perpendicular to the direction of travel.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use crate::agent::AgentId;
use crate::error::{Result, SimError};
use crate::geometry::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Brain,
    Supervisor,
    Sampler,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SonsFormation {
    brain: AgentId,
    supervisors: Vec<AgentId>,
    samplers: Vec<AgentId>,
    /// Indexed by agent id.
    offsets: Vec<Vec2>,
    roles: Vec<Role>,
    parent: Vec<Option<AgentId>>,
    sampler_spacing: f64,
}

impl SonsFormation {
    /// `supervisory` counts the brain. Agent ids: brain 0, supervisors next, samplers last.
    pub fn line(supervisory: usize, samplers: usize, spacing: f64) -> Result<Self> {
        if supervisory < 1 {
            return Err(SimError::InvalidConfig("a formation needs a brain".into()));
        }
        if samplers < 1 {
            return Err(SimError::InvalidConfig(
                "a formation needs at least one sampler".into(),
            ));
        }
        if !(spacing > 0.0) {
            return Err(SimError::InvalidConfig(
                "sampler spacing must be positive".into(),
            ));
        }
        let total = supervisory + samplers;
        let footprint = samplers as f64 * spacing;

        let mut offsets = vec![Vec2::ZERO; total];
        let mut roles = vec![Role::Sampler; total];
        roles[0] = Role::Brain;

        // supervisory nodes at the centres of equal chunks of the line; the chunk nearest the
        // middle belongs to the brain, which sits exactly at the midpoint
        let chunk = footprint / supervisory as f64;
        let mut centers: Vec<f64> = (0..supervisory)
            .map(|j| -footprint / 2.0 + (j as f64 + 0.5) * chunk)
            .collect();
        let mid = centers
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(j, _)| j)
            .unwrap_or(0);
        centers.remove(mid);
        let supervisors: Vec<AgentId> = (1..supervisory).map(|i| AgentId(i as u32)).collect();
        for (k, &c) in centers.iter().enumerate() {
            offsets[1 + k] = Vec2::new(0.0, c);
            roles[1 + k] = Role::Supervisor;
        }

        let samplers_ids: Vec<AgentId> = (supervisory..total).map(|i| AgentId(i as u32)).collect();
        for (k, id) in samplers_ids.iter().enumerate() {
            let y = ((samplers as f64 - 1.0) / 2.0 - k as f64) * spacing;
            offsets[id.0 as usize] = Vec2::new(0.0, y);
        }

        // spine: each supervisor reports to its neighbour toward the brain
        let mut parent = vec![None; total];
        let lateral = |id: AgentId| offsets[id.0 as usize].y;
        let mut left: Vec<AgentId> = supervisors
            .iter()
            .copied()
            .filter(|&s| lateral(s) > 0.0)
            .collect();
        let mut right: Vec<AgentId> = supervisors
            .iter()
            .copied()
            .filter(|&s| lateral(s) <= 0.0)
            .collect();
        left.sort_by(|a, b| lateral(*a).total_cmp(&lateral(*b)));
        right.sort_by(|a, b| lateral(*b).total_cmp(&lateral(*a)));
        for side in [&left, &right] {
            let mut up = AgentId(0);
            for &s in side.iter() {
                parent[s.0 as usize] = Some(up);
                up = s;
            }
        }
        // leaves: each sampler hangs off the nearest supervisory node
        let spine: Vec<AgentId> = std::iter::once(AgentId(0))
            .chain(supervisors.iter().copied())
            .collect();
        for &s in &samplers_ids {
            let y = lateral(s);
            let host = spine
                .iter()
                .copied()
                .min_by(|a, b| (lateral(*a) - y).abs().total_cmp(&(lateral(*b) - y).abs()))
                .expect("brain exists");
            parent[s.0 as usize] = Some(host);
        }

        Ok(Self {
            brain: AgentId(0),
            supervisors,
            samplers: samplers_ids,
            offsets,
            roles,
            parent,
            sampler_spacing: spacing,
        })
    }

    pub fn brain(&self) -> AgentId {
        self.brain
    }

    pub fn supervisors(&self) -> &[AgentId] {
        &self.supervisors
    }

    pub fn samplers(&self) -> &[AgentId] {
        &self.samplers
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn offset(&self, id: AgentId) -> Vec2 {
        self.offsets[id.0 as usize]
    }

    pub fn role(&self, id: AgentId) -> Role {
        self.roles[id.0 as usize]
    }

    pub fn parent(&self, id: AgentId) -> Option<AgentId> {
        self.parent[id.0 as usize]
    }

    pub fn children(&self, id: AgentId) -> Vec<AgentId> {
        (0..self.len())
            .filter(|&i| self.parent[i] == Some(id))
            .map(|i| AgentId(i as u32))
            .collect()
    }

    pub fn sampler_spacing(&self) -> f64 {
        self.sampler_spacing
    }

    /// Distance between the outermost sampler centres.
    pub fn span(&self) -> f64 {
        (self.samplers.len() as f64 - 1.0) * self.sampler_spacing
    }

    /// Width of ground the sampler line covers in one pass.
    pub fn footprint(&self) -> f64 {
        self.samplers.len() as f64 * self.sampler_spacing
    }

    /// Hops from `id` up to the brain, `id` first.
    pub fn route_to_root(&self, id: AgentId) -> Vec<AgentId> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        path
    }

    /// Breadth-first order in which brain commands propagate down the tree.
    pub fn downstream_order(&self) -> Vec<AgentId> {
        let mut order = Vec::with_capacity(self.len());
        let mut queue = VecDeque::from([self.brain]);
        while let Some(id) = queue.pop_front() {
            order.push(id);
            queue.extend(self.children(id));
        }
        order
    }

    /// Target pose of every member given the brain pose, indexed by agent id.
    pub fn follow(&self, brain_position: Vec2, brain_heading: f64) -> Vec<Vec2> {
        self.offsets
            .iter()
            .map(|o| brain_position + o.rotate(brain_heading))
            .collect()
    }

    /// Largest brain turn rate that keeps every sampler at or below `v_max`.
    /// Infinite when all samplers sit on the rotation centre.
    pub fn max_omega(&self, v_max: f64) -> f64 {
        let r_max = self
            .samplers
            .iter()
            .map(|&s| self.offset(s).norm())
            .fold(0.0_f64, f64::max);
        if r_max == 0.0 {
            f64::INFINITY
        } else {
            v_max / r_max
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_line_layout() {
        let f = SonsFormation::line(5, 20, 1.0).unwrap();
        assert_eq!(f.len(), 25);
        assert_eq!(f.supervisors().len(), 4);
        assert_eq!(f.samplers().len(), 20);
        assert!((f.span() - 19.0).abs() < 1e-12);
        let ys: Vec<f64> = f.samplers().iter().map(|&s| f.offset(s).y).collect();
        assert!((ys[0] - 9.5).abs() < 1e-12 && (ys[19] + 9.5).abs() < 1e-12);
        for w in ys.windows(2) {
            assert!((w[0] - w[1] - 1.0).abs() < 1e-12);
        }
        let mut sup: Vec<f64> = f.supervisors().iter().map(|&s| f.offset(s).y).collect();
        sup.sort_by(f64::total_cmp);
        assert_eq!(sup, vec![-8.0, -4.0, 4.0, 8.0]);
    }

    #[test]
    fn caterpillar_tree() {
        let f = SonsFormation::line(5, 20, 1.0).unwrap();
        let order = f.downstream_order();
        assert_eq!(order.len(), 25);
        assert_eq!(order[0], f.brain());
        let mut seen = order.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 25);
        // spine is a path through the supervisory nodes; every sampler is a leaf
        for &s in f.samplers() {
            assert!(f.children(s).is_empty());
            let route = f.route_to_root(s);
            assert_eq!(*route.last().unwrap(), f.brain());
            assert!(route[1..].iter().all(|&r| f.role(r) != Role::Sampler));
            assert!(route.len() <= 4);
        }
        assert_eq!(
            f.children(f.brain())
                .iter()
                .filter(|&&c| f.role(c) == Role::Supervisor)
                .count(),
            2
        );
    }

    #[test]
    fn minimal_formation() {
        let f = SonsFormation::line(1, 2, 2.0).unwrap();
        assert!((f.span() - 2.0).abs() < 1e-12);
        let ys: Vec<f64> = f.samplers().iter().map(|&s| f.offset(s).y).collect();
        assert_eq!(ys, vec![1.0, -1.0]);
    }

    #[test]
    fn omega_bound() {
        let f = SonsFormation::line(5, 20, 1.0).unwrap();
        assert!((f.max_omega(1.0) - 1.0 / 9.5).abs() < 1e-12);
        assert!((f.max_omega(2.0) - 2.0 / 9.5).abs() < 1e-12);
        let unit = SonsFormation::line(1, 3, 1.0).unwrap();
        assert!((unit.max_omega(1.0) - 1.0).abs() < 1e-12);
        let point = SonsFormation::line(1, 1, 1.0).unwrap();
        assert!(point.max_omega(1.0).is_infinite());
    }

    #[test]
    fn rigid_follow() {
        let f = SonsFormation::line(5, 20, 1.0).unwrap();
        let a = f.follow(Vec2::new(1.0, 2.0), 0.3);
        let b = f.follow(Vec2::new(-4.0, 7.0), 2.1);
        for i in 0..a.len() {
            for j in 0..a.len() {
                assert!((a[i].distance(a[j]) - b[i].distance(b[j])).abs() < 1e-9);
            }
        }
    }
}
