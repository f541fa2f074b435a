//! Initial placement of decentralized swarms along the southern edge.

use rand::Rng;
use std::f64::consts::PI;

use crate::agent::{AgentId, AgentMode, AgentState};
use crate::arena::ArenaSpec;
use crate::error::{Result, SimError};
use crate::geometry::Vec2;
use crate::strategies::decentralized::DecentralizedMode;

/// Candidates rejected in a row before the partial layout is discarded and redrawn.
const RESTART_AFTER: usize = 2_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacementSpec {
    /// South-west corner of the placement rectangle.
    pub origin: Vec2,
    pub width: f64,
    pub depth: f64,
    pub min_spacing: f64,
    /// Headings are drawn uniformly from `[min, max]`, radians.
    pub heading_range: (f64, f64),
    pub altitude: f64,
    pub max_rejections: usize,
}

impl PlacementSpec {
    /// 20 m × 3 m strip centred on the southern edge, shrunk to fit smaller arenas.
    pub fn for_arena(arena: &ArenaSpec, altitude: f64) -> Self {
        let width = arena.side_length.min(20.0);
        let depth = arena.side_length.min(3.0);
        let lo = arena.min_corner();
        Self {
            origin: Vec2::new(arena.center.x - width / 2.0, lo.y),
            width,
            depth,
            min_spacing: 1.5,
            heading_range: (0.0, PI),
            altitude,
            max_rejections: 100_000,
        }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x >= self.origin.x
            && p.x <= self.origin.x + self.width
            && p.y >= self.origin.y
            && p.y <= self.origin.y + self.depth
    }
}

/// Rejection-sample `n` positions at least `min_spacing` apart, each with a random
/// interior-facing heading. Ids are `0..n`.
pub fn place_decentralized<R: Rng + ?Sized>(
    spec: &PlacementSpec,
    n: usize,
    seed: u64,
    rng: &mut R,
) -> Result<Vec<AgentState>> {
    let mut points: Vec<Vec2> = Vec::with_capacity(n);
    let mut rejected = 0usize;
    let mut streak = 0usize;
    let min_sq = spec.min_spacing * spec.min_spacing;
    while points.len() < n {
        if rejected >= spec.max_rejections {
            return Err(SimError::PlacementInfeasible {
                requested: n,
                placed: points.len(),
                rejected,
            });
        }
        let p = Vec2::new(
            spec.origin.x + rng.gen::<f64>() * spec.width,
            spec.origin.y + rng.gen::<f64>() * spec.depth,
        );
        if points.iter().all(|q| {
            let d = p - *q;
            d.dot(d) >= min_sq
        }) {
            points.push(p);
            streak = 0;
        } else {
            rejected += 1;
            streak += 1;
            if streak >= RESTART_AFTER {
                points.clear();
                streak = 0;
            }
        }
    }
    let (h0, h1) = spec.heading_range;
    Ok(points
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let heading = rng.gen_range(h0..=h1);
            AgentState::new(
                AgentId(i as u32),
                p,
                heading,
                spec.altitude,
                AgentMode::Decentralized(DecentralizedMode::default()),
                seed,
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agent::AgentRng;

    #[test]
    fn default_swarm_fits() {
        let spec = PlacementSpec::for_arena(&ArenaSpec::default(), 1.5);
        for seed in 0..50 {
            let agents =
                place_decentralized(&spec, 25, seed, &mut AgentRng::for_run(seed)).unwrap();
            assert_eq!(agents.len(), 25);
            for (i, a) in agents.iter().enumerate() {
                assert!(spec.contains(a.position));
                assert!(a.heading <= PI);
                for b in &agents[i + 1..] {
                    assert!(a.position.distance(b.position) >= 1.5);
                }
            }
        }
    }

    #[test]
    fn pigeonhole_fails() {
        let spec = PlacementSpec {
            min_spacing: 10.0,
            ..PlacementSpec::for_arena(&ArenaSpec::default(), 1.5)
        };
        let err = place_decentralized(&spec, 25, 0, &mut AgentRng::for_run(0)).unwrap_err();
        assert!(matches!(
            err,
            SimError::PlacementInfeasible {
                rejected: 100_000,
                ..
            }
        ));
    }

    #[test]
    fn single_agent() {
        let spec = PlacementSpec::for_arena(&ArenaSpec::default(), 1.5);
        let a = place_decentralized(&spec, 1, 3, &mut AgentRng::for_run(3)).unwrap();
        assert!(spec.contains(a[0].position));
    }
}
