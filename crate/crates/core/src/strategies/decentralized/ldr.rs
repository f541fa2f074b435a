//! Local density reduction through ID broadcasts.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{wrap_angle, Rotation, Vec2};
use crate::sensing::Neighbor;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LdrReaction {
    /// Clockwise turn by a uniform angle in the range, degrees.
    RandomClockwise { min: f64, max: f64 },
    /// Face away from the mean position of the neighbours heard this step.
    Repulsive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdrParams {
    pub comm_range: f64,
    /// Distinct IDs heard in one step that count as high density.
    pub density_threshold: usize,
    pub reaction: LdrReaction,
    /// Suppression after the density reaction itself, steps.
    pub post_reaction_suppression: u32,
    /// Suppression after an avoidance or boundary reaction, steps.
    pub post_avoidance_suppression: u32,
}

impl LdrParams {
    pub fn random() -> Self {
        Self {
            comm_range: 10.0,
            density_threshold: 5,
            reaction: LdrReaction::RandomClockwise {
                min: 70.0,
                max: 90.0,
            },
            post_reaction_suppression: 50,
            post_avoidance_suppression: 350,
        }
    }

    pub fn repulsive() -> Self {
        Self {
            comm_range: 5.0,
            density_threshold: 3,
            reaction: LdrReaction::Repulsive,
            post_reaction_suppression: 350,
            post_avoidance_suppression: 350,
        }
    }

    pub fn validate(&self, comm_range_max: f64) -> Result<(), String> {
        if !(self.comm_range > 0.0 && self.comm_range <= comm_range_max) {
            return Err(format!(
                "LDR range {} must be in (0, {comm_range_max}]",
                self.comm_range
            ));
        }
        if self.density_threshold < 1 {
            return Err("density threshold must be at least 1".into());
        }
        if let LdrReaction::RandomClockwise { min, max } = self.reaction {
            if !(min >= 0.0 && min <= max) {
                return Err("density turn range must be ordered and non-negative".into());
            }
        }
        Ok(())
    }
}

/// Whether an agent hearing `heard` distinct IDs raises a high-density notification.
pub fn detects_high_density(heard: usize, params: &LdrParams) -> bool {
    heard >= params.density_threshold
}

/// Target heading and rotation after a density notification.
///
/// Returns `None` when the repulsive variant has no usable direction (neighbours centred on
/// the agent); the heading is then kept.
pub fn density_reaction<R: Rng + ?Sized>(
    heading: f64,
    heard: &[Neighbor],
    params: &LdrParams,
    rng: &mut R,
) -> Option<(f64, Rotation)> {
    match params.reaction {
        LdrReaction::RandomClockwise { min, max } => {
            let turn = rng.gen_range(min..=max).to_radians();
            Some((wrap_angle(heading - turn), Rotation::Clockwise))
        }
        LdrReaction::Repulsive => {
            let target = repulsive_heading(heard)?;
            let world = wrap_angle(heading + target);
            Rotation::shortest(heading, world).map(|r| (world, r))
        }
    }
}

/// Heading in the body frame that points away from the neighbours' mean relative position.
pub fn repulsive_heading(heard: &[Neighbor]) -> Option<f64> {
    if heard.is_empty() {
        return None;
    }
    let sum = heard.iter().fold(Vec2::ZERO, |acc, n| acc + n.relative);
    let mean = sum * (1.0 / heard.len() as f64);
    (mean.norm() > 1e-12).then(|| (-mean).angle())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agent::AgentId;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn n(x: f64, y: f64) -> Neighbor {
        Neighbor {
            id: AgentId(1),
            relative: Vec2::new(x, y),
            distance: x.hypot(y),
        }
    }

    #[test]
    fn threshold() {
        let p = LdrParams::random();
        assert!(detects_high_density(5, &p));
        assert!(!detects_high_density(4, &p));
        assert!(detects_high_density(3, &LdrParams::repulsive()));
    }

    #[test]
    fn random_clockwise_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = LdrParams::random();
        for _ in 0..500 {
            let (t, r) = density_reaction(1.0, &[], &p, &mut rng).unwrap();
            assert_eq!(r, Rotation::Clockwise);
            let turned = Rotation::Clockwise.sweep(1.0, t).to_degrees();
            assert!((70.0 - 1e-9..=90.0 + 1e-9).contains(&turned));
        }
    }

    #[test]
    fn repulsive_hand_computation() {
        // mean (0.5, 0.5) → face 225° in the body frame
        let h = repulsive_heading(&[n(1.0, 0.0), n(0.0, 1.0)]).unwrap();
        assert!((h - 225f64.to_radians()).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (t, r) = density_reaction(
            0.0,
            &[n(1.0, 0.0), n(0.0, 1.0)],
            &LdrParams::repulsive(),
            &mut rng,
        )
        .unwrap();
        assert!((t - 225f64.to_radians()).abs() < 1e-12);
        assert_eq!(r, Rotation::Clockwise);
    }

    #[test]
    fn repulsive_degenerate() {
        assert!(repulsive_heading(&[n(1.0, 0.0), n(-1.0, 0.0)]).is_none());
        assert!(repulsive_heading(&[]).is_none());
    }
}
