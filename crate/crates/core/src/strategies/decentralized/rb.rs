//! Random billiards with randomized obstacle avoidance.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arena::EdgeReading;
use crate::geometry::{wrap_angle, AngleSet, Rotation, Vec2};
use crate::sensing::Neighbor;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RbParams {
    /// Distance to a boundary at which the reflection fires, metres.
    pub boundary_trigger: f64,
    /// Half-width of the excluded cone around the reversed heading, degrees.
    pub reciprocal_exclusion: f64,
    pub short_range: f64,
    /// Full cone ahead, degrees.
    pub short_fov: f64,
    pub short_turn: (f64, f64),
    pub medium_range: f64,
    pub medium_fov: f64,
    pub medium_turn: (f64, f64),
}

impl Default for RbParams {
    fn default() -> Self {
        Self {
            boundary_trigger: 0.05,
            reciprocal_exclusion: 5.0,
            short_range: 1.0,
            short_fov: 90.0,
            short_turn: (10.0, 30.0),
            medium_range: 2.5,
            medium_fov: 60.0,
            medium_turn: (5.0, 70.0),
        }
    }
}

impl RbParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.short_range < self.medium_range) {
            return Err("short avoidance range must be below medium range".into());
        }
        let angles = [
            self.reciprocal_exclusion,
            self.short_fov,
            self.short_turn.0,
            self.short_turn.1,
            self.medium_fov,
            self.medium_turn.0,
            self.medium_turn.1,
        ];
        if angles.iter().any(|&a| !(a > 0.0)) {
            return Err("avoidance angles must be positive".into());
        }
        if self.short_turn.0 > self.short_turn.1 || self.medium_turn.0 > self.medium_turn.1 {
            return Err("turn ranges must be ordered".into());
        }
        if !(self.boundary_trigger > 0.0) {
            return Err("boundary trigger must be positive".into());
        }
        Ok(())
    }
}

/// Edges within the trigger distance, when the current heading is not interior to all of them.
pub fn boundary_trigger(
    readings: &[EdgeReading],
    heading: f64,
    params: &RbParams,
) -> Option<Vec<Vec2>> {
    let dir = Vec2::from_angle(heading);
    let near: Vec<Vec2> = readings
        .iter()
        .filter(|r| r.signed_distance <= params.boundary_trigger)
        .map(EdgeReading::inward_normal)
        .collect();
    near.iter().any(|n| dir.dot(*n) <= 0.0).then_some(near)
}

/// New heading after touching the boundary: uniform over the interior directions of every
/// nearby edge, minus the exclusion cone around the reversed heading.
pub fn rb_boundary_react<R: Rng + ?Sized>(
    heading: f64,
    normals: &[Vec2],
    params: &RbParams,
    rng: &mut R,
) -> f64 {
    let set = normals
        .iter()
        .fold(AngleSet::full(), |acc, n| {
            acc.intersect(&AngleSet::half_plane(*n))
        })
        .without_cone(
            heading + std::f64::consts::PI,
            params.reciprocal_exclusion.to_radians(),
        );
    set.sample(rng).unwrap_or_else(|| {
        let sum = normals.iter().fold(Vec2::ZERO, |acc, n| acc + *n);
        sum.angle()
    })
}

/// An avoidance turn relative to the current heading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AvoidTurn {
    pub short_range: bool,
    pub rotation: Rotation,
    /// Radians, positive.
    pub angle: f64,
}

impl AvoidTurn {
    pub fn target(&self, heading: f64) -> f64 {
        wrap_angle(heading + self.rotation.sign() * self.angle)
    }
}

fn nearest_in_cone(neighbors: &[Neighbor], range: f64, fov_deg: f64) -> Option<&Neighbor> {
    let half = (fov_deg / 2.0).to_radians();
    neighbors
        .iter()
        .filter(|n| n.distance <= range && n.bearing().abs() <= half)
        .min_by(|a, b| a.distance.total_cmp(&b.distance))
}

/// Short-range avoidance wins over medium-range. Obstacles on the left (or dead ahead) turn
/// the agent clockwise, on the right counterclockwise.
pub fn rb_avoid<R: Rng + ?Sized>(
    neighbors: &[Neighbor],
    params: &RbParams,
    rng: &mut R,
) -> Option<AvoidTurn> {
    let (hit, short_range, (lo, hi)) =
        if let Some(n) = nearest_in_cone(neighbors, params.short_range, params.short_fov) {
            (n, true, params.short_turn)
        } else {
            let n = nearest_in_cone(neighbors, params.medium_range, params.medium_fov)?;
            (n, false, params.medium_turn)
        };
    // body frame: +x ahead, so the cross product heading × relative is just relative.y
    let rotation = if hit.relative.y >= 0.0 {
        Rotation::Clockwise
    } else {
        Rotation::CounterClockwise
    };
    let angle = rng.gen_range(lo..=hi).to_radians();
    Some(AvoidTurn {
        short_range,
        rotation,
        angle,
    })
}
