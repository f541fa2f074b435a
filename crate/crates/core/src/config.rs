use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Result, SimError};

/// Slack on "speed not exceeding the target" so exact-speed motion survives rounding.
pub const SPEED_EPSILON: f64 = 1e-9;

/// Altitudes closer than this are the same flight layer.
pub const ALTITUDE_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Seconds per simulation step.
    pub dt: f64,
    pub target_sampling_velocity: f64,
    pub sampling_altitude: f64,
    pub supervisory_altitude: f64,
    pub comm_range_max: f64,
    pub max_steps: u64,
    pub seed: u64,
    /// In-place turn rate, radians per second.
    pub turn_rate_default: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 0.1,
            target_sampling_velocity: 1.0,
            sampling_altitude: 1.5,
            supervisory_altitude: 4.0,
            comm_range_max: 10.0,
            max_steps: 60_000,
            seed: 0,
            turn_rate_default: FRAC_PI_2,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) {
            return Err(SimError::InvalidConfig("dt must be positive".into()));
        }
        if self.max_steps == 0 {
            return Err(SimError::InvalidConfig("max_steps must be positive".into()));
        }
        if !(self.target_sampling_velocity > 0.0) {
            return Err(SimError::InvalidConfig(
                "target sampling velocity must be positive".into(),
            ));
        }
        if !(self.turn_rate_default > 0.0) {
            return Err(SimError::InvalidConfig("turn rate must be positive".into()));
        }
        Ok(())
    }

    /// Distance covered in one step at the target sampling velocity.
    pub fn stride(&self) -> f64 {
        self.target_sampling_velocity * self.dt
    }
}
