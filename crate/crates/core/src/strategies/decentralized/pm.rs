//! Pheromone-based mobility: a decaying per-cell field and the forward/left/right choice.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;

use crate::arena::{ArenaSpec, CellIndex};
use crate::geometry::Vec2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmParams {
    /// Degrees.
    pub turn_angle: f64,
    pub post_pheromone_suppression: u32,
    pub post_avoidance_suppression: u32,
    pub deposit_amount: f64,
    /// Units lost per cell per step.
    pub evaporation_rate: f64,
}

impl Default for PmParams {
    fn default() -> Self {
        Self {
            turn_angle: 45.0,
            post_pheromone_suppression: 25,
            post_avoidance_suppression: 50,
            deposit_amount: 5000.0,
            evaporation_rate: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneField {
    cols: usize,
    rows: usize,
    level: Vec<f64>,
    deposit_amount: f64,
    evaporation_rate: f64,
}

impl PheromoneField {
    pub fn new(arena: &ArenaSpec, deposit_amount: f64, evaporation_rate: f64) -> Self {
        let n = arena.cells_per_side();
        Self {
            cols: n,
            rows: n,
            level: vec![0.0; n * n],
            deposit_amount,
            evaporation_rate,
        }
    }

    pub fn level(&self, cell: CellIndex) -> f64 {
        self.level[cell.row * self.cols + cell.col]
    }

    pub fn levels(&self) -> &[f64] {
        &self.level
    }

    pub fn deposit(&mut self, cell: CellIndex) {
        self.level[cell.row * self.cols + cell.col] += self.deposit_amount;
    }

    /// Every cell loses the evaporation rate, floored at zero.
    pub fn evaporate(&mut self) {
        let r = self.evaporation_rate;
        for l in &mut self.level {
            *l = (*l - r).max(0.0);
        }
    }

    /// Deposit for each cell in `entered` (one per entering agent), then evaporate.
    pub fn update(&mut self, entered: &[CellIndex]) {
        for &c in entered {
            self.deposit(c);
        }
        self.evaporate();
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.cols, self.rows)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PheromoneReadings {
    pub ahead: f64,
    pub left: f64,
    pub right: f64,
}

impl PheromoneReadings {
    pub fn total(&self) -> f64 {
        self.ahead + self.left + self.right
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.ahead, self.left, self.right]
    }
}

/// Grid steps for the eight compass directions, counterclockwise from east.
const COMPASS: [(i64, i64); 8] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

/// Nearest compass direction to `heading`, 0 = east, counting counterclockwise.
pub fn compass_index(heading: f64) -> usize {
    ((heading / FRAC_PI_4).round() as i64).rem_euclid(8) as usize
}

/// Levels in the adjacent cells ahead and ±45° from it, in the nearest compass frame.
/// Cells beyond the grid read zero.
pub fn pm_sense(
    field: &PheromoneField,
    position: Vec2,
    heading: f64,
    arena: &ArenaSpec,
) -> PheromoneReadings {
    let Some(cell) = arena.cell_of(position) else {
        return PheromoneReadings {
            ahead: 0.0,
            left: 0.0,
            right: 0.0,
        };
    };
    let k = compass_index(heading);
    let read = |idx: usize| {
        let (dc, dr) = COMPASS[idx % 8];
        arena
            .offset_cell(cell, dc, dr)
            .map_or(0.0, |c| field.level(c))
    };
    PheromoneReadings {
        ahead: read(k),
        left: read(k + 1),
        right: read(k + 7),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmChoice {
    NoReaction,
    Ahead,
    TurnLeft,
    TurnRight,
}

/// `(p_ahead, p_right, p_left)`; each is `(total − reading) / (2·total)`.
pub fn pm_probabilities(r: &PheromoneReadings) -> (f64, f64, f64) {
    let total = r.total();
    let denom = 2.0 * total;
    (
        (total - r.ahead) / denom,
        (total - r.right) / denom,
        (total - r.left) / denom,
    )
}

pub fn pm_choose<R: Rng + ?Sized>(
    readings: &PheromoneReadings,
    suppressed: bool,
    rng: &mut R,
) -> PmChoice {
    if suppressed || readings.ahead <= 0.0 || readings.total() <= 0.0 {
        return PmChoice::NoReaction;
    }
    let (pa, pr, _) = pm_probabilities(readings);
    let u: f64 = rng.gen();
    if u < pa {
        PmChoice::Ahead
    } else if u < pa + pr {
        PmChoice::TurnRight
    } else {
        PmChoice::TurnLeft
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn evaporation_and_floor() {
        let arena = ArenaSpec::default();
        let mut f = PheromoneField::new(&arena, 5000.0, 1.0);
        let c = CellIndex { col: 2, row: 3 };
        f.update(&[c]);
        f.update(&[]);
        f.update(&[]);
        // three evaporations after the deposit
        assert_eq!(f.level(c), 4997.0);
        let empty = CellIndex { col: 0, row: 0 };
        assert_eq!(f.level(empty), 0.0);
        f.update(&[c, c]);
        assert_eq!(f.level(c), 4997.0 + 10000.0 - 1.0);
    }

    #[test]
    fn sensing_in_compass_frame() {
        let arena = ArenaSpec::default();
        let mut f = PheromoneField::new(&arena, 1.0, 0.0);
        let here = Vec2::new(0.5, 0.5); // cell (20, 20)
        f.deposit(CellIndex { col: 21, row: 20 });
        f.deposit(CellIndex { col: 21, row: 21 });
        f.deposit(CellIndex { col: 21, row: 21 });
        for _ in 0..3 {
            f.deposit(CellIndex { col: 21, row: 19 });
        }
        let r = pm_sense(&f, here, 3f64.to_radians(), &arena);
        assert_eq!((r.ahead, r.left, r.right), (1.0, 2.0, 3.0));
    }

    #[test]
    fn corner_reads_zero_outside() {
        let arena = ArenaSpec::default();
        let f = PheromoneField::new(&arena, 1.0, 0.0);
        let r = pm_sense(
            &f,
            Vec2::new(19.9, 19.9),
            std::f64::consts::FRAC_PI_4,
            &arena,
        );
        assert_eq!(r.as_array(), [0.0; 3]);
    }

    #[test]
    fn probability_examples() {
        let t = 3.0;
        let (a, r, l) = pm_probabilities(&PheromoneReadings {
            ahead: t / 3.0,
            left: t / 3.0,
            right: t / 3.0,
        });
        assert!(
            (a - 1.0 / 3.0).abs() < 1e-15
                && (r - 1.0 / 3.0).abs() < 1e-15
                && (l - 1.0 / 3.0).abs() < 1e-15
        );
        let (a, r, l) = pm_probabilities(&PheromoneReadings {
            ahead: 7.0,
            left: 0.0,
            right: 0.0,
        });
        assert_eq!((a, r, l), (0.0, 0.5, 0.5));
    }

    #[test]
    fn no_reaction_without_pheromone_ahead() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = PheromoneReadings {
            ahead: 0.0,
            left: 10.0,
            right: 3.0,
        };
        assert_eq!(pm_choose(&r, false, &mut rng), PmChoice::NoReaction);
        let r2 = PheromoneReadings { ahead: 1.0, ..r };
        assert_eq!(pm_choose(&r2, true, &mut rng), PmChoice::NoReaction);
    }

    #[test]
    fn choice_frequencies_follow_probabilities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = PheromoneReadings {
            ahead: 1.0,
            left: 2.0,
            right: 5.0,
        };
        let (pa, pr, pl) = pm_probabilities(&r);
        let n = 100_000;
        let mut counts = [0usize; 3];
        for _ in 0..n {
            match pm_choose(&r, false, &mut rng) {
                PmChoice::Ahead => counts[0] += 1,
                PmChoice::TurnRight => counts[1] += 1,
                PmChoice::TurnLeft => counts[2] += 1,
                PmChoice::NoReaction => unreachable!(),
            }
        }
        for (c, p) in counts.iter().zip([pa, pr, pl]) {
            assert!((*c as f64 / n as f64 - p).abs() < 0.01);
        }
    }
}
