//! The square arena, its cell decomposition and boundary sensing.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::geometry::Vec2;

const MULTIPLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArenaSpec {
    pub side_length: f64,
    pub cell_size: f64,
    pub center: Vec2,
    /// Block edge length used by local uniformity.
    pub region_size: f64,
}

impl Default for ArenaSpec {
    fn default() -> Self {
        Self {
            side_length: 40.0,
            cell_size: 1.0,
            center: Vec2::ZERO,
            region_size: 10.0,
        }
    }
}

/// Column/row of a grid cell; row 0 is the southern edge, column 0 the western.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellIndex {
    pub col: usize,
    pub row: usize,
}

/// One straight side of the arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    East,
    North,
    West,
    South,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::East, Edge::North, Edge::West, Edge::South];

    pub fn inward_normal(self) -> Vec2 {
        match self {
            Edge::East => Vec2::new(-1.0, 0.0),
            Edge::North => Vec2::new(0.0, -1.0),
            Edge::West => Vec2::new(1.0, 0.0),
            Edge::South => Vec2::new(0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryProbe {
    pub edge: Edge,
    /// Perpendicular distance to the nearest edge line (non-negative).
    pub distance: f64,
    pub inward_normal: Vec2,
    /// How far outside the arena the point lies, 0 when inside.
    pub outside_depth: f64,
}

/// Distance from a point to one edge line, signed positive inside the arena.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeReading {
    pub edge: Edge,
    pub signed_distance: f64,
}

impl EdgeReading {
    pub fn inward_normal(&self) -> Vec2 {
        self.edge.inward_normal()
    }

    pub fn outside_depth(&self) -> f64 {
        (-self.signed_distance).max(0.0)
    }
}

fn is_multiple(value: f64, unit: f64) -> bool {
    let q = value / unit;
    (q - q.round()).abs() < MULTIPLE_TOL * q.abs().max(1.0)
}

impl ArenaSpec {
    pub fn with_side(side_length: f64) -> Self {
        Self {
            side_length,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.side_length > 0.0 && self.cell_size > 0.0 && self.region_size > 0.0) {
            return Err(SimError::InvalidConfig(
                "arena side, cell size and region size must be positive".into(),
            ));
        }
        if !is_multiple(self.side_length, self.cell_size) {
            return Err(SimError::InvalidConfig(format!(
                "arena side {} is not a multiple of cell size {}",
                self.side_length, self.cell_size
            )));
        }
        if !is_multiple(self.side_length, self.region_size) {
            return Err(SimError::InvalidConfig(format!(
                "arena side {} is not a multiple of region size {}",
                self.side_length, self.region_size
            )));
        }
        if !is_multiple(self.region_size, self.cell_size) {
            return Err(SimError::InvalidConfig(format!(
                "region size {} is not a multiple of cell size {}",
                self.region_size, self.cell_size
            )));
        }
        Ok(())
    }

    pub fn half_side(&self) -> f64 {
        self.side_length / 2.0
    }

    pub fn min_corner(&self) -> Vec2 {
        self.center - Vec2::new(self.half_side(), self.half_side())
    }

    pub fn max_corner(&self) -> Vec2 {
        self.center + Vec2::new(self.half_side(), self.half_side())
    }

    /// Cells per side.
    pub fn cells_per_side(&self) -> usize {
        (self.side_length / self.cell_size).round() as usize
    }

    pub fn cell_count(&self) -> usize {
        self.cells_per_side() * self.cells_per_side()
    }

    /// Cells per side of one uniformity block.
    pub fn cells_per_region(&self) -> usize {
        (self.region_size / self.cell_size).round() as usize
    }

    pub fn contains(&self, p: Vec2) -> bool {
        let lo = self.min_corner();
        let hi = self.max_corner();
        p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y
    }

    /// Cell containing `p`. The maximum edges belong to the last row/column.
    pub fn cell_of(&self, p: Vec2) -> Option<CellIndex> {
        if !self.contains(p) {
            return None;
        }
        let lo = self.min_corner();
        let n = self.cells_per_side();
        let col = (((p.x - lo.x) / self.cell_size).floor() as usize).min(n - 1);
        let row = (((p.y - lo.y) / self.cell_size).floor() as usize).min(n - 1);
        Some(CellIndex { col, row })
    }

    /// Row-major linear index of a cell.
    pub fn linear(&self, cell: CellIndex) -> usize {
        cell.row * self.cells_per_side() + cell.col
    }

    /// Cell at a signed offset from `cell`, or `None` outside the grid.
    pub fn offset_cell(&self, cell: CellIndex, dc: i64, dr: i64) -> Option<CellIndex> {
        let n = self.cells_per_side() as i64;
        let c = cell.col as i64 + dc;
        let r = cell.row as i64 + dr;
        (c >= 0 && c < n && r >= 0 && r < n).then_some(CellIndex {
            col: c as usize,
            row: r as usize,
        })
    }

    pub fn edge_readings(&self, p: Vec2) -> [EdgeReading; 4] {
        let lo = self.min_corner();
        let hi = self.max_corner();
        [
            EdgeReading {
                edge: Edge::East,
                signed_distance: hi.x - p.x,
            },
            EdgeReading {
                edge: Edge::North,
                signed_distance: hi.y - p.y,
            },
            EdgeReading {
                edge: Edge::West,
                signed_distance: p.x - lo.x,
            },
            EdgeReading {
                edge: Edge::South,
                signed_distance: p.y - lo.y,
            },
        ]
    }

    /// Nearest-edge reading for a point anywhere in the plane.
    ///
    /// Inside the arena this is the edge with the smallest clearance; outside it is the edge
    /// the point is furthest beyond.
    pub fn boundary_probe(&self, p: Vec2) -> BoundaryProbe {
        let readings = self.edge_readings(p);
        let nearest = readings
            .iter()
            .min_by(|a, b| a.signed_distance.total_cmp(&b.signed_distance))
            .copied()
            .expect("four edges");
        BoundaryProbe {
            edge: nearest.edge,
            distance: nearest.signed_distance.abs(),
            inward_normal: nearest.inward_normal(),
            outside_depth: nearest.outside_depth(),
        }
    }
}
