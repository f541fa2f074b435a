//! Planar vectors, angle arithmetic and admissible-heading sets.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector pointing along `angle` (radians, counterclockwise from +x).
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self { x: c, y: s }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product. Positive when `other` lies to the left of `self`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn angle(self) -> f64 {
        wrap_angle(self.y.atan2(self.x))
    }

    /// Rotate counterclockwise by `angle`.
    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            x: self.x * c - self.y * s,
            y: self.x * s + self.y * c,
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Normalize an angle into `[0, 2π)`.
pub fn wrap_angle(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    // rem_euclid can return TAU itself for tiny negative inputs
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Signed shortest rotation from `from` to `to`, in `(-π, π]`. Positive is counterclockwise.
pub fn shortest_delta(from: f64, to: f64) -> f64 {
    let d = wrap_angle(to - from);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// Unsigned angular distance in `[0, π]`.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    shortest_delta(a, b).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rotation {
    Clockwise,
    CounterClockwise,
}

impl Rotation {
    pub fn sign(self) -> f64 {
        match self {
            Rotation::Clockwise => -1.0,
            Rotation::CounterClockwise => 1.0,
        }
    }

    /// Direction of the shortest rotation from `from` to `to`; `None` when already there.
    /// An exact half-turn resolves counterclockwise.
    pub fn shortest(from: f64, to: f64) -> Option<Rotation> {
        let d = shortest_delta(from, to);
        if d > 0.0 {
            Some(Rotation::CounterClockwise)
        } else if d < 0.0 {
            Some(Rotation::Clockwise)
        } else {
            None
        }
    }

    /// Rotation needed to go from `from` to `to` turning only this way, in `[0, 2π)`.
    pub fn sweep(self, from: f64, to: f64) -> f64 {
        match self {
            Rotation::CounterClockwise => wrap_angle(to - from),
            Rotation::Clockwise => wrap_angle(from - to),
        }
    }
}

/// Margin shaved off open interval ends so sampled headings are strictly inside.
const OPEN_MARGIN: f64 = 1e-9;

/// A finite union of disjoint angular intervals `[start, start + len)` on the circle.
///
/// Used for admissible reflection headings: intersect interior half-planes, subtract the
/// exclusion cone around the reversed heading, then sample uniformly by arc measure.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSet {
    arcs: Vec<(f64, f64)>,
}

impl AngleSet {
    pub fn full() -> Self {
        Self {
            arcs: vec![(0.0, TAU)],
        }
    }

    /// Headings whose direction has a strictly positive dot product with `normal`.
    pub fn half_plane(normal: Vec2) -> Self {
        let n = normal.angle();
        Self::arc(n - PI / 2.0 + OPEN_MARGIN, PI - 2.0 * OPEN_MARGIN)
    }

    pub fn arc(start: f64, len: f64) -> Self {
        if len >= TAU {
            return Self::full();
        }
        if len <= 0.0 {
            return Self { arcs: Vec::new() };
        }
        let s = wrap_angle(start);
        let mut arcs = Vec::with_capacity(2);
        if s + len > TAU {
            arcs.push((0.0, s + len - TAU));
            arcs.push((s, TAU - s));
        } else {
            arcs.push((s, len));
        }
        Self { arcs }
    }

    pub fn is_empty(&self) -> bool {
        self.measure() <= 0.0
    }

    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(|&(_, l)| l).sum()
    }

    pub fn contains(&self, angle: f64) -> bool {
        let a = wrap_angle(angle);
        self.arcs.iter().any(|&(s, l)| a >= s && a < s + l)
    }

    pub fn intersect(&self, other: &AngleSet) -> AngleSet {
        let mut arcs = Vec::new();
        for &(s1, l1) in &self.arcs {
            for &(s2, l2) in &other.arcs {
                let lo = s1.max(s2);
                let hi = (s1 + l1).min(s2 + l2);
                if hi > lo {
                    arcs.push((lo, hi - lo));
                }
            }
        }
        arcs.sort_by(|a, b| a.0.total_cmp(&b.0));
        AngleSet { arcs }
    }

    /// Remove the closed cone of half-width `half_width` around `center`.
    pub fn without_cone(&self, center: f64, half_width: f64) -> AngleSet {
        let keep = AngleSet::arc(center + half_width, TAU - 2.0 * half_width);
        self.intersect(&keep)
    }

    /// Uniform sample by arc length. `None` when the set is empty.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<f64> {
        let total = self.measure();
        if total <= 0.0 {
            return None;
        }
        let mut u = rng.gen::<f64>() * total;
        for &(s, l) in &self.arcs {
            if u < l {
                return Some(wrap_angle(s + u));
            }
            u -= l;
        }
        // floating-point slack on the last arc
        self.arcs.last().map(|&(s, l)| wrap_angle(s + l * 0.5))
    }
}
