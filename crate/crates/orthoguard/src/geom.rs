//! Integer lattice primitives shared by every module.
//!
//! All predicates in the primary pipeline are exact integer comparisons;
//! nothing here ever rounds.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Sub};

/// Coordinate axis. Z is the vertical axis throughout.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    #[serde(rename = "z")]
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    /// The two other axes, in right-handed order: `u × v = self`.
    pub fn others(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::Z, Axis::X),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }

    /// The horizontal axis perpendicular to a horizontal `self`.
    pub fn horizontal_perp(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
            Axis::Z => panic!("no horizontal perpendicular for Z"),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => write!(f, "x"),
            Axis::Y => write!(f, "y"),
            Axis::Z => write!(f, "z"),
        }
    }
}

/// A lattice point (or integer vector).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Point3 {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Point3 { x, y, z }
    }

    pub fn get(self, a: Axis) -> i64 {
        match a {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    pub fn with(mut self, a: Axis, v: i64) -> Self {
        match a {
            Axis::X => self.x = v,
            Axis::Y => self.y = v,
            Axis::Z => self.z = v,
        }
        self
    }

    pub fn to_array(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    /// Axis of the segment `self -> other`, if it is axis-parallel and non-degenerate.
    pub fn axis_to(self, other: Point3) -> Option<Axis> {
        let d = other - self;
        match (d.x != 0, d.y != 0, d.z != 0) {
            (true, false, false) => Some(Axis::X),
            (false, true, false) => Some(Axis::Y),
            (false, false, true) => Some(Axis::Z),
            _ => None,
        }
    }
}

impl fmt::Debug for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// An axis-aligned plane together with the side its face material shows,
/// encoded as the outward normal `sign * axis`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OrientedPlane {
    pub axis: Axis,
    pub offset: i64,
    /// +1 or -1.
    pub sign: i8,
}

impl OrientedPlane {
    pub fn normal(self) -> Point3 {
        let v = Point3::default().with(self.axis, self.sign as i64);
        v
    }
}

/// Proper rotations used by orientation normalization: cyclic axis
/// permutations (determinant +1, so loop windings stay valid).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Rotation {
    Identity,
    /// New coordinates are `(y, z, x)`; axes map X→Z, Y→X, Z→Y.
    YzxToXyz,
    /// New coordinates are `(z, x, y)`; axes map X→Y, Y→Z, Z→X.
    ZxyToXyz,
}

impl Rotation {
    pub fn apply(self, p: Point3) -> Point3 {
        match self {
            Rotation::Identity => p,
            Rotation::YzxToXyz => Point3::new(p.y, p.z, p.x),
            Rotation::ZxyToXyz => Point3::new(p.z, p.x, p.y),
        }
    }

    pub fn apply_axis(self, a: Axis) -> Axis {
        match self {
            Rotation::Identity => a,
            Rotation::YzxToXyz => match a {
                Axis::X => Axis::Z,
                Axis::Y => Axis::X,
                Axis::Z => Axis::Y,
            },
            Rotation::ZxyToXyz => match a {
                Axis::X => Axis::Y,
                Axis::Y => Axis::Z,
                Axis::Z => Axis::X,
            },
        }
    }

    pub fn inverse(self) -> Rotation {
        match self {
            Rotation::Identity => Rotation::Identity,
            Rotation::YzxToXyz => Rotation::ZxyToXyz,
            Rotation::ZxyToXyz => Rotation::YzxToXyz,
        }
    }
}

/// Closed 1D interval helpers used by decomposition and verification.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn len(self) -> i64 {
        self.hi - self.lo
    }

    pub fn intersect(self, o: Interval) -> Option<Interval> {
        let lo = self.lo.max(o.lo);
        let hi = self.hi.min(o.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Intersection with positive length.
    pub fn overlap(self, o: Interval) -> Option<Interval> {
        self.intersect(o).filter(|i| i.len() > 0)
    }

    pub fn contains(self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_inverse_roundtrip() {
        let p = Point3::new(1, 2, 3);
        for r in [Rotation::Identity, Rotation::YzxToXyz, Rotation::ZxyToXyz] {
            assert_eq!(r.inverse().apply(r.apply(p)), p);
            for a in Axis::ALL {
                assert_eq!(r.inverse().apply_axis(r.apply_axis(a)), a);
            }
        }
    }

    #[test]
    fn rotation_moves_axes_as_documented() {
        // A vector along old X lands on new Z under YzxToXyz.
        let ex = Point3::new(1, 0, 0);
        assert_eq!(Rotation::YzxToXyz.apply(ex), Point3::new(0, 0, 1));
        assert_eq!(Rotation::YzxToXyz.apply_axis(Axis::X), Axis::Z);
        assert_eq!(Rotation::ZxyToXyz.apply(ex), Point3::new(0, 1, 0));
    }

    #[test]
    fn interval_overlap() {
        let a = Interval::new(0, 4);
        assert_eq!(a.overlap(Interval::new(4, 8)), None);
        assert_eq!(a.intersect(Interval::new(4, 8)), Some(Interval::new(4, 4)));
        assert_eq!(a.overlap(Interval::new(2, 8)), Some(Interval::new(2, 4)));
    }
}
