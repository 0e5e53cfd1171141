//! Input representation: polyhedra as vertex/face arrays, the ORP text
//! format, validation, adjacency tables, maximal-edge extraction with
//! convex/reflex labels, orientation normalization and Euler genus.

mod adjacency;
mod edges;
mod parse;
mod validate;

pub use adjacency::{Adjacency, SegRef};
pub use edges::{classify_edges, euler_genus, normalize_orientation, Convexity, Edge, EdgeSet};
pub use parse::{parse_polyhedron, write_polyhedron, ParseError};
pub use validate::{validate, ValidationReport, Violation};

use crate::geom::{Axis, Point3};
use thiserror::Error;

/// A face of an orthogonal polyhedron: one outer loop plus optional hole
/// loops, all referencing the shared vertex array. The outer loop runs
/// counterclockwise with respect to the outward normal, holes clockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// First loop is the outer boundary; the rest are holes.
    pub loops: Vec<Vec<u32>>,
}

impl Face {
    pub fn outer(&self) -> &[u32] {
        &self.loops[0]
    }

    pub fn holes(&self) -> &[Vec<u32>] {
        &self.loops[1..]
    }
}

/// Orthogonal polyhedron with integer vertices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polyhedron {
    pub vertices: Vec<Point3>,
    pub faces: Vec<Face>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("face {face} is not planar on a single axis-aligned plane")]
    NotPlanar { face: usize },
    #[error("face {face} loop {band} is degenerate (zero area or bad alternation)")]
    DegenerateLoop { face: usize, band: usize },
    #[error("non-manifold configuration at segment {a:?} -> {b:?} ({count} incident faces)")]
    NonManifold { a: Point3, b: Point3, count: usize },
    #[error("reflex edges span all three axis directions")]
    ThreeReflexDirections,
    #[error("non-integral or negative genus: Euler characteristic {chi}")]
    BadGenus { chi: i64 },
}

/// Supporting plane of a face: the constant axis, its offset, and the
/// outward normal sign derived from the outer loop winding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacePlane {
    pub axis: Axis,
    pub offset: i64,
    pub sign: i8,
}

impl FacePlane {
    pub fn oriented(&self) -> crate::geom::OrientedPlane {
        crate::geom::OrientedPlane {
            axis: self.axis,
            offset: self.offset,
            sign: self.sign,
        }
    }
}

impl Polyhedron {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn point(&self, idx: u32) -> Point3 {
        self.vertices[idx as usize]
    }

    /// In-plane coordinates of a point for a face on plane `axis`:
    /// `(u, v)` are the other two axes in right-handed order.
    pub fn uv(p: Point3, axis: Axis) -> (i64, i64) {
        let (ua, va) = axis.others();
        (p.get(ua), p.get(va))
    }

    /// Twice the signed area of a loop projected on the plane of `axis`,
    /// positive when counterclockwise as seen from the `+axis` side.
    pub fn loop_area2(&self, axis: Axis, lp: &[u32]) -> i64 {
        let mut s = 0i64;
        for i in 0..lp.len() {
            let (u1, v1) = Self::uv(self.point(lp[i]), axis);
            let (u2, v2) = Self::uv(self.point(lp[(i + 1) % lp.len()]), axis);
            s += u1 * v2 - u2 * v1;
        }
        s
    }

    /// Supporting plane of a face. Fails when the face is not confined to a
    /// single axis-aligned plane or its outer loop has zero area.
    pub fn face_plane(&self, face_idx: usize) -> Result<FacePlane, ModelError> {
        let face = &self.faces[face_idx];
        let mut constant = [true; 3];
        let first = self.point(face.loops[0][0]);
        for lp in &face.loops {
            for &vi in lp {
                let p = self.point(vi);
                for a in Axis::ALL {
                    if p.get(a) != first.get(a) {
                        constant[a.index()] = false;
                    }
                }
            }
        }
        let axes: Vec<Axis> = Axis::ALL
            .into_iter()
            .filter(|a| constant[a.index()])
            .collect();
        if axes.len() != 1 {
            return Err(ModelError::NotPlanar { face: face_idx });
        }
        let axis = axes[0];
        let area2 = self.loop_area2(axis, face.outer());
        if area2 == 0 {
            return Err(ModelError::DegenerateLoop {
                face: face_idx,
                band: 0,
            });
        }
        Ok(FacePlane {
            axis,
            offset: first.get(axis),
            sign: if area2 > 0 { 1 } else { -1 },
        })
    }

    /// Volume via the divergence theorem applied to the field (0, 0, z):
    /// only horizontal faces contribute `sign * z * area`.
    pub fn volume(&self) -> Result<i64, ModelError> {
        let mut v = 0i64;
        for f in 0..self.faces.len() {
            let pl = self.face_plane(f)?;
            if pl.axis != Axis::Z {
                continue;
            }
            let mut area2 = 0i64;
            for lp in &self.faces[f].loops {
                area2 += self.loop_area2(Axis::Z, lp);
            }
            // area2 is signed CCW w.r.t. +Z; the outward flux is
            // offset * area2 * (+1 if the loop faces up).
            v += pl.offset * area2;
        }
        if v % 2 != 0 {
            return Err(ModelError::BadGenus { chi: v });
        }
        Ok(v / 2)
    }

    /// Apply a rotation to every vertex, keeping face loops untouched
    /// (windings stay valid because the rotations are proper).
    pub fn rotated(&self, rot: crate::geom::Rotation) -> Polyhedron {
        Polyhedron {
            vertices: self.vertices.iter().map(|&p| rot.apply(p)).collect(),
            faces: self.faces.clone(),
        }
    }
}
