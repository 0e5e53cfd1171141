//! Maximal boundary edges with convex/reflex labels, orientation
//! normalization and Euler genus.

use super::{Adjacency, FacePlane, ModelError, Polyhedron};
use crate::geom::{Axis, Point3, Rotation};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Convexity {
    Convex,
    Reflex,
}

/// A maximal straight boundary edge: collinear consecutive segments are
/// merged while both incident oriented face planes stay the same.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: Point3,
    pub b: Point3,
    pub axis: Axis,
    pub convexity: Convexity,
}

impl Edge {
    pub fn span(&self) -> (i64, i64) {
        let (p, q) = (self.a.get(self.axis), self.b.get(self.axis));
        (p.min(q), p.max(q))
    }

    /// Does `p` lie on the closed edge?
    pub fn contains_point(&self, p: Point3) -> bool {
        let (ua, va) = self.axis.others();
        if p.get(ua) != self.a.get(ua) || p.get(va) != self.a.get(va) {
            return false;
        }
        let (lo, hi) = self.span();
        lo <= p.get(self.axis) && p.get(self.axis) <= hi
    }

    /// Sort key used by every tie-break rule in the pipeline.
    pub fn lex_key(&self) -> (Point3, Point3) {
        let (mut a, mut b) = (self.a, self.b);
        if b < a {
            std::mem::swap(&mut a, &mut b);
        }
        (a, b)
    }
}

#[derive(Clone, Debug, Default)]
pub struct EdgeSet {
    pub edges: Vec<Edge>,
    /// Axis directions that carry at least one reflex edge.
    pub reflex_axes: BTreeSet<Axis>,
}

impl EdgeSet {
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn r(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.convexity == Convexity::Reflex)
            .count()
    }

    pub fn reflex_edges(&self) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.convexity == Convexity::Reflex)
    }

    /// Reflex edges whose line passes through `p` (endpoint included).
    pub fn reflex_edges_through(&self, p: Point3) -> Vec<usize> {
        self.reflex_edges()
            .filter(|(_, e)| e.contains_point(p))
            .map(|(i, _)| i)
            .collect()
    }
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Convexity of a boundary edge from the two incident faces.
///
/// `d1` is the traversal direction of the segment on face 1 (whose loop runs
/// CCW w.r.t. its outward normal `n1`); the in-plane inward normal of face 1
/// at the edge is `u1 = n1 x d1`. The edge is convex when `u1 == -n2`,
/// reflex when `u1 == n2`.
fn convexity_from(n1: [i64; 3], d1: [i64; 3], n2: [i64; 3]) -> Option<Convexity> {
    let u1 = cross(n1, d1);
    let norm = |v: [i64; 3]| {
        let m = v.iter().map(|c| c.abs()).max().unwrap();
        if m == 0 {
            v
        } else {
            [v[0] / m, v[1] / m, v[2] / m]
        }
    };
    let u1 = norm(u1);
    let n2n = norm(n2);
    if u1 == [-n2n[0], -n2n[1], -n2n[2]] {
        Some(Convexity::Convex)
    } else if u1 == n2n {
        Some(Convexity::Reflex)
    } else {
        None
    }
}

/// Extract the maximal-edge set with convex/reflex labels.
///
/// Flat segments (both incident oriented planes identical, a 180 degree
/// dihedral) are seams between coplanar faces and are not edges at all.
pub fn classify_edges(p: &Polyhedron, adj: &Adjacency) -> Result<EdgeSet, ModelError> {
    let planes: Vec<FacePlane> = (0..p.faces.len())
        .map(|f| p.face_plane(f))
        .collect::<Result<_, _>>()?;

    // Undirected segment pieces grouped by their supporting line.
    // Line key: (axis, fixed coord 1, fixed coord 2).
    #[derive(Clone, Copy)]
    struct Piece {
        lo: i64,
        hi: i64,
        planes: [(Axis, i64, i8); 2],
        convexity: Convexity,
    }
    let mut lines: BTreeMap<(Axis, i64, i64), Vec<Piece>> = BTreeMap::new();

    let mut seen: BTreeSet<(u32, u32)> = BTreeSet::new();
    for (&(a, b), owner) in adj.segments() {
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            continue;
        }
        let twin = adj.twin(a, b).ok_or(ModelError::NonManifold {
            a: p.point(a),
            b: p.point(b),
            count: 1,
        })?;
        let f1 = owner.face as usize;
        let f2 = twin.face as usize;
        let pl1 = planes[f1];
        let pl2 = planes[f2];
        let op1 = (pl1.axis, pl1.offset, pl1.sign);
        let op2 = (pl2.axis, pl2.offset, pl2.sign);
        if op1 == op2 {
            continue; // flat seam between coplanar faces
        }
        let pa = p.point(a);
        let pb = p.point(b);
        let axis = pa.axis_to(pb).ok_or(ModelError::DegenerateLoop {
            face: f1,
            band: owner.band as usize,
        })?;
        let n1 = {
            let mut v = [0i64; 3];
            v[pl1.axis.index()] = pl1.sign as i64;
            v
        };
        let n2 = {
            let mut v = [0i64; 3];
            v[pl2.axis.index()] = pl2.sign as i64;
            v
        };
        let d1 = (pb - pa).to_array();
        let convexity = convexity_from(n1, d1, n2).ok_or(ModelError::NonManifold {
            a: pa,
            b: pb,
            count: 2,
        })?;
        let (ua, va) = axis.others();
        let lk = (axis, pa.get(ua), pa.get(va));
        let (lo, hi) = (
            pa.get(axis).min(pb.get(axis)),
            pa.get(axis).max(pb.get(axis)),
        );
        let mut pls = [op1, op2];
        pls.sort_unstable();
        lines.entry(lk).or_default().push(Piece {
            lo,
            hi,
            planes: pls,
            convexity,
        });
    }

    let mut edges = Vec::new();
    let mut reflex_axes = BTreeSet::new();
    for ((axis, u, v), mut pieces) in lines {
        pieces.sort_unstable_by_key(|pc| pc.lo);
        let mut i = 0;
        while i < pieces.len() {
            let mut hi = pieces[i].hi;
            let planes = pieces[i].planes;
            let convexity = pieces[i].convexity;
            let mut j = i + 1;
            while j < pieces.len() && pieces[j].lo == hi && pieces[j].planes == planes {
                hi = pieces[j].hi;
                j += 1;
            }
            let (ua, va) = axis.others();
            let a = Point3::default()
                .with(axis, pieces[i].lo)
                .with(ua, u)
                .with(va, v);
            let b = Point3::default().with(axis, hi).with(ua, u).with(va, v);
            if convexity == Convexity::Reflex {
                reflex_axes.insert(axis);
            }
            edges.push(Edge {
                a,
                b,
                axis,
                convexity,
            });
            i = j;
        }
    }
    edges.sort_by_key(|e| e.lex_key());

    Ok(EdgeSet { edges, reflex_axes })
}

/// Rotate the polyhedron so that no reflex edge is vertical.
///
/// Returns the rotated polyhedron and the applied rotation tag (identity
/// when the input already has reflex edges only along X and/or Y).
pub fn normalize_orientation(
    p: &Polyhedron,
    e: &EdgeSet,
) -> Result<(Polyhedron, Rotation), ModelError> {
    let has = |a: Axis| e.reflex_axes.contains(&a);
    let rot = if !has(Axis::Z) {
        Rotation::Identity
    } else if has(Axis::X) && has(Axis::Y) {
        return Err(ModelError::ThreeReflexDirections);
    } else if has(Axis::Y) {
        // Y -> X, Z -> Y
        Rotation::YzxToXyz
    } else {
        // Z -> X (and X -> Y when present)
        Rotation::ZxyToXyz
    };
    Ok((p.rotated(rot), rot))
}

/// Genus from the Euler characteristic of the refined boundary complex:
/// `chi = V - E + sum over faces of (1 - holes)`, `g = (2 - chi) / 2`.
///
/// Computing on the refined complex makes the value independent of how the
/// input splits coplanar faces; on canonical inputs it coincides with the
/// merged maximal-vertex/edge count the formula is usually stated with.
pub fn euler_genus(p: &Polyhedron, adj: &Adjacency) -> Result<u32, ModelError> {
    let mut verts: BTreeSet<u32> = BTreeSet::new();
    let mut segs: BTreeSet<(u32, u32)> = BTreeSet::new();
    for rloops in &adj.refined {
        for rl in rloops {
            for w in 0..rl.len() {
                let a = rl[w];
                let b = rl[(w + 1) % rl.len()];
                verts.insert(a);
                segs.insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut face_term = 0i64;
    for f in &p.faces {
        face_term += 1 - (f.loops.len() as i64 - 1);
    }
    let chi = verts.len() as i64 - segs.len() as i64 + face_term;
    if (2 - chi) % 2 != 0 || chi > 2 {
        return Err(ModelError::BadGenus { chi });
    }
    Ok(((2 - chi) / 2) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_polyhedron;
    use crate::testutil::CUBE;

    fn cube() -> (Polyhedron, Adjacency) {
        let p = parse_polyhedron(CUBE).unwrap();
        let adj = Adjacency::build(&p).unwrap();
        (p, adj)
    }

    #[test]
    fn cube_edges() {
        let (p, adj) = cube();
        let es = classify_edges(&p, &adj).unwrap();
        assert_eq!(es.m(), 12);
        assert_eq!(es.r(), 0);
        assert!(es.reflex_axes.is_empty());
    }

    #[test]
    fn cube_genus_zero() {
        let (p, adj) = cube();
        assert_eq!(euler_genus(&p, &adj).unwrap(), 0);
    }

    #[test]
    fn identity_when_no_vertical_reflex() {
        let (p, adj) = cube();
        let es = classify_edges(&p, &adj).unwrap();
        let (_, rot) = normalize_orientation(&p, &es).unwrap();
        assert_eq!(rot, Rotation::Identity);
    }
}
