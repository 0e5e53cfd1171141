//! Boundary representation of a union of bricks.
//!
//! Emits one face per exposed brick-face component. Horizontal brick faces
//! lose their contact rectangles; what remains is traced into loops (with
//! holes for collar-style contacts). Coplanar faces of different bricks are
//! left split; the flat seams between them are legal input.

use crate::geom::{Axis, Point3};
use crate::model::{Face, Polyhedron};
use std::collections::BTreeMap;

/// Axis-aligned box with integer corners, `min < max` componentwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BrickBox {
    pub min: Point3,
    pub max: Point3,
}

impl BrickBox {
    pub fn new(min: Point3, max: Point3) -> Self {
        assert!(
            min.x < max.x && min.y < max.y && min.z < max.z,
            "degenerate brick {min:?}..{max:?}"
        );
        BrickBox { min, max }
    }

    pub fn extent(&self, a: Axis) -> i64 {
        self.max.get(a) - self.min.get(a)
    }

    pub fn range(&self, a: Axis) -> (i64, i64) {
        (self.min.get(a), self.max.get(a))
    }

    /// Closed-box intersection, possibly flat.
    fn closed_intersection(&self, o: &BrickBox) -> Option<BrickBox2> {
        let mut lo = [0i64; 3];
        let mut hi = [0i64; 3];
        for a in Axis::ALL {
            lo[a.index()] = self.min.get(a).max(o.min.get(a));
            hi[a.index()] = self.max.get(a).min(o.max.get(a));
            if lo[a.index()] > hi[a.index()] {
                return None;
            }
        }
        Some(BrickBox2 { lo, hi })
    }
}

struct BrickBox2 {
    lo: [i64; 3],
    hi: [i64; 3],
}

/// 2D rectangle in a face plane, in canonical (u, v) coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Rect2 {
    u0: i64,
    u1: i64,
    v0: i64,
    v1: i64,
}

/// Relationship of two bricks: how contact validation classifies the pair.
enum Touch {
    Disjoint,
    /// Horizontal contact rectangle with positive area at plane z.
    Contact,
}

fn check_pair(a: &BrickBox, b: &BrickBox) -> Touch {
    match a.closed_intersection(b) {
        None => Touch::Disjoint,
        Some(ib) => {
            let flat_z = ib.lo[2] == ib.hi[2];
            let area_pos = ib.lo[0] < ib.hi[0] && ib.lo[1] < ib.hi[1];
            if flat_z && area_pos && (a.max.z == b.min.z || b.max.z == a.min.z) {
                Touch::Contact
            } else if ib.lo[0] < ib.hi[0] || ib.lo[1] < ib.hi[1] || ib.lo[2] < ib.hi[2] {
                panic!("bricks touch improperly: {a:?} vs {b:?}");
            } else {
                panic!("bricks touch at a corner: {a:?} vs {b:?}");
            }
        }
    }
}

/// Trace the region `outer minus cutouts` into oriented loops.
///
/// Returns (loop, is_outer) pairs in canonical (u, v) coordinates, outer
/// loops counterclockwise, holes clockwise, grouped per connected component
/// in emission order.
fn trace_region(outer: Rect2, cutouts: &[Rect2]) -> Vec<Vec<(Vec<(i64, i64)>, bool)>> {
    let mut us = vec![outer.u0, outer.u1];
    let mut vs = vec![outer.v0, outer.v1];
    for c in cutouts {
        us.extend([c.u0, c.u1]);
        vs.extend([c.v0, c.v1]);
    }
    us.sort_unstable();
    us.dedup();
    vs.sort_unstable();
    vs.dedup();
    us.retain(|&u| outer.u0 <= u && u <= outer.u1);
    vs.retain(|&v| outer.v0 <= v && v <= outer.v1);

    let nu = us.len() - 1;
    let nv = vs.len() - 1;
    let solid = |i: usize, j: usize| -> bool {
        let (u, v) = (us[i], vs[j]);
        let inside_cut = cutouts
            .iter()
            .any(|c| c.u0 <= u && us[i + 1] <= c.u1 && c.v0 <= v && vs[j + 1] <= c.v1);
        !inside_cut
    };

    // Directed boundary edges with solid on the left.
    let mut edges: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
    let mut add = |from: (i64, i64), to: (i64, i64)| {
        let prev = edges.insert(from, to);
        assert!(prev.is_none(), "pinched region at {from:?}");
    };
    for j in 0..nv {
        for i in 0..nu {
            if !solid(i, j) {
                continue;
            }
            let (u0, u1, v0, v1) = (us[i], us[i + 1], vs[j], vs[j + 1]);
            if j == 0 || !solid(i, j - 1) {
                add((u0, v0), (u1, v0)); // bottom, heading +u
            }
            if j + 1 == nv || !solid(i, j + 1) {
                add((u1, v1), (u0, v1)); // top, heading -u
            }
            if i == 0 || !solid(i - 1, j) {
                add((u0, v1), (u0, v0)); // left, heading -v
            }
            if i + 1 == nu || !solid(i + 1, j) {
                add((u1, v0), (u1, v1)); // right, heading +v
            }
        }
    }

    let mut loops: Vec<(Vec<(i64, i64)>, bool)> = Vec::new();
    while let Some((&start, _)) = edges.iter().next() {
        let mut lp = vec![start];
        let mut cur = start;
        loop {
            let next = edges.remove(&cur).expect("open boundary chain");
            if next == start {
                break;
            }
            lp.push(next);
            cur = next;
        }
        // Merge collinear runs.
        let mut simplified: Vec<(i64, i64)> = Vec::with_capacity(lp.len());
        let k = lp.len();
        for i in 0..k {
            let prev = lp[(i + k - 1) % k];
            let here = lp[i];
            let next = lp[(i + 1) % k];
            let collinear = (prev.0 == here.0 && here.0 == next.0)
                || (prev.1 == here.1 && here.1 == next.1);
            if !collinear {
                simplified.push(here);
            }
        }
        let area2: i64 = (0..simplified.len())
            .map(|i| {
                let (u1, v1) = simplified[i];
                let (u2, v2) = simplified[(i + 1) % simplified.len()];
                u1 * v2 - u2 * v1
            })
            .sum();
        loops.push((simplified, area2 > 0));
    }

    // Group holes under the outer loop that contains them.
    let point_in = |pt: (i64, i64), lp: &[(i64, i64)]| -> bool {
        // Parity of crossings of a ray heading +u, with pt never on the
        // boundary (hole corners are strictly inside their outer loop).
        let mut inside = false;
        for i in 0..lp.len() {
            let (u1, v1) = lp[i];
            let (_, v2) = lp[(i + 1) % lp.len()];
            if v1 == v2 {
                continue;
            }
            let (vlo, vhi) = (v1.min(v2), v1.max(v2));
            if vlo <= pt.1 && pt.1 < vhi && u1 > pt.0 {
                inside = !inside;
            }
        }
        inside
    };
    let outers: Vec<usize> = (0..loops.len()).filter(|&i| loops[i].1).collect();
    let mut groups: Vec<Vec<(Vec<(i64, i64)>, bool)>> = Vec::new();
    let mut hole_of: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, (lp, is_outer)) in loops.iter().enumerate() {
        if *is_outer {
            continue;
        }
        let owner = outers
            .iter()
            .copied()
            .filter(|&o| point_in(lp[0], &loops[o].0))
            .min_by_key(|&o| loops[o].0.iter().map(|p| p.0).max())
            .expect("hole without containing outer loop");
        hole_of.insert(i, owner);
    }
    for &o in &outers {
        let mut g = vec![loops[o].clone()];
        for (&h, &owner) in &hole_of {
            if owner == o {
                g.push(loops[h].clone());
            }
        }
        groups.push(g);
    }
    groups
}

struct VertexPool {
    index: BTreeMap<Point3, u32>,
}

impl VertexPool {
    fn intern(&mut self, p: Point3) -> u32 {
        let next = self.index.len() as u32;
        *self.index.entry(p).or_insert(next)
    }

    fn into_vertices(self) -> Vec<Point3> {
        let mut v = vec![Point3::default(); self.index.len()];
        for (p, i) in self.index {
            v[i as usize] = p;
        }
        v
    }
}

/// Build the boundary representation of the union of `bricks`.
///
/// Panics when the bricks do not form a valid 2-reflex arrangement (overlap,
/// vertical touching, or zero-area contact).
pub fn emit_from_bricks(bricks: &[BrickBox]) -> Polyhedron {
    assert!(!bricks.is_empty());
    for i in 0..bricks.len() {
        for j in (i + 1)..bricks.len() {
            let _ = check_pair(&bricks[i], &bricks[j]);
        }
    }

    let mut pool = VertexPool {
        index: BTreeMap::new(),
    };
    let mut faces: Vec<(Vec<Vec<Point3>>,)> = Vec::new();

    for (bi, b) in bricks.iter().enumerate() {
        // Horizontal faces: subtract contacts.
        for (top, z) in [(true, b.max.z), (false, b.min.z)] {
            let mut cuts = Vec::new();
            for (oi, o) in bricks.iter().enumerate() {
                if oi == bi {
                    continue;
                }
                let touching = if top { o.min.z == z } else { o.max.z == z };
                if !touching {
                    continue;
                }
                let u0 = b.min.x.max(o.min.x);
                let u1 = b.max.x.min(o.max.x);
                let v0 = b.min.y.max(o.min.y);
                let v1 = b.max.y.min(o.max.y);
                if u0 < u1 && v0 < v1 {
                    cuts.push(Rect2 { u0, u1, v0, v1 });
                }
            }
            for c1 in 0..cuts.len() {
                for c2 in (c1 + 1)..cuts.len() {
                    let a = cuts[c1];
                    let b2 = cuts[c2];
                    let sep = a.u1 < b2.u0 || b2.u1 < a.u0 || a.v1 < b2.v0 || b2.v1 < a.v0;
                    assert!(sep, "contacts touch on one brick face");
                }
            }
            let outer = Rect2 {
                u0: b.min.x,
                u1: b.max.x,
                v0: b.min.y,
                v1: b.max.y,
            };
            for group in trace_region(outer, &cuts) {
                let mut loops3 = Vec::new();
                for (lp, _outer) in group {
                    let mut l3: Vec<Point3> =
                        lp.into_iter().map(|(u, v)| Point3::new(u, v, z)).collect();
                    if !top {
                        l3.reverse(); // outward -Z needs CW in (x, y)
                    }
                    loops3.push(l3);
                }
                faces.push((loops3,));
            }
        }
        // Vertical faces: always whole rectangles.
        for (axis, hi) in [(Axis::X, false), (Axis::X, true), (Axis::Y, false), (Axis::Y, true)] {
            let off = if hi { b.max.get(axis) } else { b.min.get(axis) };
            let (ua, va) = axis.others();
            let (u0, u1) = b.range(ua);
            let (v0, v1) = b.range(va);
            // CCW w.r.t. +axis in canonical (u, v).
            let mut lp = vec![(u0, v0), (u1, v0), (u1, v1), (u0, v1)];
            if !hi {
                lp.reverse();
            }
            let l3: Vec<Point3> = lp
                .into_iter()
                .map(|(u, v)| Point3::default().with(axis, off).with(ua, u).with(va, v))
                .collect();
            faces.push((vec![l3],));
        }
    }

    let mut out_faces = Vec::with_capacity(faces.len());
    for (loops3,) in faces {
        let loops = loops3
            .into_iter()
            .map(|lp| lp.into_iter().map(|p| pool.intern(p)).collect())
            .collect();
        out_faces.push(Face { loops });
    }
    Polyhedron {
        vertices: pool.into_vertices(),
        faces: out_faces,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{classify_edges, validate, Adjacency};

    #[test]
    fn single_brick_is_a_valid_cube() {
        let p = emit_from_bricks(&[BrickBox::new(Point3::new(0, 0, 0), Point3::new(2, 3, 4))]);
        let rep = validate(&p);
        assert!(rep.ok(), "{:?}", rep.violations);
        let adj = Adjacency::build(&p).unwrap();
        let es = classify_edges(&p, &adj).unwrap();
        assert_eq!(es.m(), 12);
        assert_eq!(es.r(), 0);
    }

    #[test]
    fn collar_face_has_a_hole() {
        // Small brick centered on a big one: the big top face is an annulus.
        let p = emit_from_bricks(&[
            BrickBox::new(Point3::new(0, 0, 0), Point3::new(4, 4, 1)),
            BrickBox::new(Point3::new(1, 1, 1), Point3::new(3, 3, 2)),
        ]);
        let rep = validate(&p);
        assert!(rep.ok(), "{:?}", rep.violations);
        assert!(p.faces.iter().any(|f| f.loops.len() == 2));
        let adj = Adjacency::build(&p).unwrap();
        let es = classify_edges(&p, &adj).unwrap();
        assert_eq!(es.r(), 4);
    }

    #[test]
    #[should_panic(expected = "touch improperly")]
    fn vertical_touching_is_rejected() {
        let _ = emit_from_bricks(&[
            BrickBox::new(Point3::new(0, 0, 0), Point3::new(1, 1, 1)),
            BrickBox::new(Point3::new(1, 0, 0), Point3::new(2, 1, 1)),
        ]);
    }
}
