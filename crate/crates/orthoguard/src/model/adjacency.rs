//! Adjacency tables over the refined boundary complex.
//!
//! Loops are refined by inserting every polyhedron vertex that lies in the
//! interior of a loop edge (the degenerate vertices), so that each directed
//! segment is shared with exactly one twin segment on the neighboring face.

use super::{ModelError, Polyhedron};
use crate::geom::Axis;
use std::collections::BTreeMap;

/// Where a directed segment lives: face, loop, and position within the
/// refined loop (segment goes from position `pos` to `pos + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegRef {
    pub face: u32,
    pub band: u32,
    pub pos: u32,
}

#[derive(Clone, Debug, Default)]
pub struct Adjacency {
    /// Per face, per loop: vertex indices with degenerate vertices inserted.
    pub refined: Vec<Vec<Vec<u32>>>,
    /// Directed segment (from, to) -> owner.
    pub seg_owner: BTreeMap<(u32, u32), SegRef>,
    /// Vertex -> incident faces (sorted, deduplicated).
    pub vertex_faces: Vec<Vec<u32>>,
}

impl Adjacency {
    /// Build the refined complex. Requires a polyhedron that passes
    /// validation; returns `NonManifold` when a directed segment repeats.
    pub fn build(p: &Polyhedron) -> Result<Adjacency, ModelError> {
        // Index vertices by the line they could refine: for each axis, key
        // on the two fixed coordinates.
        let mut on_line: [BTreeMap<(i64, i64), Vec<(i64, u32)>>; 3] = Default::default();
        for (i, &pt) in p.vertices.iter().enumerate() {
            for a in Axis::ALL {
                let (ua, va) = a.others();
                on_line[a.index()]
                    .entry((pt.get(ua), pt.get(va)))
                    .or_default()
                    .push((pt.get(a), i as u32));
            }
        }
        for m in on_line.iter_mut() {
            for v in m.values_mut() {
                v.sort_unstable();
            }
        }

        let mut refined = Vec::with_capacity(p.faces.len());
        let mut seg_owner = BTreeMap::new();
        let mut vertex_faces: Vec<Vec<u32>> = vec![Vec::new(); p.n()];

        for (fi, face) in p.faces.iter().enumerate() {
            let mut rloops = Vec::with_capacity(face.loops.len());
            for (li, lp) in face.loops.iter().enumerate() {
                let mut rl: Vec<u32> = Vec::with_capacity(lp.len());
                for i in 0..lp.len() {
                    let a = lp[i];
                    let b = lp[(i + 1) % lp.len()];
                    rl.push(a);
                    let pa = p.point(a);
                    let pb = p.point(b);
                    let Some(axis) = pa.axis_to(pb) else {
                        // Zero-length or diagonal edges are reported by
                        // validation; skip refinement here.
                        continue;
                    };
                    let (ua, va) = axis.others();
                    let key = (pa.get(ua), pa.get(va));
                    if let Some(cands) = on_line[axis.index()].get(&key) {
                        let (lo, hi) = (pa.get(axis).min(pb.get(axis)), pa.get(axis).max(pb.get(axis)));
                        let mut mids: Vec<(i64, u32)> = cands
                            .iter()
                            .copied()
                            .filter(|&(c, vi)| c > lo && c < hi && vi != a && vi != b)
                            .collect();
                        if pa.get(axis) > pb.get(axis) {
                            mids.reverse();
                        }
                        rl.extend(mids.into_iter().map(|(_, vi)| vi));
                    }
                }
                for w in 0..rl.len() {
                    let from = rl[w];
                    let to = rl[(w + 1) % rl.len()];
                    let owner = SegRef {
                        face: fi as u32,
                        band: li as u32,
                        pos: w as u32,
                    };
                    if seg_owner.insert((from, to), owner).is_some() {
                        return Err(ModelError::NonManifold {
                            a: p.point(from),
                            b: p.point(to),
                            count: 3,
                        });
                    }
                    vertex_faces[from as usize].push(fi as u32);
                }
                rloops.push(rl);
            }
            refined.push(rloops);
        }

        for fs in vertex_faces.iter_mut() {
            fs.sort_unstable();
            fs.dedup();
        }

        Ok(Adjacency {
            refined,
            seg_owner,
            vertex_faces,
        })
    }

    /// Twin of a directed segment: the same segment traversed the opposite
    /// way on the neighboring face.
    pub fn twin(&self, from: u32, to: u32) -> Option<SegRef> {
        self.seg_owner.get(&(to, from)).copied()
    }

    /// Every directed segment together with its owner.
    pub fn segments(&self) -> impl Iterator<Item = (&(u32, u32), &SegRef)> {
        self.seg_owner.iter()
    }

    /// Number of directed segments.
    pub fn segment_count(&self) -> usize {
        self.seg_owner.len()
    }

    /// Check the twin involution: every directed segment has a reverse on a
    /// different (face, loop) location, with no fixed points.
    pub fn twin_involution_ok(&self) -> bool {
        self.seg_owner.iter().all(|(&(a, b), owner)| {
            a != b
                && self
                    .twin(a, b)
                    .map(|t| t != *owner)
                    .unwrap_or(false)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_polyhedron;

    #[test]
    fn cube_has_24_segments_12_twin_pairs() {
        let p = parse_polyhedron(crate::testutil::CUBE).unwrap();
        let adj = Adjacency::build(&p).unwrap();
        assert_eq!(adj.segment_count(), 24);
        assert!(adj.twin_involution_ok());
        let undirected: std::collections::BTreeSet<(u32, u32)> = adj
            .seg_owner
            .keys()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        assert_eq!(undirected.len(), 12);
        assert!(adj.vertex_faces.iter().all(|fs| fs.len() == 3));
    }
}
