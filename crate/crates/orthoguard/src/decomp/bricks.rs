//! Maximal-brick extraction.
//!
//! For a 2-reflex orthogonal polyhedron (no vertical reflex edges), every
//! horizontal cross-section is a set of pairwise disjoint rectangles. The
//! extraction sweeps the vertex z-levels bottom to top, assembles the
//! cross-section rectangles of each slab from the vertical walls crossing
//! it, and merges identical rectangles of consecutive slabs into maximal
//! runs. Runs are the bricks; overlaps between a run ending and a run
//! starting at the same level are the contact rectangles.

use super::{Brick, ContactRect, DecompError};
use crate::geom::{Axis, Interval, Point3};
use crate::model::{Adjacency, Convexity, EdgeSet, Polyhedron};
use std::collections::BTreeMap;

struct Wall {
    /// Offset along the wall's fixed axis.
    at: i64,
    /// true when the outward normal points to +axis (the wall bounds the
    /// solid from above in that axis).
    upper_side: bool,
    span: Interval,
}

/// u-intervals of a vertical face polygon cut at a height strictly between
/// `z1` and `z2` (both bounding the slab).
fn face_intervals_at(
    p: &Polyhedron,
    adj: &Adjacency,
    face: usize,
    u_axis: Axis,
    z1: i64,
    z2: i64,
) -> Vec<Interval> {
    let mut crossings: Vec<i64> = Vec::new();
    for rl in &adj.refined[face] {
        for i in 0..rl.len() {
            let a = p.point(rl[i]);
            let b = p.point(rl[(i + 1) % rl.len()]);
            if a.z == b.z {
                continue;
            }
            let (lo, hi) = (a.z.min(b.z), a.z.max(b.z));
            if lo <= z1 && z2 <= hi {
                crossings.push(a.get(u_axis));
            }
        }
    }
    crossings.sort_unstable();
    debug_assert!(crossings.len() % 2 == 0);
    crossings
        .chunks(2)
        .map(|c| Interval::new(c[0], c[1]))
        .collect()
}

fn merge_intervals(mut v: Vec<Interval>) -> Vec<Interval> {
    v.sort_unstable_by_key(|i| (i.lo, i.hi));
    let mut out: Vec<Interval> = Vec::with_capacity(v.len());
    for iv in v {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
            _ => out.push(iv),
        }
    }
    out
}

fn covered(by: &[Interval], target: Interval) -> bool {
    by.iter().any(|i| i.lo <= target.lo && target.hi <= i.hi)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Rect {
    x: (i64, i64),
    y: (i64, i64),
}

/// Assemble the cross-section rectangles of one slab from its walls.
fn assemble_rects(
    x_walls: &[Wall],
    y_walls: &[Wall],
    z1: i64,
) -> Result<Vec<Rect>, DecompError> {
    // Merge collinear wall intervals per (offset, side).
    let mut lefts: BTreeMap<i64, Vec<Interval>> = BTreeMap::new();
    let mut rights: BTreeMap<i64, Vec<Interval>> = BTreeMap::new();
    for w in x_walls {
        let m = if w.upper_side { &mut rights } else { &mut lefts };
        m.entry(w.at).or_default().push(w.span);
    }
    for v in lefts.values_mut().chain(rights.values_mut()) {
        *v = merge_intervals(std::mem::take(v));
    }
    let mut bottoms: BTreeMap<i64, Vec<Interval>> = BTreeMap::new();
    let mut tops: BTreeMap<i64, Vec<Interval>> = BTreeMap::new();
    for w in y_walls {
        let m = if w.upper_side { &mut tops } else { &mut bottoms };
        m.entry(w.at).or_default().push(w.span);
    }
    for v in bottoms.values_mut().chain(tops.values_mut()) {
        *v = merge_intervals(std::mem::take(v));
    }

    let mut rects = Vec::new();
    let mut right_budget: BTreeMap<(i64, Interval2), bool> = BTreeMap::new();
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    struct Interval2 {
        lo: i64,
        hi: i64,
    }
    for (&a, spans) in &lefts {
        for &span in spans {
            // Nearest right wall beyond `a` overlapping this y-span.
            let mut found: Option<(i64, Interval)> = None;
            for (&b, rspans) in rights.range((a + 1)..) {
                if let Some(&rs) = rspans
                    .iter()
                    .find(|rs| rs.overlap(span).is_some())
                {
                    found = Some((b, rs));
                    break;
                }
            }
            let (b, rs) = found.ok_or(DecompError::BrickNotBox {
                at: Point3::new(a, span.lo, z1),
                detail: "left wall without matching right wall".into(),
            })?;
            if rs != span {
                return Err(DecompError::BrickNotBox {
                    at: Point3::new(a, span.lo, z1),
                    detail: format!("wall spans differ: {span:?} vs {rs:?}"),
                });
            }
            // No other left wall may intrude between them.
            for (&c, ls) in lefts.range((a + 1)..b) {
                if ls.iter().any(|l| l.overlap(span).is_some()) {
                    return Err(DecompError::BrickNotBox {
                        at: Point3::new(c, span.lo, z1),
                        detail: "nested left wall inside a cell".into(),
                    });
                }
            }
            let key = (
                b,
                Interval2 {
                    lo: rs.lo,
                    hi: rs.hi,
                },
            );
            if right_budget.insert(key, true).is_some() {
                return Err(DecompError::BrickNotBox {
                    at: Point3::new(b, rs.lo, z1),
                    detail: "right wall matched twice".into(),
                });
            }
            // The bottom and top walls must cover the cell's x-extent.
            let xext = Interval::new(a, b);
            let ok_bottom = bottoms.get(&span.lo).is_some_and(|v| covered(v, xext));
            let ok_top = tops.get(&span.hi).is_some_and(|v| covered(v, xext));
            if !ok_bottom || !ok_top {
                return Err(DecompError::BrickNotBox {
                    at: Point3::new(a, span.lo, z1),
                    detail: "missing horizontal wall of a cell".into(),
                });
            }
            rects.push(Rect {
                x: (a, b),
                y: (span.lo, span.hi),
            });
        }
    }
    let n_rights: usize = rights.values().map(|v| v.len()).sum();
    if right_budget.len() != n_rights {
        return Err(DecompError::BrickNotBox {
            at: Point3::new(0, 0, z1),
            detail: "unmatched right wall".into(),
        });
    }
    rects.sort_unstable();
    Ok(rects)
}

/// Map a contact side onto the reflex edge it must coincide with, if any.
fn reflex_edge_on_side(
    edges: &EdgeSet,
    a: Point3,
    b: Point3,
) -> Option<Result<usize, DecompError>> {
    let axis = a.axis_to(b)?;
    for (i, e) in edges.edges.iter().enumerate() {
        if e.convexity != Convexity::Reflex || e.axis != axis {
            continue;
        }
        if !e.contains_point(a) || !e.contains_point(b) {
            continue;
        }
        let (lo, hi) = e.span();
        let (slo, shi) = (a.get(axis).min(b.get(axis)), a.get(axis).max(b.get(axis)));
        if lo == slo && hi == shi {
            return Some(Ok(i));
        }
        return Some(Err(DecompError::ContactSideMismatch { a, b }));
    }
    None
}

/// Extract maximal bricks and contact rectangles.
///
/// Preconditions: the polyhedron validates and has been normalized so that
/// its reflex edges are horizontal.
pub fn extract_bricks_and_contacts(
    p: &Polyhedron,
    adj: &Adjacency,
    edges: &EdgeSet,
) -> Result<(Vec<Brick>, Vec<ContactRect>), DecompError> {
    let mut zs: Vec<i64> = p.vertices.iter().map(|v| v.z).collect();
    zs.sort_unstable();
    zs.dedup();

    // Vertical faces grouped for the z-sweep, plus horizontal faces per
    // level for the degeneracy check.
    let mut vertical: Vec<(usize, Axis, i64, bool, i64, i64)> = Vec::new(); // face, u_axis, at, upper, zmin, zmax
    let mut horizontal_at: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for f in 0..p.faces.len() {
        let pl = p.face_plane(f).map_err(|e| DecompError::BrickNotBox {
            at: Point3::default(),
            detail: e.to_string(),
        })?;
        if pl.axis == Axis::Z {
            horizontal_at.entry(pl.offset).or_default().push(f);
        } else {
            let (zmin, zmax) = p.faces[f]
                .loops
                .iter()
                .flatten()
                .map(|&vi| p.point(vi).z)
                .fold((i64::MAX, i64::MIN), |(lo, hi), z| (lo.min(z), hi.max(z)));
            let u_axis = pl.axis.horizontal_perp();
            vertical.push((f, u_axis, pl.offset, pl.sign > 0, zmin, zmax));
        }
    }
    vertical.sort_unstable_by_key(|v| v.4);

    let mut bricks: Vec<Brick> = Vec::new();
    let mut contacts: Vec<ContactRect> = Vec::new();
    // Open runs: rect -> brick id (brick's max.z updated as runs extend).
    let mut open: BTreeMap<Rect, usize> = BTreeMap::new();
    let mut active: Vec<usize> = Vec::new(); // indices into `vertical`
    let mut next_vertical = 0usize;

    for w in zs.windows(2) {
        let (z1, z2) = (w[0], w[1]);
        while next_vertical < vertical.len() && vertical[next_vertical].4 <= z1 {
            active.push(next_vertical);
            next_vertical += 1;
        }
        active.retain(|&i| vertical[i].5 >= z2);

        let mut x_walls = Vec::new();
        let mut y_walls = Vec::new();
        for &i in &active {
            let (f, u_axis, at, upper, zmin, zmax) = vertical[i];
            if !(zmin <= z1 && z2 <= zmax) {
                continue;
            }
            for span in face_intervals_at(p, adj, f, u_axis, z1, z2) {
                let wall = Wall {
                    at,
                    upper_side: upper,
                    span,
                };
                if u_axis == Axis::Y {
                    x_walls.push(wall); // wall plane is x = at
                } else {
                    y_walls.push(wall);
                }
            }
        }
        let rects = assemble_rects(&x_walls, &y_walls, z1)?;

        let mut new_open: BTreeMap<Rect, usize> = BTreeMap::new();
        let mut started: Vec<(Rect, usize)> = Vec::new();
        for r in rects {
            if let Some(b) = open.remove(&r) {
                bricks[b].max.z = z2;
                new_open.insert(r, b);
            } else {
                let id = bricks.len();
                bricks.push(Brick {
                    min: Point3::new(r.x.0, r.y.0, z1),
                    max: Point3::new(r.x.1, r.y.1, z2),
                });
                new_open.insert(r, id);
                started.push((r, id));
            }
        }
        // Contacts: runs that ended at z1 against runs that started there.
        for (ended_rect, ended_id) in open.iter() {
            for (started_rect, started_id) in &started {
                let xo = Interval::new(ended_rect.x.0, ended_rect.x.1)
                    .overlap(Interval::new(started_rect.x.0, started_rect.x.1));
                let yo = Interval::new(ended_rect.y.0, ended_rect.y.1)
                    .overlap(Interval::new(started_rect.y.0, started_rect.y.1));
                if let (Some(x), Some(y)) = (xo, yo) {
                    // A boundary face covering the overlap would mean two
                    // solids touching rather than one passing through.
                    if let Some(faces) = horizontal_at.get(&z1) {
                        let cx = x.lo + x.hi;
                        let cy = y.lo + y.hi;
                        for &f in faces {
                            if point_in_face_2x(p, f, cx, cy) {
                                return Err(DecompError::DegenerateContact { z: z1 });
                            }
                        }
                    }
                    contacts.push(ContactRect {
                        z: z1,
                        x,
                        y,
                        lower: *ended_id,
                        upper: *started_id,
                        reflex_edges: Vec::new(),
                    });
                }
            }
        }
        open = new_open;
    }
    debug_assert!(open.is_empty() || !zs.is_empty());

    // Attach bordering reflex edges to each contact.
    for c in contacts.iter_mut() {
        let mut ids = Vec::new();
        for (a, b) in c.sides() {
            match reflex_edge_on_side(edges, a, b) {
                Some(Ok(i)) => ids.push(i),
                Some(Err(e)) => return Err(e),
                None => {}
            }
        }
        ids.sort_unstable();
        ids.dedup();
        if ids.is_empty() {
            return Err(DecompError::ContactSideMismatch {
                a: Point3::new(c.x.lo, c.y.lo, c.z),
                b: Point3::new(c.x.hi, c.y.hi, c.z),
            });
        }
        c.reflex_edges = ids;
    }
    contacts.sort_by_key(|c| (c.z, c.x.lo, c.y.lo, c.lower, c.upper));

    Ok((bricks, contacts))
}

/// Point-in-face test with doubled coordinates (the query point may sit at
/// half-integer positions).
fn point_in_face_2x(p: &Polyhedron, face: usize, cx2: i64, cy2: i64) -> bool {
    let mut inside = false;
    for lp in &p.faces[face].loops {
        for i in 0..lp.len() {
            let a = p.point(lp[i]);
            let b = p.point(lp[(i + 1) % lp.len()]);
            let (x1, y1, y2) = (2 * a.x, 2 * a.y, 2 * b.y);
            if y1 == y2 {
                continue;
            }
            let (ylo, yhi) = (y1.min(y2), y1.max(y2));
            if ylo <= cy2 && cy2 < yhi && x1 > cx2 {
                inside = !inside;
            }
        }
    }
    inside
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::model::{classify_edges, Adjacency};

    fn decompose_counts(p: &Polyhedron) -> (usize, usize) {
        let adj = Adjacency::build(p).unwrap();
        let es = classify_edges(p, &adj).unwrap();
        let (bricks, contacts) = extract_bricks_and_contacts(p, &adj, &es).unwrap();
        (bricks.len(), contacts.len())
    }

    #[test]
    fn single_cube_one_brick_no_contacts() {
        let p = gen::gen_cuboid(2, 3, 4);
        assert_eq!(decompose_counts(&p), (1, 0));
    }

    #[test]
    fn figure2_two_bricks_one_contact() {
        let p = gen::gen_figure2();
        let adj = Adjacency::build(&p).unwrap();
        let es = classify_edges(&p, &adj).unwrap();
        let (bricks, contacts) = extract_bricks_and_contacts(&p, &adj, &es).unwrap();
        assert_eq!(bricks.len(), 2);
        assert_eq!(contacts.len(), 1);
        assert_eq!(contacts[0].reflex_edges.len(), 2);
    }

    #[test]
    fn ring_four_bricks_four_contacts() {
        let p = gen::gen_ring(3, 1);
        assert_eq!(decompose_counts(&p), (4, 4));
    }

    #[test]
    fn comb_bricks() {
        let p = gen::gen_comb(3);
        // Spine plus three teeth.
        assert_eq!(decompose_counts(&p), (4, 3));
    }

    #[test]
    fn volume_is_conserved() {
        for seed in [3u64, 11, 29] {
            let p = gen::gen_stack(seed, 12);
            let adj = Adjacency::build(&p).unwrap();
            let es = classify_edges(&p, &adj).unwrap();
            let (bricks, _) = extract_bricks_and_contacts(&p, &adj, &es).unwrap();
            let total: i64 = bricks.iter().map(|b| b.volume()).sum();
            assert_eq!(total, p.volume().unwrap(), "seed {seed}");
        }
    }
}
