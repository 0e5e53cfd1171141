//! Deterministic and seeded instance generators for every structural family
//! the guarding pipeline reasons about. Identical parameters always produce
//! byte-identical documents.

mod emit;

pub use emit::{emit_from_bricks, BrickBox};

use crate::geom::{Axis, Point3};
use crate::model::{Face, Polyhedron};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("polygon is self-intersecting or degenerate: {0}")]
    BadPolygon(String),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

/// SplitMix64, the documented PRNG for all seeded generators. The stream is
/// fixed by the algorithm, so identical seeds reproduce identical instances
/// on every platform.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, n)` via rejection-free modulo (bias is
    /// irrelevant for test-instance generation but determinism matters).
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    /// Uniform value in `[lo, hi]`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

/// Axis-aligned box.
pub fn gen_cuboid(sx: i64, sy: i64, sz: i64) -> Polyhedron {
    emit_from_bricks(&[BrickBox::new(Point3::new(0, 0, 0), Point3::new(sx, sy, sz))])
}

/// Extrude a simple orthogonal polygon, given counterclockwise in the
/// (x, z) plane, along the y axis. Reflex edges end up exactly at the
/// polygon's reflex vertices, all parallel to y.
pub fn gen_extrude(polygon: &[(i64, i64)], depth: i64) -> Result<Polyhedron, GenError> {
    if depth < 1 {
        return Err(GenError::BadParameter("depth must be >= 1".into()));
    }
    let k = polygon.len();
    if k < 4 || k % 2 != 0 {
        return Err(GenError::BadPolygon(format!("vertex count {k}")));
    }
    // Axis-parallel, alternating, CCW, simple.
    let mut area2 = 0i64;
    for i in 0..k {
        let (x1, z1) = polygon[i];
        let (x2, z2) = polygon[(i + 1) % k];
        let dx = x2 - x1;
        let dz = z2 - z1;
        if (dx == 0) == (dz == 0) {
            return Err(GenError::BadPolygon(format!(
                "edge {i} not axis-parallel or zero-length"
            )));
        }
        let (x3, _) = polygon[(i + 2) % k];
        if (dx == 0) == (x3 - x2 == 0) {
            return Err(GenError::BadPolygon(format!("edges {i},{} collinear", i + 1)));
        }
        area2 += x1 * z2 - x2 * z1;
    }
    if area2 <= 0 {
        return Err(GenError::BadPolygon("polygon must be counterclockwise".into()));
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if j == i || (j + 1) % k == i || (i + 1) % k == j {
                continue;
            }
            let (a1, a2) = (polygon[i], polygon[(i + 1) % k]);
            let (b1, b2) = (polygon[j], polygon[(j + 1) % k]);
            let (ax0, ax1) = (a1.0.min(a2.0), a1.0.max(a2.0));
            let (az0, az1) = (a1.1.min(a2.1), a1.1.max(a2.1));
            let (bx0, bx1) = (b1.0.min(b2.0), b1.0.max(b2.0));
            let (bz0, bz1) = (b1.1.min(b2.1), b1.1.max(b2.1));
            if ax0 <= bx1 && bx0 <= ax1 && az0 <= bz1 && bz0 <= az1 {
                return Err(GenError::BadPolygon(format!(
                    "edges {i} and {j} intersect"
                )));
            }
        }
    }

    let mut vertices = Vec::with_capacity(2 * k);
    for &(x, z) in polygon {
        vertices.push(Point3::new(x, 0, z));
    }
    for &(x, z) in polygon {
        vertices.push(Point3::new(x, depth, z));
    }
    let mut faces = Vec::with_capacity(k + 2);
    // y = 0 face: polygon order is CW in the canonical (z, x) frame,
    // matching the outward -Y normal.
    faces.push(Face {
        loops: vec![(0..k as u32).collect()],
    });
    faces.push(Face {
        loops: vec![(0..k as u32).rev().map(|i| i + k as u32).collect()],
    });
    for i in 0..k as u32 {
        let j = (i + 1) % k as u32;
        faces.push(Face {
            loops: vec![vec![i, i + k as u32, j + k as u32, j]],
        });
    }
    Ok(Polyhedron { vertices, faces })
}

/// Comb prism: spine `[0, 2k-1] x [0, 1]` with teeth `[2i, 2i+1] x [1, 2]`
/// in the (x, z) cross-section, extruded one unit along y. Lower-bound
/// witness family: r = 2k - 2 and the k tooth apexes are pairwise
/// non-coverable by one reflex edge guard.
pub fn gen_comb(k: i64) -> Polyhedron {
    assert!(k >= 2, "comb needs at least two teeth");
    // Walk the top from right to left; tooth k-1 is flush with the spine end.
    let mut poly: Vec<(i64, i64)> = vec![(0, 0), (2 * k - 1, 0), (2 * k - 1, 2)];
    for i in (1..k).rev() {
        poly.push((2 * i, 2));
        poly.push((2 * i, 1));
        poly.push((2 * i - 1, 1));
        poly.push((2 * i - 1, 2));
    }
    poly.push((0, 2));
    gen_extrude(&poly, 1).expect("comb polygon is always valid")
}

/// Seeded stack: every contact is primitive. Bricks are attached one at a
/// time, either as an end slab flush on three sides (the parent keeps going
/// past it) or as an overhang covering the whole parent face and extending
/// past one side.
pub fn gen_stack(seed: u64, n_bricks: usize) -> Polyhedron {
    emit_from_bricks(&stack_bricks(seed, n_bricks))
}

#[derive(Clone, Copy, PartialEq, Eq)]
struct FaceSlots {
    /// Slab children already attached: axis and ends used.
    used: [bool; 2], // lo, hi ends along `axis`
    axis: Option<Axis>,
    full: bool,
}

impl FaceSlots {
    fn empty() -> Self {
        FaceSlots {
            used: [false, false],
            axis: None,
            full: false,
        }
    }
}

pub(crate) fn stack_bricks(seed: u64, n_bricks: usize) -> Vec<BrickBox> {
    assert!(n_bricks >= 1);
    let mut rng = SplitMix64::new(seed ^ 0x5741_434b); // family tag
    let mut bricks = vec![BrickBox::new(Point3::new(0, 0, 0), Point3::new(8, 8, 2))];
    let mut tops = vec![FaceSlots::empty()];
    let mut bots = vec![FaceSlots::empty()];

    while bricks.len() < n_bricks {
        let mut placed = false;
        for _attempt in 0..64 {
            let pi = rng.below(bricks.len() as u64) as usize;
            let on_top = rng.chance(1, 2);
            if try_attach(&mut rng, &mut bricks, &mut tops, &mut bots, pi, on_top, false) {
                placed = true;
                break;
            }
        }
        if !placed {
            // Fallback: grow on the globally highest free top; always legal.
            let pi = (0..bricks.len())
                .filter(|&i| !tops[i].full && tops[i].axis.is_none())
                .max_by_key(|&i| (bricks[i].max.z, i))
                .expect("some brick always has a free top");
            let ok = try_attach(&mut rng, &mut bricks, &mut tops, &mut bots, pi, true, true);
            assert!(ok, "fallback attachment must succeed");
        }
    }
    bricks
}

/// Attach one brick to parent `pi`. `force_slab` restricts the move to an
/// end slab inside the parent footprint (used by the safe fallback).
fn try_attach(
    rng: &mut SplitMix64,
    bricks: &mut Vec<BrickBox>,
    tops: &mut Vec<FaceSlots>,
    bots: &mut Vec<FaceSlots>,
    pi: usize,
    on_top: bool,
    force_slab: bool,
) -> bool {
    let parent = bricks[pi];
    let slots = if on_top { tops[pi] } else { bots[pi] };
    if slots.full || slots.used == [true, true] {
        return false;
    }
    let h = rng.range_i64(1, 3);
    let (z0, z1) = if on_top {
        (parent.max.z, parent.max.z + h)
    } else {
        (parent.min.z - h, parent.min.z)
    };

    let grow = !force_slab && slots.axis.is_none() && rng.chance(1, 4);
    let candidate: Option<(BrickBox, Axis, usize)> = if grow {
        // Overhang: same footprint extended past one side.
        let axis = if rng.chance(1, 2) { Axis::X } else { Axis::Y };
        let ext = rng.range_i64(1, 4);
        let (lo, hi) = parent.range(axis);
        let (nlo, nhi) = if rng.chance(1, 2) {
            (lo - ext, hi)
        } else {
            (lo, hi + ext)
        };
        let min = parent.min.with(axis, nlo).with(Axis::Z, z0);
        let max = parent.max.with(axis, nhi).with(Axis::Z, z1);
        Some((BrickBox::new(min, max), axis, 2))
    } else {
        // End slab flush on three sides.
        let axis = match slots.axis {
            Some(a) => a,
            None => {
                if rng.chance(1, 2) {
                    Axis::X
                } else {
                    Axis::Y
                }
            }
        };
        let free_ends: Vec<usize> = (0..2).filter(|&e| !slots.used[e]).collect();
        let end = free_ends[rng.below(free_ends.len() as u64) as usize];
        let (lo, hi) = parent.range(axis);
        let extent = hi - lo;
        // Leave room (a gap of at least 1) for a sibling at the other end.
        let used_other = slots.used[1 - end];
        let max_w = if used_other {
            let sib = sibling_width(bricks, pi, axis, 1 - end, on_top);
            extent - sib - 1
        } else {
            extent - 1
        };
        if max_w < 1 {
            return false;
        }
        let wlo = 1.max(extent / 4);
        let w = rng.range_i64(wlo.min(max_w), max_w);
        let (nlo, nhi) = if end == 0 { (lo, lo + w) } else { (hi - w, hi) };
        let min = parent.min.with(axis, nlo).with(Axis::Z, z0);
        let max = parent.max.with(axis, nhi).with(Axis::Z, z1);
        Some((BrickBox::new(min, max), axis, end))
    };

    let (child, axis, end) = candidate.unwrap();
    // The child may touch only its parent, and only at the contact plane.
    for (j, other) in bricks.iter().enumerate() {
        if j == pi {
            continue;
        }
        if other.closed_intersects(&child) {
            return false;
        }
    }
    bricks.push(child);
    tops.push(FaceSlots::empty());
    bots.push(FaceSlots::empty());
    let slots = if on_top { &mut tops[pi] } else { &mut bots[pi] };
    if end == 2 {
        slots.full = true;
    } else {
        slots.axis = Some(axis);
        slots.used[end] = true;
    }
    // The child's opposite face hosts its parent.
    let child_slots = if on_top {
        &mut bots[bricks.len() - 1]
    } else {
        &mut tops[bricks.len() - 1]
    };
    child_slots.full = true;
    true
}

fn sibling_width(bricks: &[BrickBox], pi: usize, axis: Axis, end: usize, on_top: bool) -> i64 {
    let parent = bricks[pi];
    let plane = if on_top { parent.max.z } else { parent.min.z };
    let (lo, hi) = parent.range(axis);
    for b in bricks {
        let touches = if on_top {
            b.min.z == plane
        } else {
            b.max.z == plane
        };
        if !touches {
            continue;
        }
        let (blo, bhi) = b.range(axis);
        if end == 0 && blo == lo && bhi < hi {
            return bhi - blo;
        }
        if end == 1 && bhi == hi && blo > lo {
            return bhi - blo;
        }
    }
    0
}

impl BrickBox {
    fn closed_intersects(&self, o: &BrickBox) -> bool {
        Axis::ALL.into_iter().all(|a| {
            self.min.get(a).max(o.min.get(a)) <= self.max.get(a).min(o.max.get(a))
        })
    }
}

/// Full binary castle: every brick below the last level carries exactly two
/// children on its top face, flush end slabs at opposite ends.
pub fn gen_castle(seed: u64, levels: u32) -> Polyhedron {
    emit_from_bricks(&castle_bricks(seed, levels, false, Point3::new(0, 0, 0)))
}

pub(crate) fn castle_bricks(seed: u64, levels: u32, inverted: bool, at: Point3) -> Vec<BrickBox> {
    assert!(levels >= 1);
    let mut rng = SplitMix64::new(seed ^ 0x4341_5354);
    let side = 4i64.pow(levels.min(6));
    let base = BrickBox::new(at, at + Point3::new(side, side, 2));
    let base = if inverted {
        BrickBox::new(at - Point3::new(0, 0, 2), at + Point3::new(side, side, 0))
    } else {
        base
    };
    let mut out = Vec::new();
    grow_castle(&mut rng, &mut out, base, levels - 1, inverted);
    out
}

fn grow_castle(
    rng: &mut SplitMix64,
    out: &mut Vec<BrickBox>,
    brick: BrickBox,
    levels_left: u32,
    inverted: bool,
) {
    out.push(brick);
    if levels_left == 0 {
        return;
    }
    let axis = if rng.chance(1, 2) { Axis::X } else { Axis::Y };
    let (lo, hi) = brick.range(axis);
    let extent = hi - lo;
    // Two children with a gap of at least one unit between them.
    let wmax = (extent - 1) / 2;
    let wlo = 1.max(extent / 3).min(wmax);
    let w1 = rng.range_i64(wlo, wmax);
    let w2 = rng.range_i64(wlo, wmax);
    let h1 = rng.range_i64(1, 3);
    let h2 = rng.range_i64(1, 3);
    let (z0a, z1a, z0b, z1b) = if inverted {
        (brick.min.z - h1, brick.min.z, brick.min.z - h2, brick.min.z)
    } else {
        (brick.max.z, brick.max.z + h1, brick.max.z, brick.max.z + h2)
    };
    let c1 = BrickBox::new(
        brick.min.with(axis, lo).with(Axis::Z, z0a),
        brick.max.with(axis, lo + w1).with(Axis::Z, z1a),
    );
    let c2 = BrickBox::new(
        brick.min.with(axis, hi - w2).with(Axis::Z, z0b),
        brick.max.with(axis, hi).with(Axis::Z, z1b),
    );
    grow_castle(rng, out, c1, levels_left - 1, inverted);
    grow_castle(rng, out, c2, levels_left - 1, inverted);
}

/// Two castles joined base to base by one primitive contact: the lower one
/// is upside down, its base an end slab under the upper base.
pub fn gen_double_castle(seed: u64, levels: u32) -> Polyhedron {
    emit_from_bricks(&double_castle_bricks(seed, levels))
}

pub(crate) fn double_castle_bricks(seed: u64, levels: u32) -> Vec<BrickBox> {
    let upper = castle_bricks(seed, levels, false, Point3::new(0, 0, 0));
    let side_x = upper[0].extent(Axis::X);
    let side_y = upper[0].extent(Axis::Y);
    let mut rng = SplitMix64::new(seed ^ 0x4443_5354);
    // The lower base is an end slab under the upper base, so the joining
    // contact is primitive.
    let w = rng.range_i64(1.max(side_x / 3), side_x - 1);
    let slab = BrickBox::new(Point3::new(0, 0, -2), Point3::new(w, side_y, 0));
    let mut rng2 = SplitMix64::new(seed ^ 0x4443_5355);
    let mut all = upper;
    grow_castle(&mut rng2, &mut all, slab, levels - 1, true);
    all
}

/// Parallel bars bridged above by two crossing bars; `loops` independent
/// cycles give genus `loops`.
pub fn gen_ring(arm: i64, loops: u32) -> Polyhedron {
    emit_from_bricks(&ring_bricks(arm, loops))
}

pub(crate) fn ring_bricks(arm: i64, loops: u32) -> Vec<BrickBox> {
    assert!(arm >= 3, "armLength must be >= 3");
    assert!(loops >= 1);
    let mut bricks = Vec::new();
    let bars = loops as i64 + 1;
    for i in 0..bars {
        bricks.push(BrickBox::new(
            Point3::new(0, 3 * i, 0),
            Point3::new(arm, 3 * i + 1, 1),
        ));
    }
    let ymax = 3 * (bars - 1) + 1;
    bricks.push(BrickBox::new(Point3::new(0, 0, 1), Point3::new(1, ymax, 2)));
    bricks.push(BrickBox::new(
        Point3::new(arm - 1, 0, 1),
        Point3::new(arm, ymax, 2),
    ));
    bricks
}

/// The two-brick solid with the type-(t) contact: m = 23 edges of which
/// r = 2 are reflex; separated, the bricks total m' = 24 and r' = 0.
pub fn gen_figure2() -> Polyhedron {
    emit_from_bricks(&figure2_bricks())
}

pub(crate) fn figure2_bricks() -> [BrickBox; 2] {
    [
        BrickBox::new(Point3::new(1, 0, 0), Point3::new(2, 2, 1)),
        BrickBox::new(Point3::new(0, 0, 1), Point3::new(2, 1, 2)),
    ]
}

/// Seeded composite: primitive attachments mixed with collar caps and
/// double-overhang (type (e)) contacts, so b > 0 instances exist.
pub fn gen_composite(seed: u64, n_bricks: usize) -> Polyhedron {
    emit_from_bricks(&composite_bricks(seed, n_bricks))
}

pub(crate) fn composite_bricks(seed: u64, n_bricks: usize) -> Vec<BrickBox> {
    assert!(n_bricks >= 1);
    let mut rng = SplitMix64::new(seed ^ 0x434f_4d50);
    let mut bricks = vec![BrickBox::new(Point3::new(0, 0, 0), Point3::new(9, 9, 2))];
    let mut tops = vec![FaceSlots::empty()];
    let mut bots = vec![FaceSlots::empty()];

    while bricks.len() < n_bricks {
        let mut placed = false;
        for _ in 0..64 {
            let pi = rng.below(bricks.len() as u64) as usize;
            let on_top = rng.chance(1, 2);
            let slots = if on_top { tops[pi] } else { bots[pi] };
            let parent = bricks[pi];
            let kind = rng.below(4);
            if kind == 3
                && slots.axis.is_none()
                && !slots.full
                && parent.extent(Axis::X) >= 3
                && parent.extent(Axis::Y) >= 3
            {
                // Collar cap: strictly inside on all four sides.
                let h = rng.range_i64(1, 3);
                let mx0 = rng.range_i64(1, parent.extent(Axis::X) - 2);
                let mx1 = rng.range_i64(1, parent.extent(Axis::X) - 1 - mx0);
                let my0 = rng.range_i64(1, parent.extent(Axis::Y) - 2);
                let my1 = rng.range_i64(1, parent.extent(Axis::Y) - 1 - my0);
                let (z0, z1) = if on_top {
                    (parent.max.z, parent.max.z + h)
                } else {
                    (parent.min.z - h, parent.min.z)
                };
                let child = BrickBox::new(
                    Point3::new(parent.min.x + mx0, parent.min.y + my0, z0),
                    Point3::new(parent.max.x - mx1, parent.max.y - my1, z1),
                );
                if bricks
                    .iter()
                    .enumerate()
                    .all(|(j, o)| j == pi || !o.closed_intersects(&child))
                {
                    bricks.push(child);
                    tops.push(FaceSlots::empty());
                    bots.push(FaceSlots::empty());
                    if on_top {
                        tops[pi].full = true;
                        bots.last_mut().unwrap().full = true;
                    } else {
                        bots[pi].full = true;
                        tops.last_mut().unwrap().full = true;
                    }
                    placed = true;
                    break;
                }
            } else if kind == 2 && slots.axis.is_none() && !slots.full {
                // Type (e): child covers the whole face and extends past
                // both ends of one axis.
                let axis = if rng.chance(1, 2) { Axis::X } else { Axis::Y };
                let e1 = rng.range_i64(1, 3);
                let e2 = rng.range_i64(1, 3);
                let h = rng.range_i64(1, 3);
                let (lo, hi) = parent.range(axis);
                let (z0, z1) = if on_top {
                    (parent.max.z, parent.max.z + h)
                } else {
                    (parent.min.z - h, parent.min.z)
                };
                let child = BrickBox::new(
                    parent.min.with(axis, lo - e1).with(Axis::Z, z0),
                    parent.max.with(axis, hi + e2).with(Axis::Z, z1),
                );
                if bricks
                    .iter()
                    .enumerate()
                    .all(|(j, o)| j == pi || !o.closed_intersects(&child))
                {
                    bricks.push(child);
                    tops.push(FaceSlots::empty());
                    bots.push(FaceSlots::empty());
                    if on_top {
                        tops[pi].full = true;
                        bots.last_mut().unwrap().full = true;
                    } else {
                        bots[pi].full = true;
                        tops.last_mut().unwrap().full = true;
                    }
                    placed = true;
                    break;
                }
            } else if try_attach(&mut rng, &mut bricks, &mut tops, &mut bots, pi, on_top, false)
            {
                placed = true;
                break;
            }
        }
        if !placed {
            let pi = (0..bricks.len())
                .filter(|&i| !tops[i].full && tops[i].axis.is_none())
                .max_by_key(|&i| (bricks[i].max.z, i))
                .expect("some brick always has a free top");
            let ok = try_attach(&mut rng, &mut bricks, &mut tops, &mut bots, pi, true, true);
            assert!(ok, "fallback attachment must succeed");
        }
    }
    bricks
}

/// Random monotone orthogonal prism: per-column floors and ceilings with
/// positive overlap between neighbors, extruded along y.
pub fn gen_monotone_prism(seed: u64, columns: i64) -> Polyhedron {
    assert!(columns >= 1);
    let mut rng = SplitMix64::new(seed ^ 0x4d4f_4e4f);
    let mut floors = Vec::with_capacity(columns as usize);
    let mut ceils = Vec::with_capacity(columns as usize);
    let mut f = rng.range_i64(0, 3);
    let mut c = f + rng.range_i64(1, 4);
    floors.push(f);
    ceils.push(c);
    for _ in 1..columns {
        loop {
            let nf = rng.range_i64(0, 4);
            let nc = nf + rng.range_i64(1, 4);
            if nf.max(f) < nc.min(c) {
                f = nf;
                c = nc;
                floors.push(f);
                ceils.push(c);
                break;
            }
        }
    }
    let mut poly: Vec<(i64, i64)> = Vec::new();
    // Bottom boundary left to right, top boundary right to left.
    poly.push((0, floors[0]));
    for i in 1..columns as usize {
        if floors[i] != floors[i - 1] {
            poly.push((i as i64, floors[i - 1]));
            poly.push((i as i64, floors[i]));
        }
    }
    poly.push((columns, floors[columns as usize - 1]));
    poly.push((columns, ceils[columns as usize - 1]));
    for i in (1..columns as usize).rev() {
        if ceils[i] != ceils[i - 1] {
            poly.push((i as i64, ceils[i]));
            poly.push((i as i64, ceils[i - 1]));
        }
    }
    poly.push((0, ceils[0]));
    let depth = rng.range_i64(1, 3);
    gen_extrude(&poly, depth).expect("monotone profile is always a valid polygon")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{classify_edges, validate, write_polyhedron, Adjacency};

    fn counts(p: &Polyhedron) -> (usize, usize) {
        let adj = Adjacency::build(p).unwrap();
        let es = classify_edges(p, &adj).unwrap();
        (es.m(), es.r())
    }

    #[test]
    fn figure2_counts() {
        let p = gen_figure2();
        assert_eq!(p.n(), 16);
        assert!(validate(&p).ok());
        assert_eq!(counts(&p), (23, 2));
    }

    #[test]
    fn comb_reflex_count() {
        for k in 2..=5 {
            let p = gen_comb(k);
            assert!(validate(&p).ok());
            let (_, r) = counts(&p);
            assert_eq!(r as i64, 2 * k - 2, "k={k}");
        }
    }

    #[test]
    fn l_hexagon_prism_counts() {
        let l = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)];
        let p = gen_extrude(&l, 1).unwrap();
        assert!(validate(&p).ok());
        assert_eq!(counts(&p), (18, 1));
    }

    #[test]
    fn square_extrude_is_cuboid() {
        let sq = [(0, 0), (3, 0), (3, 3), (0, 3)];
        let p = gen_extrude(&sq, 2).unwrap();
        assert!(validate(&p).ok());
        assert_eq!(counts(&p), (12, 0));
    }

    #[test]
    fn self_intersecting_polygon_rejected() {
        let bad = [(0, 0), (3, 0), (3, 2), (1, 2), (1, -1), (0, -1)];
        assert!(gen_extrude(&bad, 1).is_err());
    }

    #[test]
    fn generators_validate_and_are_deterministic() {
        for seed in [1u64, 7, 42] {
            for p in [
                gen_stack(seed, 9),
                gen_castle(seed, 3),
                gen_double_castle(seed, 2),
                gen_composite(seed, 8),
                gen_monotone_prism(seed, 6),
            ] {
                let rep = validate(&p);
                assert!(rep.ok(), "seed {seed}: {:?}", rep.violations);
            }
            assert_eq!(
                write_polyhedron(&gen_stack(seed, 12)),
                write_polyhedron(&gen_stack(seed, 12))
            );
        }
        assert_ne!(
            write_polyhedron(&gen_stack(1, 12)),
            write_polyhedron(&gen_stack(2, 12))
        );
    }

    #[test]
    fn ring_is_valid() {
        for loops in 1..=3 {
            let p = gen_ring(4, loops);
            assert!(validate(&p).ok());
        }
    }
}
