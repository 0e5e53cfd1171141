//! Exact visibility verification over the brick partition.
//!
//! Containment of a segment in the closed solid is decided with exact
//! rational arithmetic: the segment is clipped against every brick and the
//! parameter intervals must cover [0, 1]. Edge guards are sampled (open
//! mode excludes the endpoints), so a reported witness is always sound
//! while a miss can only under-approximate visibility.

use crate::decomp::Brick;
use crate::geom::{Axis, Point3};
use crate::guard::{GuardMode, GuardSet, GuardStatus};
use crate::model::Edge;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

pub type Q = Ratio<i128>;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct QPoint {
    pub x: Q,
    pub y: Q,
    pub z: Q,
}

impl QPoint {
    pub fn new(x: Q, y: Q, z: Q) -> Self {
        QPoint { x, y, z }
    }

    pub fn from_lattice(p: Point3) -> Self {
        QPoint {
            x: Q::from_integer(p.x as i128),
            y: Q::from_integer(p.y as i128),
            z: Q::from_integer(p.z as i128),
        }
    }

    pub fn get(&self, a: Axis) -> Q {
        match a {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    fn lerp(&self, o: &QPoint, t: Q) -> QPoint {
        QPoint {
            x: self.x + (o.x - self.x) * t,
            y: self.y + (o.y - self.y) * t,
            z: self.z + (o.z - self.z) * t,
        }
    }

    fn dist2(&self, o: &QPoint) -> Q {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        let dz = self.z - o.z;
        dx * dx + dy * dy + dz * dz
    }

    pub fn to_f64(self) -> [f64; 3] {
        let f = |q: Q| *q.numer() as f64 / *q.denom() as f64;
        [f(self.x), f(self.y), f(self.z)]
    }
}

/// Does the closed segment [a, b] lie entirely in the union of the closed
/// bricks? Exact; degenerate segments (a == b) test point containment.
pub fn segment_inside(a: QPoint, b: QPoint, bricks: &[Brick]) -> bool {
    let mut intervals: Vec<(Q, Q)> = Vec::new();
    let one: Q = Q::one();
    for br in bricks {
        // Clip the parameter range against the slab of each axis.
        let mut t0: Q = Q::zero();
        let mut t1: Q = one;
        let mut ok = true;
        for ax in Axis::ALL {
            let pa = a.get(ax);
            let pb = b.get(ax);
            let lo = Q::from_integer(br.min.get(ax) as i128);
            let hi = Q::from_integer(br.max.get(ax) as i128);
            let d = pb - pa;
            if d.is_zero() {
                if pa < lo || pa > hi {
                    ok = false;
                    break;
                }
            } else {
                let mut ta = (lo - pa) / d;
                let mut tb = (hi - pa) / d;
                if ta > tb {
                    std::mem::swap(&mut ta, &mut tb);
                }
                if ta > t0 {
                    t0 = ta;
                }
                if tb < t1 {
                    t1 = tb;
                }
                if t0 > t1 {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            intervals.push((t0, t1));
        }
    }
    intervals.sort();
    let mut reach: Q = Q::zero();
    for (lo, hi) in intervals {
        if lo > reach {
            return false;
        }
        if hi > reach {
            reach = hi;
        }
        if reach >= one {
            return true;
        }
    }
    reach >= one
}

/// Sample positions along a guard edge: closed guards include the
/// endpoints, open guards use parameters i/(K+1) for i = 1..K.
pub fn edge_samples(edge: &Edge, mode: GuardMode, k: usize) -> Vec<QPoint> {
    assert!(k >= 2, "need at least two edge samples");
    let a = QPoint::from_lattice(edge.a);
    let b = QPoint::from_lattice(edge.b);
    match mode {
        GuardMode::Closed => (0..k)
            .map(|i| a.lerp(&b, Q::new(i as i128, (k - 1) as i128)))
            .collect(),
        GuardMode::Open => (1..=k)
            .map(|i| a.lerp(&b, Q::new(i as i128, (k + 1) as i128)))
            .collect(),
    }
}

/// Sampled edge-guard visibility: true when some sample point on the guard
/// sees `p`. One-sided: a true answer is always correct.
pub fn guard_sees_point(
    edge: &Edge,
    p: QPoint,
    mode: GuardMode,
    k: usize,
    bricks: &[Brick],
) -> bool {
    let samples = edge_samples(edge, mode, k);
    // Try the sample nearest to p first; witnesses cluster around the
    // projection of p onto the guard line.
    let mut order: Vec<usize> = (0..samples.len()).collect();
    let start = order
        .iter()
        .copied()
        .min_by_key(|&i| samples[i].dist2(&p))
        .unwrap_or(0);
    order.sort_by_key(|&i| (i as i64 - start as i64).abs());
    order
        .into_iter()
        .any(|i| segment_inside(samples[i], p, bricks))
}

/// Deterministic interior sample set: per brick a d x d x d half-step
/// lattice plus the brick center, deduplicated.
pub fn sample_points(bricks: &[Brick], d: usize) -> Vec<QPoint> {
    assert!(d >= 1);
    let mut out: Vec<QPoint> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for br in bricks {
        let coord = |ax: Axis, num: i128, den: i128| -> Q {
            let lo = Q::from_integer(br.min.get(ax) as i128);
            let ext = Q::from_integer((br.max.get(ax) - br.min.get(ax)) as i128);
            lo + ext * Q::new(num, den)
        };
        let mut push = |p: QPoint| {
            if seen.insert(p) {
                out.push(p);
            }
        };
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    push(QPoint::new(
                        coord(Axis::X, 2 * i as i128 + 1, 2 * d as i128),
                        coord(Axis::Y, 2 * j as i128 + 1, 2 * d as i128),
                        coord(Axis::Z, 2 * l as i128 + 1, 2 * d as i128),
                    ));
                }
            }
        }
        push(QPoint::new(
            coord(Axis::X, 1, 2),
            coord(Axis::Y, 1, 2),
            coord(Axis::Z, 1, 2),
        ));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageFailure {
    pub point: [f64; 3],
    #[serde(rename = "nearestGuardDistance")]
    pub nearest_guard_distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub mode: GuardMode,
    pub samples: usize,
    pub covered: usize,
    pub failures: Vec<CoverageFailure>,
    pub density: usize,
    #[serde(rename = "edgeSamples")]
    pub edge_samples: usize,
}

impl CoverageReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Test every sampled interior point against the guards until one witnesses
/// it. A convex instance with no guards passes vacuously.
pub fn coverage_check(
    bricks: &[Brick],
    guards: &GuardSet,
    d: usize,
    k: usize,
) -> CoverageReport {
    let pts = sample_points(bricks, d);
    let mut covered = 0usize;
    let mut failures = Vec::new();
    let vacuous = guards.status == GuardStatus::Convex;
    for p in &pts {
        if vacuous {
            covered += 1;
            continue;
        }
        // Nearest guards first.
        let mut order: Vec<usize> = (0..guards.guards.len()).collect();
        order.sort_by_key(|&gi| {
            let e = &guards.guards[gi];
            let mid = QPoint::from_lattice(e.a).lerp(&QPoint::from_lattice(e.b), Q::new(1, 2));
            mid.dist2(p)
        });
        let mut seen = false;
        let mut nearest: Option<Q> = None;
        for gi in order {
            let e = &guards.guards[gi];
            if guard_sees_point(e, *p, guards.mode, k, bricks) {
                seen = true;
                break;
            }
            let mid = QPoint::from_lattice(e.a).lerp(&QPoint::from_lattice(e.b), Q::new(1, 2));
            let d2 = mid.dist2(p);
            nearest = Some(match nearest {
                Some(n) if n < d2 => n,
                _ => d2,
            });
        }
        if seen {
            covered += 1;
        } else {
            let d2 = nearest.unwrap_or_else(Q::zero);
            let df = (*d2.numer() as f64 / *d2.denom() as f64).sqrt();
            failures.push(CoverageFailure {
                point: p.to_f64(),
                nearest_guard_distance: df,
            });
        }
    }
    CoverageReport {
        mode: guards.mode,
        samples: pts.len(),
        covered,
        failures,
        density: d,
        edge_samples: k,
    }
}

/// Decompose an input polyhedron and run the coverage check against a guard
/// set expressed in the same input coordinates.
pub fn coverage_check_on(
    p: &crate::model::Polyhedron,
    guards: &GuardSet,
    d: usize,
    k: usize,
) -> Result<CoverageReport, crate::guard::GuardError> {
    let bricks = input_frame_bricks(p)?;
    Ok(coverage_check(&bricks, guards, d, k))
}

/// Bricks of the decomposition mapped back into input coordinates.
pub fn input_frame_bricks(
    p: &crate::model::Polyhedron,
) -> Result<Vec<Brick>, crate::guard::GuardError> {
    use crate::model::{classify_edges, normalize_orientation, Adjacency};
    let adj0 = Adjacency::build(p)?;
    let edges0 = classify_edges(p, &adj0)?;
    let (np, rot) = normalize_orientation(p, &edges0)?;
    let (adj, edges) = if rot == crate::geom::Rotation::Identity {
        (adj0, edges0)
    } else {
        let adj = Adjacency::build(&np)?;
        let edges = classify_edges(&np, &adj)?;
        (adj, edges)
    };
    let d = crate::decomp::decompose(&np, &adj, &edges)?;
    let inv = rot.inverse();
    Ok(d
        .bricks
        .iter()
        .map(|b| {
            let p1 = inv.apply(b.min);
            let p2 = inv.apply(b.max);
            Brick {
                min: Point3::new(p1.x.min(p2.x), p1.y.min(p2.y), p1.z.min(p2.z)),
                max: Point3::new(p1.x.max(p2.x), p1.y.max(p2.y), p1.z.max(p2.z)),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::guard::{place_guards, GuardMode};

    fn q(n: i128, d: i128) -> Q {
        Q::new(n, d)
    }

    fn bricks_of(p: &crate::model::Polyhedron) -> Vec<Brick> {
        input_frame_bricks(p).unwrap()
    }

    #[test]
    fn segment_between_stacked_brick_centers() {
        let p = gen::gen_stack(1, 2);
        let bricks = bricks_of(&p);
        let c0 = QPoint::new(
            q((bricks[0].min.x + bricks[0].max.x) as i128, 2),
            q((bricks[0].min.y + bricks[0].max.y) as i128, 2),
            q((bricks[0].min.z + bricks[0].max.z) as i128, 2),
        );
        let c1 = QPoint::new(
            q((bricks[1].min.x + bricks[1].max.x) as i128, 2),
            q((bricks[1].min.y + bricks[1].max.y) as i128, 2),
            q((bricks[1].min.z + bricks[1].max.z) as i128, 2),
        );
        assert!(segment_inside(c0, c1, &bricks));
        assert!(segment_inside(c0, c0, &bricks));
    }

    #[test]
    fn corner_cutting_segment_is_outside() {
        // L-prism: notch corner at (1, *, 1); the segment between the two
        // points diagonal across the notch exits the solid.
        let l = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)];
        let p = gen::gen_extrude(&l, 1).unwrap();
        let bricks = bricks_of(&p);
        assert_eq!(bricks.len(), 2);
        let a = QPoint::new(q(3, 2), q(1, 2), q(3, 4)); // inside the low arm
        let b = QPoint::new(q(3, 4), q(1, 2), q(3, 2)); // inside the tall arm
        assert!(!segment_inside(a, b, &bricks));
        // Bending through the notch corner works: both halves inside.
        let corner = QPoint::new(q(1, 1), q(1, 2), q(1, 1));
        assert!(segment_inside(a, corner, &bricks));
        assert!(segment_inside(corner, b, &bricks));
        // A segment exactly grazing the reflex corner stays inside the
        // closed solid.
        let a2 = QPoint::new(q(3, 2), q(1, 2), q(1, 2));
        let b2 = QPoint::new(q(1, 2), q(1, 2), q(3, 2));
        assert!(segment_inside(a2, b2, &bricks));
    }

    #[test]
    fn sample_counts() {
        let one = bricks_of(&gen::gen_cuboid(2, 2, 2));
        assert_eq!(sample_points(&one, 1).len(), 1);
        assert_eq!(sample_points(&one, 2).len(), 9);
        let f2 = bricks_of(&gen::gen_figure2());
        assert_eq!(sample_points(&f2, 2).len(), 18);
    }

    #[test]
    fn l_prism_reflex_edge_sees_everything() {
        let l = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)];
        let p = gen::gen_extrude(&l, 1).unwrap();
        let gs = place_guards(&p, GuardMode::Open).unwrap();
        assert_eq!(gs.guards.len(), 1);
        let rep = coverage_check_on(&p, &gs, 3, 8).unwrap();
        assert!(rep.pass(), "{:?}", rep.failures);
    }

    #[test]
    fn comb_guard_does_not_see_other_tooth() {
        let p = gen::gen_comb(3);
        let bricks = bricks_of(&p);
        // Reflex edge of the gap right of tooth 0: x=1, z=1.
        let e = Edge {
            a: Point3::new(1, 0, 1),
            b: Point3::new(1, 1, 1),
            axis: Axis::Y,
            convexity: crate::model::Convexity::Reflex,
        };
        // Apex point inside tooth 2 (x in [4,5], z in [1,2]).
        let apex = QPoint::new(q(9, 2), q(1, 2), q(7, 4));
        assert!(!guard_sees_point(&e, apex, GuardMode::Open, 16, &bricks));
        // But it does see the apex of tooth 0 and tooth 1.
        let apex0 = QPoint::new(q(1, 2), q(1, 2), q(7, 4));
        assert!(guard_sees_point(&e, apex0, GuardMode::Open, 16, &bricks));
    }

    #[test]
    fn cube_with_no_guards_passes_vacuously() {
        let p = gen::gen_cuboid(2, 2, 2);
        let gs = place_guards(&p, GuardMode::Open).unwrap();
        let rep = coverage_check_on(&p, &gs, 2, 8).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.samples, 9);
    }

    #[test]
    fn figure2_pipeline_guards_cover() {
        let p = gen::gen_figure2();
        let gs = place_guards(&p, GuardMode::Open).unwrap();
        let rep = coverage_check_on(&p, &gs, 3, 16).unwrap();
        assert!(rep.pass(), "{:?}", rep.failures);
    }

    #[test]
    fn nested_sampling_is_monotone_in_k() {
        // Open-mode samples at K are a subset of those at 2K+1 by
        // construction: i/(K+1) = 2i/(2K+2).
        let e = Edge {
            a: Point3::new(0, 0, 0),
            b: Point3::new(7, 0, 0),
            axis: Axis::X,
            convexity: crate::model::Convexity::Reflex,
        };
        let small: std::collections::BTreeSet<QPoint> =
            edge_samples(&e, GuardMode::Open, 5).into_iter().collect();
        let big: std::collections::BTreeSet<QPoint> =
            edge_samples(&e, GuardMode::Open, 11).into_iter().collect();
        assert!(small.is_subset(&big));
    }
}
