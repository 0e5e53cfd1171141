//! Per-wall plane sweeps.
//!
//! Coplanar faces sharing flat seams are first merged into wall regions.
//! Each vertical region is scanned top to bottom; a horizontal contact line
//! is drawn at every vertex that is reflex in the region or lies on a reflex
//! edge of the polyhedron. Chord endpoints landing where no real corner
//! exists become dummy vertices, which trigger lines on the neighboring wall
//! (during its own sweep when it is still unprocessed, as an extension
//! otherwise).

use super::DecompError;
use crate::geom::{Axis, OrientedPlane, Point3};
use crate::model::{Adjacency, EdgeSet, Polyhedron};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum LineKind {
    AtReflexVertex,
    AtDummy,
    Extension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactLine {
    pub a: Point3,
    pub b: Point3,
    pub plane: OrientedPlane,
    pub origin: Point3,
    pub kind: LineKind,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DummyVertex {
    pub at: Point3,
    /// Refined polyhedron edge segment the dummy sits on.
    pub host: (Point3, Point3),
}

/// Vertical boundary piece of a region: one refined segment.
#[derive(Clone, Copy, Debug)]
struct Atomic {
    u: i64,
    zlo: i64,
    zhi: i64,
    /// Vertex ids at zlo / zhi.
    vlo: u32,
    vhi: u32,
    /// Travel direction of the canonicalized (interior-left) loop.
    dir_up: bool,
}

#[derive(Clone, Debug)]
struct Component {
    plane: OrientedPlane,
    /// Loops of vertex ids, interior on the left in (u, z).
    loops: Vec<Vec<u32>>,
    atomics: Vec<Atomic>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pending {
    at: Point3,
    /// Atomic the dummy sits on, as (vlo, vhi) vertex ids in the target
    /// component.
    host: (u32, u32),
}

fn sweep_u(plane: OrientedPlane, p: Point3) -> i64 {
    match plane.axis {
        Axis::X => p.y,
        Axis::Y => p.x,
        Axis::Z => unreachable!("horizontal faces are never swept"),
    }
}

fn sweep_point(plane: OrientedPlane, u: i64, z: i64) -> Point3 {
    match plane.axis {
        Axis::X => Point3::new(plane.offset, u, z),
        Axis::Y => Point3::new(u, plane.offset, z),
        Axis::Z => unreachable!(),
    }
}

pub struct SweepDriver<'a> {
    p: &'a Polyhedron,
    adj: &'a Adjacency,
    edges: &'a EdgeSet,
    components: Vec<Component>,
    /// Vertical face -> component index.
    face_component: BTreeMap<u32, usize>,
    swept: Vec<bool>,
    /// Segment key -> (kind, origin); the strongest kind wins.
    lines: BTreeMap<(OrientedPlane, Point3, Point3), (LineKind, Point3)>,
    pending: BTreeMap<usize, BTreeSet<Pending>>,
    processed: BTreeSet<(usize, Point3)>,
    dummies: BTreeSet<DummyVertex>,
}

impl<'a> SweepDriver<'a> {
    pub fn new(
        p: &'a Polyhedron,
        adj: &'a Adjacency,
        edges: &'a EdgeSet,
    ) -> Result<Self, DecompError> {
        let mut planes: BTreeMap<OrientedPlane, Vec<u32>> = BTreeMap::new();
        for f in 0..p.faces.len() {
            let pl = p
                .face_plane(f)
                .expect("sweep requires validated polyhedron");
            if pl.axis == Axis::Z {
                continue;
            }
            planes.entry(pl.oriented()).or_default().push(f as u32);
        }

        let mut components = Vec::new();
        let mut face_component = BTreeMap::new();
        for (plane, faces) in planes {
            build_plane_components(p, adj, plane, &faces, &mut components, &mut face_component)?;
        }
        let swept = vec![false; components.len()];
        Ok(SweepDriver {
            p,
            adj,
            edges,
            components,
            face_component,
            swept,
            lines: BTreeMap::new(),
            pending: BTreeMap::new(),
            processed: BTreeSet::new(),
            dummies: BTreeSet::new(),
        })
    }

    pub fn lines(&self) -> Vec<ContactLine> {
        self.lines
            .iter()
            .map(|(&(plane, a, b), &(kind, origin))| ContactLine {
                a,
                b,
                plane,
                origin,
                kind,
            })
            .collect()
    }

    pub fn dummies(&self) -> Vec<DummyVertex> {
        self.dummies.iter().cloned().collect()
    }

    /// Sweep every wall region, in input-face order, then verify that no
    /// dummy vertex is left waiting.
    pub fn sweep_all(&mut self) -> Result<(), DecompError> {
        for c in 0..self.components.len() {
            self.sweep_component(c)?;
        }
        debug_assert!(self.pending.values().all(|s| s.is_empty()));
        Ok(())
    }

    /// Sweep the wall regions in an explicit order (any leftovers follow in
    /// index order). The resulting contact-line set is order-independent.
    pub fn sweep_all_ordered(&mut self, order: &[usize]) -> Result<(), DecompError> {
        for &c in order {
            if c < self.components.len() {
                self.sweep_component(c)?;
            }
        }
        self.sweep_all()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Sweep the wall region containing `face`. Horizontal faces host no
    /// contact lines and sweep to nothing.
    pub fn sweep_face_of(&mut self, face: usize) -> Result<(), DecompError> {
        if let Some(&c) = self.face_component.get(&(face as u32)) {
            self.sweep_component(c)?;
        }
        Ok(())
    }

    /// Lines hosted on the wall region of `face`.
    pub fn lines_on_face_region(&self, face: usize) -> Vec<ContactLine> {
        let Some(&c) = self.face_component.get(&(face as u32)) else {
            return Vec::new();
        };
        let plane = self.components[c].plane;
        self.lines()
            .into_iter()
            .filter(|l| l.plane == plane)
            .collect()
    }

    fn emit(&mut self, plane: OrientedPlane, a: Point3, b: Point3, kind: LineKind, origin: Point3) {
        debug_assert!(a != b);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let entry = self
            .lines
            .entry((plane, a, b))
            .or_insert((kind, origin));
        if kind < entry.0 {
            *entry = (kind, origin);
        }
    }

    fn reflex_edges_along(&self, a: Point3, b: Point3) -> Vec<usize> {
        self.edges
            .reflex_edges_through(a)
            .into_iter()
            .filter(|&i| self.edges.edges[i].contains_point(b))
            .collect()
    }

    fn sweep_component(&mut self, c: usize) -> Result<(), DecompError> {
        if self.swept[c] {
            return Ok(());
        }
        self.swept[c] = true;
        let comp = self.components[c].clone();
        let plane = comp.plane;

        // Events: atomics enter at zhi, leave at zlo; triggers in between.
        #[derive(Default)]
        struct Event {
            enter: Vec<usize>,
            leave: Vec<usize>,
            triggers: Vec<(i64, Trigger)>,
        }
        #[derive(Clone, Copy)]
        enum Trigger {
            Vertex { prev: u32, here: u32, next: u32 },
            Dummy { host: (u32, u32) },
        }
        let mut events: BTreeMap<i64, Event> = BTreeMap::new();
        for (i, a) in comp.atomics.iter().enumerate() {
            events.entry(a.zhi).or_default().enter.push(i);
            events.entry(a.zlo).or_default().leave.push(i);
        }
        for lp in &comp.loops {
            let k = lp.len();
            for i in 0..k {
                let here = lp[i];
                let prev = lp[(i + k - 1) % k];
                let next = lp[(i + 1) % k];
                let hp = self.p.point(here);
                events
                    .entry(hp.z)
                    .or_default()
                    .triggers
                    .push((sweep_u(plane, hp), Trigger::Vertex { prev, here, next }));
            }
        }
        for d in self
            .pending
            .remove(&c)
            .unwrap_or_default()
        {
            if !self.processed.insert((c, d.at)) {
                continue;
            }
            self.dummies.insert(DummyVertex {
                at: d.at,
                host: (self.p.point(d.host.0), self.p.point(d.host.1)),
            });
            events
                .entry(d.at.z)
                .or_default()
                .triggers
                .push((sweep_u(plane, d.at), Trigger::Dummy { host: d.host }));
        }

        let mut status: BTreeSet<(i64, usize)> = BTreeSet::new();
        let atomic_dir_up: BTreeMap<(u32, u32), bool> = comp
            .atomics
            .iter()
            .map(|a| ((a.vlo, a.vhi), a.dir_up))
            .collect();

        for (&z0, ev) in events.iter().rev() {
            for &i in &ev.enter {
                status.insert((comp.atomics[i].u, i));
            }
            let mut triggers = ev.triggers.clone();
            triggers.sort_by_key(|t| t.0);
            for (u0, t) in triggers {
                match t {
                    Trigger::Vertex { prev, here, next } => {
                        self.vertex_trigger(c, &comp, &status, u0, z0, prev, here, next)?;
                    }
                    Trigger::Dummy { host } => {
                        let up = *atomic_dir_up.get(&host).unwrap_or(&true);
                        // Interior lies left of the travel direction.
                        let dir = if up { -1 } else { 1 };
                        let origin = sweep_point(plane, u0, z0);
                        self.interior_chord(
                            c, &comp, &status, u0, z0, dir, LineKind::AtDummy, origin,
                        )?;
                    }
                }
            }
            for &i in &ev.leave {
                status.remove(&(comp.atomics[i].u, i));
            }
        }
        self.run_extensions()?;
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn vertex_trigger(
        &mut self,
        c: usize,
        comp: &Component,
        status: &BTreeSet<(i64, usize)>,
        u0: i64,
        z0: i64,
        prev: u32,
        here: u32,
        next: u32,
    ) -> Result<(), DecompError> {
        let plane = comp.plane;
        let hp = self.p.point(here);
        let pp = self.p.point(prev);
        let np = self.p.point(next);
        let a = (u0 - sweep_u(plane, pp), z0 - pp.z);
        let b = (sweep_u(plane, np) - u0, np.z - z0);
        let a = (a.0.signum(), a.1.signum());
        let b = (b.0.signum(), b.1.signum());
        let cross = a.0 * b.1 - a.1 * b.0;
        let on_reflex = !self.edges.reflex_edges_through(hp).is_empty();
        if cross >= 0 && !on_reflex {
            return Ok(());
        }

        // Boundary lines: adjacent horizontal boundary segments lying on
        // reflex edges are contact-rectangle sides already; emit the whole
        // reflex edge once.
        if on_reflex {
            for other in [pp, np] {
                if other.z != z0 {
                    continue;
                }
                for ei in self.reflex_edges_along(hp, other) {
                    let e = &self.edges.edges[ei];
                    self.emit(plane, e.a, e.b, LineKind::AtReflexVertex, hp);
                }
            }
        }

        // Interior chord directions.
        let dir: Option<i64> = if cross < 0 {
            // Reflex corner: the single horizontal direction strictly inside
            // the interior wedge, which runs CCW from b to -a.
            let idx = |d: (i64, i64)| match d {
                (1, 0) => 0u8,
                (0, 1) => 1,
                (-1, 0) => 2,
                (0, -1) => 3,
                _ => unreachable!("axis-parallel directions only"),
            };
            let bi = idx(b);
            let inside = [(bi + 1) % 4, (bi + 2) % 4];
            if inside.contains(&0) {
                Some(1)
            } else if inside.contains(&2) {
                Some(-1)
            } else {
                None
            }
        } else if cross == 0 && on_reflex && a.0 == 0 {
            // Degenerate vertex in the middle of a vertical boundary run
            // with a reflex edge poking through it: chord to the interior
            // side (left of travel).
            Some(if a.1 > 0 { -1 } else { 1 })
        } else {
            None
        };
        if let Some(d) = dir {
            self.interior_chord(c, comp, status, u0, z0, d, LineKind::AtReflexVertex, hp)?;
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn interior_chord(
        &mut self,
        c: usize,
        comp: &Component,
        status: &BTreeSet<(i64, usize)>,
        u0: i64,
        z0: i64,
        dir: i64,
        kind: LineKind,
        origin: Point3,
    ) -> Result<(), DecompError> {
        let plane = comp.plane;
        let hit = if dir > 0 {
            status.range((u0 + 1, 0)..).next().copied()
        } else {
            status.range(..(u0, 0)).next_back().copied()
        };
        let Some((u1, ai)) = hit else {
            return Err(DecompError::PinchedRegion {
                at: sweep_point(plane, u0, z0),
            });
        };
        let a = sweep_point(plane, u0, z0);
        let b = sweep_point(plane, u1, z0);
        self.emit(plane, a, b, kind, origin);
        self.landing(c, comp, comp.atomics[ai], b, z0)
    }

    /// Handle a chord endpoint: when nothing turns there, it is a dummy
    /// vertex for the wall on the other side of the hosting edge.
    fn landing(
        &mut self,
        c: usize,
        comp: &Component,
        atomic: Atomic,
        at: Point3,
        z0: i64,
    ) -> Result<(), DecompError> {
        let _ = c;
        let mut hosts: Vec<(u32, u32)> = Vec::new();
        if z0 > atomic.zlo && z0 < atomic.zhi {
            hosts.push((atomic.vlo, atomic.vhi));
        } else {
            // Landed on a shared vertex of two atomics: a real corner needs
            // no dummy, a flat run continues into both neighbors.
            let vid = if z0 == atomic.zlo { atomic.vlo } else { atomic.vhi };
            let mut both = Vec::new();
            for a2 in &comp.atomics {
                if a2.u == atomic.u && (a2.vlo == vid || a2.vhi == vid) {
                    both.push((a2.vlo, a2.vhi));
                }
            }
            if both.len() == 2 {
                hosts = both; // straight run through the vertex
            }
            let on_reflex = !self.edges.reflex_edges_through(at).is_empty();
            if on_reflex {
                hosts.clear(); // the neighboring wall self-triggers here
            }
        }
        for host in hosts {
            self.register_dummy(at, host)?;
        }
        Ok(())
    }

    fn register_dummy(&mut self, at: Point3, host: (u32, u32)) -> Result<(), DecompError> {
        // Find the face on the other side of the hosting segment.
        let (vlo, vhi) = host;
        let owners = [
            self.adj.seg_owner.get(&(vlo, vhi)),
            self.adj.seg_owner.get(&(vhi, vlo)),
        ];
        for owner in owners.into_iter().flatten() {
            let Some(&target) = self.face_component.get(&owner.face) else {
                continue;
            };
            if self.processed.contains(&(target, at)) {
                continue;
            }
            let entry = Pending { at, host };
            if self.swept[target] {
                self.pending.entry(target).or_default().insert(entry);
                // handled by run_extensions at the end of this sweep
            } else {
                self.pending.entry(target).or_default().insert(entry);
            }
        }
        Ok(())
    }

    /// Draw extension chords for dummies whose target wall was already
    /// swept.
    fn run_extensions(&mut self) -> Result<(), DecompError> {
        loop {
            let mut batch: Vec<(usize, Pending)> = Vec::new();
            for (&target, set) in self.pending.iter() {
                if self.swept[target] {
                    batch.extend(set.iter().map(|&d| (target, d)));
                }
            }
            if batch.is_empty() {
                return Ok(());
            }
            for (target, d) in batch {
                self.pending.get_mut(&target).unwrap().remove(&d);
                if !self.processed.insert((target, d.at)) {
                    continue;
                }
                self.dummies.insert(DummyVertex {
                    at: d.at,
                    host: (self.p.point(d.host.0), self.p.point(d.host.1)),
                });
                self.extension_chord(target, d)?;
            }
        }
    }

    fn extension_chord(&mut self, target: usize, d: Pending) -> Result<(), DecompError> {
        let comp = self.components[target].clone();
        let plane = comp.plane;
        let u0 = sweep_u(plane, d.at);
        let z0 = d.at.z;
        // Travel direction of the host within the target component.
        let dir_up = comp
            .atomics
            .iter()
            .find(|a| {
                a.u == u0
                    && a.zlo <= z0
                    && z0 <= a.zhi
                    && (a.vlo == d.host.0 || a.vlo == d.host.1 || a.vhi == d.host.0 || a.vhi == d.host.1)
            })
            .map(|a| a.dir_up);
        let Some(up) = dir_up else {
            // The host edge belongs to a face but not to this wall region's
            // boundary (it was cancelled as a seam); nothing to draw.
            return Ok(());
        };
        let dir: i64 = if up { -1 } else { 1 };
        // Nearest vertical boundary beyond u0 crossing or touching z0.
        let mut best: Option<(i64, Atomic)> = None;
        for a in &comp.atomics {
            if a.zlo > z0 || a.zhi < z0 {
                continue;
            }
            let beyond = if dir > 0 { a.u > u0 } else { a.u < u0 };
            if !beyond {
                continue;
            }
            let better = match best {
                None => true,
                Some((bu, _)) => {
                    if dir > 0 {
                        a.u < bu
                    } else {
                        a.u > bu
                    }
                }
            };
            if better {
                best = Some((a.u, *a));
            }
        }
        let Some((u1, atomic)) = best else {
            return Err(DecompError::PinchedRegion { at: d.at });
        };
        let a = sweep_point(plane, u0, z0);
        let b = sweep_point(plane, u1, z0);
        self.emit(plane, a, b, LineKind::Extension, d.at);
        self.landing(target, &comp, atomic, b, z0)
    }
}

/// Merge coplanar faces into wall regions: flat seams between them cancel,
/// surviving directed segments stitch into loops with the interior on the
/// left in (u, z) coordinates.
fn build_plane_components(
    p: &Polyhedron,
    adj: &Adjacency,
    plane: OrientedPlane,
    faces: &[u32],
    components: &mut Vec<Component>,
    face_component: &mut BTreeMap<u32, usize>,
) -> Result<(), DecompError> {
    let reverse = (plane.axis == Axis::X && plane.sign < 0)
        || (plane.axis == Axis::Y && plane.sign > 0);

    // Directed segments with cancellation of seams.
    let mut segs: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut seg_face: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for &f in faces {
        for rl in &adj.refined[f as usize] {
            for i in 0..rl.len() {
                let (mut from, mut to) = (rl[i], rl[(i + 1) % rl.len()]);
                if reverse {
                    std::mem::swap(&mut from, &mut to);
                }
                if segs.remove(&(to, from)) {
                    seg_face.remove(&(to, from));
                } else {
                    segs.insert((from, to));
                    seg_face.insert((from, to), f);
                }
            }
        }
    }

    // Stitch loops.
    let mut next: BTreeMap<u32, u32> = BTreeMap::new();
    for &(a, b) in &segs {
        if next.insert(a, b).is_some() {
            return Err(DecompError::PinchedRegion { at: p.point(a) });
        }
    }
    let mut loops: Vec<Vec<u32>> = Vec::new();
    let mut used: BTreeSet<u32> = BTreeSet::new();
    let starts: Vec<u32> = next.keys().copied().collect();
    for s in starts {
        if used.contains(&s) {
            continue;
        }
        let mut lp = vec![s];
        used.insert(s);
        let mut cur = next[&s];
        while cur != s {
            used.insert(cur);
            lp.push(cur);
            cur = next[&cur];
        }
        loops.push(lp);
    }

    // Group loops into connected components: an outer loop plus the holes
    // it directly contains.
    let area2 = |lp: &[u32]| -> i64 {
        let mut s = 0i64;
        for i in 0..lp.len() {
            let a = p.point(lp[i]);
            let b = p.point(lp[(i + 1) % lp.len()]);
            let (u1, v1) = (sweep_u(plane, a), a.z);
            let (u2, v2) = (sweep_u(plane, b), b.z);
            s += u1 * v2 - u2 * v1;
        }
        s
    };
    let point_in = |pt: Point3, lp: &[u32]| -> bool {
        let (pu, pz) = (sweep_u(plane, pt), pt.z);
        let mut inside = false;
        for i in 0..lp.len() {
            let a = p.point(lp[i]);
            let b = p.point(lp[(i + 1) % lp.len()]);
            let (u1, z1) = (sweep_u(plane, a), a.z);
            let (_, z2) = (sweep_u(plane, b), b.z);
            if z1 == z2 {
                continue;
            }
            let (zlo, zhi) = (z1.min(z2), z1.max(z2));
            if zlo <= pz && pz < zhi && u1 > pu {
                inside = !inside;
            }
        }
        inside
    };

    let outer_idx: Vec<usize> = (0..loops.len()).filter(|&i| area2(&loops[i]) > 0).collect();
    let depth_of = |i: usize| -> usize {
        outer_idx
            .iter()
            .filter(|&&o| o != i && point_in(p.point(loops[i][0]), &loops[o]))
            .count()
    };
    let mut comp_of_loop: BTreeMap<usize, usize> = BTreeMap::new();
    let mut plane_components: Vec<usize> = Vec::new();
    for &o in &outer_idx {
        let id = components.len() + plane_components.len();
        comp_of_loop.insert(o, id);
        plane_components.push(o);
    }
    for i in 0..loops.len() {
        if area2(&loops[i]) > 0 {
            continue;
        }
        let my_depth = depth_of(i);
        let parent = outer_idx
            .iter()
            .copied()
            .filter(|&o| point_in(p.point(loops[i][0]), &loops[o]))
            .find(|&o| depth_of(o) + 1 == my_depth)
            .ok_or(DecompError::PinchedRegion {
                at: p.point(loops[i][0]),
            })?;
        comp_of_loop.insert(i, comp_of_loop[&parent]);
    }

    // Materialize components.
    let base = components.len();
    let count = plane_components.len();
    let mut built: Vec<Component> = (0..count)
        .map(|_| Component {
            plane,
            loops: Vec::new(),
            atomics: Vec::new(),
        })
        .collect();
    for (i, lp) in loops.iter().enumerate() {
        let cid = comp_of_loop[&i] - base;
        for w in 0..lp.len() {
            let from = lp[w];
            let to = lp[(w + 1) % lp.len()];
            let (fp, tp) = (p.point(from), p.point(to));
            if fp.z != tp.z {
                let dir_up = tp.z > fp.z;
                let (vlo, vhi) = if dir_up { (from, to) } else { (to, from) };
                built[cid].atomics.push(Atomic {
                    u: sweep_u(plane, fp),
                    zlo: p.point(vlo).z,
                    zhi: p.point(vhi).z,
                    vlo,
                    vhi,
                    dir_up,
                });
            }
        }
        built[cid].loops.push(lp.clone());
    }
    components.extend(built);

    // Face -> component, through surviving segments (faces fully swallowed
    // by seams inherit through a union-find over the cancelled pairs).
    let mut face_group: BTreeMap<u32, u32> = faces.iter().map(|&f| (f, f)).collect();
    fn find(m: &mut BTreeMap<u32, u32>, x: u32) -> u32 {
        let px = m[&x];
        if px == x {
            return x;
        }
        let root = find(m, px);
        m.insert(x, root);
        root
    }
    for &f in faces {
        for rl in &adj.refined[f as usize] {
            for i in 0..rl.len() {
                let (a, b) = (rl[i], rl[(i + 1) % rl.len()]);
                if let Some(t) = adj.twin(a, b) {
                    if face_group.contains_key(&t.face) && t.face != f {
                        // Same oriented plane: seam partner.
                        let pl2 = p.face_plane(t.face as usize).unwrap().oriented();
                        if pl2 == plane {
                            let ra = find(&mut face_group, f);
                            let rb = find(&mut face_group, t.face);
                            if ra != rb {
                                face_group.insert(ra, rb);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut group_component: BTreeMap<u32, usize> = BTreeMap::new();
    for (&(from, _to), &f) in &seg_face {
        let root = find(&mut face_group, f);
        // Which loop did this segment end up in?
        for (i, lp) in loops.iter().enumerate() {
            let k = lp.len();
            let pos = lp.iter().position(|&v| v == from);
            if let Some(w) = pos {
                if segs.contains(&(from, lp[(w + 1) % k])) {
                    group_component.insert(root, comp_of_loop[&i]);
                    break;
                }
            }
        }
    }
    for &f in faces {
        let root = find(&mut face_group, f);
        if let Some(&cid) = group_component.get(&root) {
            face_component.insert(f, cid);
        }
    }
    Ok(())
}

/// Sweep the wall region containing one vertical face and return the lines
/// and dummy vertices it produced on its own.
pub fn sweep_face(
    p: &Polyhedron,
    adj: &Adjacency,
    edges: &EdgeSet,
    face: usize,
) -> Result<(Vec<ContactLine>, Vec<DummyVertex>), DecompError> {
    let mut driver = SweepDriver::new(p, adj, edges)?;
    driver.sweep_face_of(face)?;
    Ok((driver.lines(), driver.dummies()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::model::{classify_edges, Adjacency};

    fn model(p: &Polyhedron) -> (Adjacency, EdgeSet) {
        let adj = Adjacency::build(p).unwrap();
        let es = classify_edges(p, &adj).unwrap();
        (adj, es)
    }

    #[test]
    fn plain_rectangle_wall_sweeps_to_nothing() {
        let p = gen::gen_cuboid(2, 2, 2);
        let (adj, es) = model(&p);
        for f in 0..p.faces.len() {
            let (lines, dummies) = sweep_face(&p, &adj, &es, f).unwrap();
            assert!(lines.is_empty());
            assert!(dummies.is_empty());
        }
    }

    #[test]
    fn figure2_degenerate_vertex_face_emits_one_line() {
        let p = gen::gen_figure2();
        let (adj, es) = model(&p);
        // The north face of the top brick: the rectangle whose perimeter
        // carries five vertices, with (1,1,1) in the middle of its bottom
        // edge.
        let target = p
            .faces
            .iter()
            .position(|f| {
                f.loops.len() == 1
                    && f.loops[0].len() == 4
                    && f.loops[0]
                        .iter()
                        .all(|&v| p.point(v).y == 1 && p.point(v).z >= 1)
            })
            .expect("north face of the upper brick");
        let (lines, dummies) = sweep_face(&p, &adj, &es, target).unwrap();
        assert_eq!(lines.len(), 1, "{lines:?}");
        assert_eq!(lines[0].a, crate::geom::Point3::new(1, 1, 1));
        assert_eq!(lines[0].b, crate::geom::Point3::new(2, 1, 1));
        assert!(dummies.is_empty());
    }

    #[test]
    fn full_sweep_covers_every_contact_side() {
        use crate::decomp::extract_bricks_and_contacts;
        for p in [
            gen::gen_figure2(),
            gen::gen_comb(4),
            gen::gen_stack(5, 10),
            gen::gen_castle(3, 3),
            gen::gen_ring(4, 1),
            gen::gen_composite(9, 8),
        ] {
            let (adj, es) = model(&p);
            let mut driver = SweepDriver::new(&p, &adj, &es).unwrap();
            driver.sweep_all().unwrap();
            let lines = driver.lines();
            let (_, contacts) = extract_bricks_and_contacts(&p, &adj, &es).unwrap();
            for c in &contacts {
                for (a, b) in c.sides() {
                    let on_reflex = es
                        .reflex_edges()
                        .any(|(_, e)| e.contains_point(a) && e.contains_point(b));
                    let on_line = lines.iter().any(|l| {
                        let axis = match a.axis_to(b) {
                            Some(ax) => ax,
                            None => return false,
                        };
                        l.a.axis_to(l.b).map(|la| la == axis).unwrap_or(false)
                            && covers(l.a, l.b, a, b, axis)
                    });
                    assert!(
                        on_reflex || on_line,
                        "uncovered side {a:?} -> {b:?} of contact {c:?}"
                    );
                }
            }
        }
    }

    fn covers(
        la: crate::geom::Point3,
        lb: crate::geom::Point3,
        a: crate::geom::Point3,
        b: crate::geom::Point3,
        axis: crate::geom::Axis,
    ) -> bool {
        let (ua, va) = axis.others();
        if la.get(ua) != a.get(ua) || la.get(va) != a.get(va) {
            return false;
        }
        let (llo, lhi) = (
            la.get(axis).min(lb.get(axis)),
            la.get(axis).max(lb.get(axis)),
        );
        let (slo, shi) = (a.get(axis).min(b.get(axis)), a.get(axis).max(b.get(axis)));
        llo <= slo && shi <= lhi
    }
}
