//! Structural validation: a valid input is a closed, orientable, connected,
//! axis-aligned boundary representation with consistent loops.

use super::{Polyhedron};
use crate::geom::{Axis, Point3};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub code: &'static str,
    pub location: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.code, self.location, self.message)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, code: &'static str, location: String, message: String) {
        self.violations.push(Violation {
            code,
            location,
            message,
        });
    }
}

/// Check every polyhedron and face invariant. Failures are collected in the
/// report instead of aborting, so one run surfaces all problems.
pub fn validate(p: &Polyhedron) -> ValidationReport {
    let mut rep = ValidationReport::default();

    // Duplicate coordinates break the one-point-one-vertex convention.
    let mut seen: BTreeMap<Point3, usize> = BTreeMap::new();
    for (i, &v) in p.vertices.iter().enumerate() {
        if let Some(&j) = seen.get(&v) {
            rep.push(
                "duplicate-vertex",
                format!("vertex {i}"),
                format!("coincides with vertex {j} at {v:?}"),
            );
        } else {
            seen.insert(v, i);
        }
    }

    if p.faces.is_empty() {
        rep.push("empty", "document".into(), "no faces".into());
        return rep;
    }

    // Per-face planarity, loop alternation and winding.
    let mut planes = Vec::with_capacity(p.faces.len());
    for (fi, face) in p.faces.iter().enumerate() {
        let plane = match p.face_plane(fi) {
            Ok(pl) => pl,
            Err(e) => {
                rep.push("bad-face", format!("face {fi}"), e.to_string());
                planes.push(None);
                continue;
            }
        };
        planes.push(Some(plane));
        for (li, lp) in face.loops.iter().enumerate() {
            let loc = format!("face {fi} loop {li}");
            if lp.len() < 4 || lp.len() % 2 != 0 {
                rep.push(
                    "bad-loop",
                    loc.clone(),
                    format!("orthogonal loop needs an even vertex count >= 4, got {}", lp.len()),
                );
                continue;
            }
            let distinct: BTreeSet<u32> = lp.iter().copied().collect();
            if distinct.len() != lp.len() {
                rep.push("bad-loop", loc.clone(), "repeated vertex in loop".into());
                continue;
            }
            let mut prev_axis: Option<Axis> = None;
            let mut ok = true;
            for i in 0..lp.len() {
                let a = p.point(lp[i]);
                let b = p.point(lp[(i + 1) % lp.len()]);
                match a.axis_to(b) {
                    Some(ax) if ax != plane.axis => {
                        if prev_axis == Some(ax) {
                            rep.push(
                                "bad-loop",
                                loc.clone(),
                                format!("consecutive edges both along {ax} at {a:?}"),
                            );
                            ok = false;
                            break;
                        }
                        prev_axis = Some(ax);
                    }
                    _ => {
                        rep.push(
                            "bad-loop",
                            loc.clone(),
                            format!("edge {a:?} -> {b:?} not axis-parallel in plane"),
                        );
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let area2 = p.loop_area2(plane.axis, lp);
            let outward_ccw = area2.signum() as i8 == plane.sign;
            if li == 0 && !outward_ccw {
                rep.push("bad-winding", loc, "outer loop not CCW w.r.t. outward normal".into());
            } else if li > 0 && outward_ccw {
                rep.push("bad-winding", loc, "hole loop must wind opposite to the outer loop".into());
            }
        }
    }

    if !rep.ok() {
        return rep; // adjacency-level checks need clean faces
    }

    // Closedness and orientability: every directed refined segment is
    // matched by its reverse on another face, exactly once each.
    let adj = match super::Adjacency::build(p) {
        Ok(adj) => adj,
        Err(e) => {
            rep.push("non-manifold", "boundary".into(), e.to_string());
            return rep;
        }
    };
    for (&(a, b), owner) in adj.segments() {
        match adj.twin(a, b) {
            None => rep.push(
                "open-surface",
                format!("segment {:?} -> {:?}", p.point(a), p.point(b)),
                "open surface: unmatched edge segment".into(),
            ),
            Some(t) if t.face == owner.face && t.band == owner.band => rep.push(
                "pinched-face",
                format!("segment {:?} -> {:?}", p.point(a), p.point(b)),
                "face is adjacent to itself across this segment".into(),
            ),
            Some(t) => {
                // Coplanar twins with opposite normals would be a knife edge.
                let pl1 = planes[owner.face as usize].unwrap();
                let pl2 = planes[t.face as usize].unwrap();
                if pl1.axis == pl2.axis && pl1.offset == pl2.offset && pl1.sign != pl2.sign {
                    rep.push(
                        "knife-edge",
                        format!("segment {:?} -> {:?}", p.point(a), p.point(b)),
                        "coplanar faces with opposite normals meet here".into(),
                    );
                }
            }
        }
    }
    if !rep.ok() {
        return rep;
    }

    // Each vertex is shared by at most six faces in an orthogonal polyhedron.
    for (vi, fs) in adj.vertex_faces.iter().enumerate() {
        if fs.len() > 6 {
            rep.push(
                "vertex-degree",
                format!("vertex {vi}"),
                format!("{} incident faces (maximum is 6)", fs.len()),
            );
        }
    }

    // Connectivity of the face graph via shared segments. A disconnected
    // face graph means either several solids or an internal cavity.
    let nf = p.faces.len();
    let mut face_adj: Vec<Vec<u32>> = vec![Vec::new(); nf];
    for (&(a, b), owner) in adj.segments() {
        if let Some(t) = adj.twin(a, b) {
            face_adj[owner.face as usize].push(t.face);
        }
    }
    let mut visited = vec![false; nf];
    let mut stack = vec![0u32];
    visited[0] = true;
    while let Some(f) = stack.pop() {
        for &g in &face_adj[f as usize] {
            if !visited[g as usize] {
                visited[g as usize] = true;
                stack.push(g);
            }
        }
    }
    if visited.iter().any(|v| !v) {
        rep.push(
            "not-connected",
            "boundary".into(),
            "not connected: boundary surface splits into several components".into(),
        );
        return rep;
    }

    // Outward orientation: the enclosed volume must be positive.
    match p.volume() {
        Ok(v) if v > 0 => {}
        Ok(v) => rep.push(
            "orientation",
            "boundary".into(),
            format!("non-positive enclosed volume {v}; normals point inward?"),
        ),
        Err(e) => rep.push("orientation", "boundary".into(), e.to_string()),
    }

    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_polyhedron;
    use crate::testutil::CUBE;

    #[test]
    fn cube_is_valid() {
        let p = parse_polyhedron(CUBE).unwrap();
        let rep = validate(&p);
        assert!(rep.ok(), "{:?}", rep.violations);
    }

    #[test]
    fn open_cube_reports_unmatched_segment() {
        let mut p = parse_polyhedron(CUBE).unwrap();
        p.faces.pop();
        let rep = validate(&p);
        assert!(!rep.ok());
        assert!(rep.violations.iter().any(|v| v.code == "open-surface"));
    }

    #[test]
    fn two_disjoint_cubes_not_connected() {
        let p1 = parse_polyhedron(CUBE).unwrap();
        let mut p = p1.clone();
        let off = p1.vertices.len() as u32;
        for &v in &p1.vertices {
            p.vertices.push(v + crate::geom::Point3::new(5, 0, 0));
        }
        for f in &p1.faces {
            p.faces.push(crate::model::Face {
                loops: f
                    .loops
                    .iter()
                    .map(|lp| lp.iter().map(|i| i + off).collect())
                    .collect(),
            });
        }
        let rep = validate(&p);
        assert!(rep.violations.iter().any(|v| v.code == "not-connected"));
    }
}
