//! Brick decomposition: per-face plane sweeps producing contact lines and
//! dummy vertices, extraction of maximal bricks and contact rectangles, and
//! the brick graph.

mod bricks;
mod sweep;

pub use bricks::extract_bricks_and_contacts;
pub use sweep::{sweep_face, ContactLine, DummyVertex, LineKind, SweepDriver};

use crate::geom::{Axis, Interval, Point3};
use crate::model::{Adjacency, EdgeSet, Polyhedron};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("carved cell is not a cuboid near {at:?}: {detail}")]
    BrickNotBox { at: Point3, detail: String },
    #[error("contact at z={z} overlaps a boundary face; input is degenerate")]
    DegenerateContact { z: i64 },
    #[error("contact side {a:?} -> {b:?} does not line up with a reflex edge")]
    ContactSideMismatch { a: Point3, b: Point3 },
    #[error("region boundary is pinched at {at:?}")]
    PinchedRegion { at: Point3 },
}

/// Maximal axis-aligned cuboid of the canonical partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Brick {
    pub min: Point3,
    pub max: Point3,
}

impl Brick {
    pub fn extent(&self, a: Axis) -> i64 {
        self.max.get(a) - self.min.get(a)
    }

    pub fn range(&self, a: Axis) -> Interval {
        Interval::new(self.min.get(a), self.max.get(a))
    }

    pub fn volume(&self) -> i64 {
        self.extent(Axis::X) * self.extent(Axis::Y) * self.extent(Axis::Z)
    }

    pub fn contains(&self, p: Point3) -> bool {
        Axis::ALL
            .into_iter()
            .all(|a| self.min.get(a) <= p.get(a) && p.get(a) <= self.max.get(a))
    }
}

/// Horizontal rectangle where a lower and an upper brick meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactRect {
    pub z: i64,
    pub x: Interval,
    pub y: Interval,
    pub lower: usize,
    pub upper: usize,
    /// Indices into the `EdgeSet` of the reflex edges bordering this
    /// rectangle (1 to 4 of them).
    pub reflex_edges: Vec<usize>,
}

impl ContactRect {
    /// The four sides as 3D segments, in W/E/S/N order.
    pub fn sides(&self) -> [(Point3, Point3); 4] {
        let z = self.z;
        [
            (
                Point3::new(self.x.lo, self.y.lo, z),
                Point3::new(self.x.lo, self.y.hi, z),
            ),
            (
                Point3::new(self.x.hi, self.y.lo, z),
                Point3::new(self.x.hi, self.y.hi, z),
            ),
            (
                Point3::new(self.x.lo, self.y.lo, z),
                Point3::new(self.x.hi, self.y.lo, z),
            ),
            (
                Point3::new(self.x.lo, self.y.hi, z),
                Point3::new(self.x.hi, self.y.hi, z),
            ),
        ]
    }
}

/// Bricks as nodes, contact rectangles as edges.
#[derive(Clone, Debug, Default)]
pub struct BrickGraph {
    /// Per brick: (neighbor brick, contact id), sorted.
    pub adj: Vec<Vec<(usize, usize)>>,
    pub edge_count: usize,
}

impl BrickGraph {
    pub fn build(n_bricks: usize, contacts: &[ContactRect]) -> BrickGraph {
        let mut adj = vec![Vec::new(); n_bricks];
        for (ci, c) in contacts.iter().enumerate() {
            adj[c.lower].push((c.upper, ci));
            adj[c.upper].push((c.lower, ci));
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        BrickGraph {
            adj,
            edge_count: contacts.len(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Cycle rank: `edges - nodes + components`; for a connected graph this is
/// the genus of the polyhedron the graph came from.
pub fn graph_genus(g: &BrickGraph) -> u32 {
    let c = g.components().len();
    (g.edge_count + c - g.node_count()) as u32
}

/// Full decomposition result.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub bricks: Vec<Brick>,
    pub contacts: Vec<ContactRect>,
    pub graph: BrickGraph,
}

/// Decompose a validated, orientation-normalized polyhedron into maximal
/// bricks and contact rectangles and build the brick graph.
pub fn decompose(
    p: &Polyhedron,
    adj: &Adjacency,
    edges: &EdgeSet,
) -> Result<Decomposition, DecompError> {
    let (bricks, contacts) = extract_bricks_and_contacts(p, adj, edges)?;
    let graph = BrickGraph::build(bricks.len(), &contacts);
    Ok(Decomposition {
        bricks,
        contacts,
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> BrickGraph {
        let contacts: Vec<ContactRect> = (0..n - 1)
            .map(|i| ContactRect {
                z: i as i64,
                x: Interval::new(0, 1),
                y: Interval::new(0, 1),
                lower: i,
                upper: i + 1,
                reflex_edges: vec![],
            })
            .collect();
        BrickGraph::build(n, &contacts)
    }

    #[test]
    fn tree_has_genus_zero() {
        assert_eq!(graph_genus(&path_graph(5)), 0);
    }

    #[test]
    fn cycle_has_genus_one() {
        let mut contacts: Vec<ContactRect> = (0..4)
            .map(|i| ContactRect {
                z: 0,
                x: Interval::new(0, 1),
                y: Interval::new(0, 1),
                lower: i,
                upper: (i + 1) % 4,
                reflex_edges: vec![],
            })
            .collect();
        contacts.sort_by_key(|c| (c.lower, c.upper));
        let g = BrickGraph::build(4, &contacts);
        assert_eq!(graph_genus(&g), 1);
    }
}
