//! Contact-rectangle taxonomy and structural predicates: primitive and
//! collar contacts, stacks, castles, double castles, prisms and
//! monotonicity.

use crate::decomp::{Brick, BrickGraph, ContactRect};
use crate::geom::{Axis, Interval};
use serde::Serialize;
use std::collections::BTreeMap;

/// Classification of one contact rectangle.
///
/// A primitive contact is bordered by exactly one reflex edge: `PrimitiveD`
/// when the upper brick overhangs (the contact is the lower brick's whole
/// top face), `PrimitiveI` when the lower brick keeps going (the contact is
/// the upper brick's whole bottom face). A collar is strictly inside one of
/// the two faces on all four sides, so four reflex edges wind around the
/// smaller brick. Everything else is `Other`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactKind {
    PrimitiveD,
    PrimitiveI,
    Collar,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContactClass {
    pub kind: ContactKind,
    pub reflex_edge_count: usize,
}

/// Which rectangle bound produces each side of the contact: the lower
/// brick's face (`A`), the upper's (`B`), or both (`Flush`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    A,
    B,
    Flush,
}

fn side_labels(r: &ContactRect, lower: &Brick, upper: &Brick) -> [Side; 4] {
    let _ = r;
    let lab = |a: i64, b: i64, is_low: bool| -> Side {
        if a == b {
            Side::Flush
        } else if (is_low && a > b) || (!is_low && a < b) {
            Side::A
        } else {
            Side::B
        }
    };
    let (alx, aux) = (lower.range(Axis::X), upper.range(Axis::X));
    let (aly, auy) = (lower.range(Axis::Y), upper.range(Axis::Y));
    [
        lab(alx.lo, aux.lo, true),  // west
        lab(alx.hi, aux.hi, false), // east
        lab(aly.lo, auy.lo, true),  // south
        lab(aly.hi, auy.hi, false), // north
    ]
}

/// Classify a contact rectangle from the two bricks' coordinates alone.
pub fn classify_contact(r: &ContactRect, lower: &Brick, upper: &Brick) -> ContactClass {
    let labels = side_labels(r, lower, upper);
    let n_a = labels.iter().filter(|&&s| s == Side::A).count();
    let n_b = labels.iter().filter(|&&s| s == Side::B).count();
    let reflex = n_a + n_b;
    let kind = match (n_a, n_b) {
        (4, 0) => ContactKind::Collar, // lower's whole top strictly inside upper
        (0, 4) => ContactKind::Collar,
        (1, 0) => ContactKind::PrimitiveD, // upper overhangs one side
        (0, 1) => ContactKind::PrimitiveI, // lower keeps going past one side
        _ => ContactKind::Other,
    };
    ContactClass {
        kind,
        reflex_edge_count: reflex,
    }
}

/// Number of collars.
pub fn count_collars(contacts: &[ContactRect], bricks: &[Brick]) -> usize {
    contacts
        .iter()
        .filter(|c| {
            classify_contact(c, &bricks[c.lower], &bricks[c.upper]).kind == ContactKind::Collar
        })
        .count()
}

/// Structural summary of a connected set of bricks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeInfo {
    pub is_stack: bool,
    pub is_castle: bool,
    pub is_double_castle: bool,
    /// Base brick id when the component is a castle.
    pub base_brick: Option<usize>,
    /// Axis all reflex edges are parallel to; `Some(None)` means a prism
    /// with no reflex edges at all, `None` means not a prism.
    pub prism: Option<Option<Axis>>,
    /// For prisms: the axis when the cross-section is monotone.
    pub monotone: Option<Axis>,
}

fn attachment_counts(
    comp: &[usize],
    bricks: &[Brick],
    contacts: &[ContactRect],
    graph: &BrickGraph,
) -> BTreeMap<usize, (usize, usize)> {
    let mut counts: BTreeMap<usize, (usize, usize)> = comp.iter().map(|&b| (b, (0, 0))).collect();
    let in_comp: std::collections::BTreeSet<usize> = comp.iter().copied().collect();
    for &b in comp {
        for &(nb, ci) in &graph.adj[b] {
            if !in_comp.contains(&nb) {
                continue;
            }
            let c = &contacts[ci];
            let above = c.lower == b;
            let e = counts.get_mut(&b).unwrap();
            if above {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
            let _ = bricks;
        }
    }
    counts
}

/// Structural predicates for one connected component of the brick graph.
pub fn shape_info(
    comp: &[usize],
    bricks: &[Brick],
    contacts: &[ContactRect],
    graph: &BrickGraph,
    reflex_axes: &[Axis],
) -> ShapeInfo {
    let in_comp: std::collections::BTreeSet<usize> = comp.iter().copied().collect();
    let comp_contacts: Vec<usize> = (0..contacts.len())
        .filter(|&ci| in_comp.contains(&contacts[ci].lower) && in_comp.contains(&contacts[ci].upper))
        .collect();
    let all_primitive = comp_contacts.iter().all(|&ci| {
        let c = &contacts[ci];
        matches!(
            classify_contact(c, &bricks[c.lower], &bricks[c.upper]).kind,
            ContactKind::PrimitiveD | ContactKind::PrimitiveI
        )
    });
    let is_tree = comp_contacts.len() + 1 == comp.len();
    let is_stack = all_primitive && is_tree;

    let counts = attachment_counts(comp, bricks, contacts, graph);
    let castle_base = if is_stack {
        castle_base_of(comp, &counts)
    } else {
        None
    };
    let is_castle = castle_base.is_some();

    // Double castle: one contact joins an upright castle above to an
    // upside-down castle below.
    let mut is_double_castle = false;
    if is_stack && !is_castle && comp.len() >= 2 {
        'outer: for &ci in &comp_contacts {
            let c = &contacts[ci];
            if split_is_double_castle(comp, c, contacts, graph) {
                is_double_castle = true;
                break 'outer;
            }
        }
    }

    // Prism status: all reflex edges parallel to one horizontal axis.
    let mut axes: Vec<Axis> = reflex_axes.to_vec();
    axes.sort_unstable();
    axes.dedup();
    let prism = match axes.len() {
        0 => Some(None),
        1 => Some(Some(axes[0])),
        _ => None,
    };
    let monotone = match prism {
        Some(axis) => monotone_axis(comp, bricks, axis),
        None => None,
    };

    ShapeInfo {
        is_stack,
        is_castle,
        is_double_castle,
        base_brick: castle_base,
        prism,
        monotone,
    }
}

fn castle_base_of(comp: &[usize], counts: &BTreeMap<usize, (usize, usize)>) -> Option<usize> {
    // Upright castle: exactly one brick has nothing below, every brick has
    // zero or two bricks on its top face, and nothing else hangs below.
    let mut base = None;
    for (&b, &(above, below)) in counts {
        if !(above == 0 || above == 2) || below > 1 {
            return None;
        }
        if below == 0 {
            if base.is_some() {
                return None;
            }
            base = Some(b);
        }
    }
    let _ = comp;
    base
}

fn split_is_double_castle(
    comp: &[usize],
    joint: &ContactRect,
    contacts: &[ContactRect],
    graph: &BrickGraph,
) -> bool {
    // Upper side from joint.upper going up must be an upright castle,
    // lower side from joint.lower going down an upside-down one.
    directed_castle(comp, joint.upper, joint.lower, true, contacts, graph)
        && directed_castle(comp, joint.lower, joint.upper, false, contacts, graph)
}

/// Is the subtree reached from `root` (not crossing back to `from`) a castle
/// growing upward (`up`) or downward?
pub(crate) fn directed_castle(
    comp: &[usize],
    root: usize,
    from: usize,
    up: bool,
    contacts: &[ContactRect],
    graph: &BrickGraph,
) -> bool {
    let in_comp: std::collections::BTreeSet<usize> = comp.iter().copied().collect();
    let mut stack = vec![(root, from)];
    while let Some((v, parent)) = stack.pop() {
        let mut children = Vec::new();
        for &(w, ci) in &graph.adj[v] {
            if w == parent || !in_comp.contains(&w) {
                continue;
            }
            let c = &contacts[ci];
            let w_is_above = c.lower == v;
            if w_is_above != up {
                return false; // growth in the wrong direction
            }
            children.push(w);
        }
        if !(children.is_empty() || children.len() == 2) {
            return false;
        }
        for w in children {
            stack.push((w, v));
        }
    }
    true
}

/// Monotonicity of a prism component: along the horizontal axis
/// perpendicular to `axis`, every vertical line must meet the union of
/// bricks in at most one segment.
fn monotone_axis(comp: &[usize], bricks: &[Brick], axis: Option<Axis>) -> Option<Axis> {
    let axis = axis.unwrap_or(Axis::Y);
    let sweep = axis.horizontal_perp();
    let mut cuts: Vec<i64> = Vec::new();
    for &b in comp {
        let r = bricks[b].range(sweep);
        cuts.push(r.lo);
        cuts.push(r.hi);
    }
    cuts.sort_unstable();
    cuts.dedup();
    for w in cuts.windows(2) {
        let cell = Interval::new(w[0], w[1]);
        let mut zs: Vec<Interval> = comp
            .iter()
            .filter(|&&b| bricks[b].range(sweep).overlap(cell).is_some())
            .map(|&b| bricks[b].range(Axis::Z))
            .collect();
        if zs.is_empty() {
            continue;
        }
        zs.sort_unstable_by_key(|i| (i.lo, i.hi));
        let mut hi = zs[0].hi;
        for iv in &zs[1..] {
            if iv.lo > hi {
                return None; // gap: two segments on one vertical line
            }
            hi = hi.max(iv.hi);
        }
    }
    Some(axis)
}

/// Per-subtree prism information for castle guarding: for every directed
/// edge away from the base, whether the dangling sub-castle is a prism and
/// the direction of its reflex edges (`None` = no reflex edges yet).
#[derive(Clone, Debug, Default)]
pub struct PrismInfo {
    map: BTreeMap<(usize, usize), Option<Option<Axis>>>,
}

impl PrismInfo {
    pub fn is_prism(&self, parent: usize, child: usize) -> bool {
        self.map.get(&(parent, child)).copied().flatten().is_some()
    }

    pub fn axis(&self, parent: usize, child: usize) -> Option<Axis> {
        self.map.get(&(parent, child)).copied().flatten().flatten()
    }

    pub fn merge_from(&mut self, other: PrismInfo) {
        self.map.extend(other.map);
    }
}

/// Precompute prism status for all subtrees hanging off `root` away from
/// `from`, over the live edges listed in `adj`.
pub fn prism_info_precompute(
    adj: &BTreeMap<usize, Vec<(usize, usize)>>,
    contacts: &[ContactRect],
    edges: &crate::model::EdgeSet,
    root: usize,
    from: usize,
) -> PrismInfo {
    let mut info = PrismInfo::default();
    let top = subtree_prism(adj, contacts, edges, root, from, &mut info);
    info.map.insert((from, root), top);
    info
}

fn subtree_prism(
    adj: &BTreeMap<usize, Vec<(usize, usize)>>,
    contacts: &[ContactRect],
    edges: &crate::model::EdgeSet,
    v: usize,
    parent: usize,
    info: &mut PrismInfo,
) -> Option<Option<Axis>> {
    let mut status: Option<Option<Axis>> = Some(None);
    for &(w, ci) in adj.get(&v).into_iter().flatten() {
        if w == parent {
            continue;
        }
        let sub = subtree_prism(adj, contacts, edges, w, v, info);
        info.map.insert((v, w), sub);
        let contact_axis = contacts[ci]
            .reflex_edges
            .first()
            .map(|&ei| edges.edges[ei].axis);
        status = match (status, sub, contact_axis) {
            (Some(cur), Some(sub_ax), Some(ca)) => {
                let mut all = vec![ca];
                if let Some(a) = cur {
                    all.push(a);
                }
                if let Some(a) = sub_ax {
                    all.push(a);
                }
                all.dedup();
                if all.iter().all(|&a| a == all[0]) {
                    Some(Some(all[0]))
                } else {
                    None
                }
            }
            _ => None,
        };
    }
    status
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::decompose;
    use crate::gen;
    use crate::model::{classify_edges, Adjacency};

    fn full(p: &crate::model::Polyhedron) -> (crate::decomp::Decomposition, crate::model::EdgeSet) {
        let adj = Adjacency::build(p).unwrap();
        let es = classify_edges(p, &adj).unwrap();
        let d = decompose(p, &adj, &es).unwrap();
        (d, es)
    }

    fn whole_shape(p: &crate::model::Polyhedron) -> ShapeInfo {
        let (d, es) = full(p);
        let comp: Vec<usize> = (0..d.bricks.len()).collect();
        let axes: Vec<Axis> = es.reflex_axes.iter().copied().collect();
        shape_info(&comp, &d.bricks, &d.contacts, &d.graph, &axes)
    }

    #[test]
    fn figure2_contact_is_other_with_two_reflex_edges() {
        let p = gen::gen_figure2();
        let (d, _) = full(&p);
        let c = &d.contacts[0];
        let cls = classify_contact(c, &d.bricks[c.lower], &d.bricks[c.upper]);
        assert_eq!(cls.kind, ContactKind::Other);
        assert_eq!(cls.reflex_edge_count, 2);
        assert_eq!(c.reflex_edges.len(), 2);
        assert_eq!(count_collars(&d.contacts, &d.bricks), 0);
    }

    #[test]
    fn wedding_cake_has_two_collars() {
        let bricks = [
            gen::BrickBox::new(crate::geom::Point3::new(0, 0, 0), crate::geom::Point3::new(8, 8, 1)),
            gen::BrickBox::new(crate::geom::Point3::new(1, 1, 1), crate::geom::Point3::new(7, 7, 2)),
            gen::BrickBox::new(crate::geom::Point3::new(2, 2, 2), crate::geom::Point3::new(6, 6, 3)),
        ];
        let p = gen::emit_from_bricks(&bricks);
        let (d, _) = full(&p);
        assert_eq!(count_collars(&d.contacts, &d.bricks), 2);
    }

    #[test]
    fn single_box_is_trivial_castle_and_prism() {
        let info = whole_shape(&gen::gen_cuboid(2, 2, 2));
        assert!(info.is_castle);
        assert!(info.is_stack);
        assert_eq!(info.prism, Some(None));
        assert!(!info.is_double_castle);
    }

    #[test]
    fn two_bricks_primitive_contact_is_double_castle() {
        let p = gen::gen_stack(1, 2);
        let info = whole_shape(&p);
        assert!(info.is_stack);
        assert!(info.is_double_castle);
        assert!(!info.is_castle);
    }

    #[test]
    fn comb_is_monotone_prism_along_y() {
        let info = whole_shape(&gen::gen_comb(3));
        assert_eq!(info.prism, Some(Some(Axis::Y)));
        assert_eq!(info.monotone, Some(Axis::Y));
        // Teeth contacts are primitive only at the flush ends; middle teeth
        // produce two reflex edges each, so the comb is not a stack.
        assert!(!info.is_stack);
    }

    #[test]
    fn castle_shape_detected() {
        let p = gen::gen_castle(4, 3);
        let info = whole_shape(&p);
        assert!(info.is_castle, "{info:?}");
        let (d, _) = full(&p);
        assert_eq!(d.bricks.len(), 7);
        assert_eq!(d.contacts.len(), 6);
    }

    #[test]
    fn double_castle_shape_detected() {
        let p = gen::gen_double_castle(4, 2);
        let info = whole_shape(&p);
        assert!(info.is_double_castle, "{info:?}");
        assert!(info.is_stack);
    }

    #[test]
    fn primitive_kinds_mirror_under_z_flip() {
        // An end slab on top is primitive_i; the mirrored arrangement
        // (overhang below) is primitive_d.
        let top = [
            gen::BrickBox::new(crate::geom::Point3::new(0, 0, 0), crate::geom::Point3::new(4, 2, 1)),
            gen::BrickBox::new(crate::geom::Point3::new(0, 0, 1), crate::geom::Point3::new(2, 2, 2)),
        ];
        let p = gen::emit_from_bricks(&top);
        let (d, _) = full(&p);
        let c = &d.contacts[0];
        let k1 = classify_contact(c, &d.bricks[c.lower], &d.bricks[c.upper]).kind;
        assert_eq!(k1, ContactKind::PrimitiveI);

        let bot = [
            gen::BrickBox::new(crate::geom::Point3::new(0, 0, 1), crate::geom::Point3::new(4, 2, 2)),
            gen::BrickBox::new(crate::geom::Point3::new(0, 0, 0), crate::geom::Point3::new(2, 2, 1)),
        ];
        let p = gen::emit_from_bricks(&bot);
        let (d, _) = full(&p);
        let c = &d.contacts[0];
        let k2 = classify_contact(c, &d.bricks[c.lower], &d.bricks[c.upper]).kind;
        assert_eq!(k2, ContactKind::PrimitiveD);
    }
}
