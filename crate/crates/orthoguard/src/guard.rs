//! Guard placement: non-primitive resolution, forest reduction, parity
//! adjustment, odd-cut partition, and the monotone / castle / double-castle
//! guarding procedures. All surgery happens on the brick graph; the
//! geometry is never cut.

use crate::classify::{classify_contact, count_collars, prism_info_precompute, ContactKind, PrismInfo};
use crate::decomp::{decompose, Brick, ContactRect, DecompError, Decomposition};
use crate::geom::{Axis, Rotation};
use crate::model::{
    classify_edges, euler_genus, normalize_orientation, validate, Adjacency, Convexity, Edge,
    EdgeSet, ModelError, Polyhedron,
};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GuardError {
    #[error("input does not validate: {0}")]
    Validation(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error("isolated brick borders no contact rectangle")]
    IsolatedConvexBrick,
    #[error("pipeline component {0:?} is not a double castle")]
    ComponentNotDoubleCastle(Vec<usize>),
    #[error("internal pipeline invariant broken: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GuardMode {
    Open,
    Closed,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GuardStatus {
    Convex,
    Guarded,
}

/// Audit block attached to every guard set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub m: usize,
    pub r: usize,
    pub g: u32,
    pub b: usize,
    /// floor((r - g) / 2) - b + 1
    #[serde(rename = "boundR")]
    pub bound_r: i64,
    /// floor((m - 4) / 8) + g
    #[serde(rename = "boundM")]
    pub bound_m: i64,
    pub count: usize,
}

#[derive(Clone, Debug)]
pub struct GuardSet {
    /// Guard edges in the coordinates of the input document.
    pub guards: Vec<Edge>,
    pub mode: GuardMode,
    pub status: GuardStatus,
    pub certificate: Certificate,
    /// Rotation that was applied to normalize the input.
    pub rotation: Rotation,
}

pub fn bound_r(r: usize, g: u32, b: usize) -> i64 {
    (r as i64 - g as i64).div_euclid(2) - b as i64 + 1
}

pub fn bound_m(m: usize, g: u32) -> i64 {
    (m as i64 - 4).div_euclid(8) + g as i64
}

/// Why an edge of the working brick graph was deleted.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CutFlag {
    NonPrimitiveCut,
    ForestCut,
    ParityCut,
    OddCut,
}

/// Working state of one pipeline run, exposed for inspection and tests.
#[derive(Clone, Debug, Default)]
pub struct PipelineState {
    /// Per contact: deletion reason, None while alive.
    pub cut: Vec<Option<CutFlag>>,
    /// Bricks that received a direct guard during parity adjustment.
    pub direct_guarded: Vec<usize>,
    /// Final double-castle components.
    pub components: Vec<Vec<usize>>,
}

struct Graph<'a> {
    contacts: &'a [ContactRect],
    adj: Vec<Vec<(usize, usize)>>,
    alive: Vec<bool>,
    removed_nodes: Vec<bool>,
}

impl<'a> Graph<'a> {
    fn new(d: &'a Decomposition) -> Self {
        Graph {
            contacts: &d.contacts,
            adj: d.graph.adj.clone(),
            alive: vec![true; d.contacts.len()],
            removed_nodes: vec![false; d.bricks.len()],
        }
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj[v]
            .iter()
            .copied()
            .filter(move |&(w, ci)| self.alive[ci] && !self.removed_nodes[w])
    }

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.removed_nodes[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for (w, _) in self.neighbors(v) {
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
}

/// Delete the graph edges of all non-primitive contact rectangles.
fn resolve_nonprimitive(g: &mut Graph, state: &mut PipelineState, bricks: &[Brick]) {
    for (ci, c) in g.contacts.iter().enumerate() {
        let kind = classify_contact(c, &bricks[c.lower], &bricks[c.upper]).kind;
        if !matches!(kind, ContactKind::PrimitiveD | ContactKind::PrimitiveI) {
            g.alive[ci] = false;
            state.cut[ci] = Some(CutFlag::NonPrimitiveCut);
        }
    }
}

/// Depth-first traversal deleting edges that lead to visited nodes.
fn spanning_forest(g: &mut Graph, state: &mut PipelineState) {
    let n = g.adj.len();
    let mut visited = vec![false; n];
    for s in 0..n {
        if visited[s] || g.removed_nodes[s] {
            continue;
        }
        visited[s] = true;
        let mut stack = vec![s];
        let mut via: BTreeMap<usize, usize> = BTreeMap::new();
        while let Some(v) = stack.pop() {
            let nbrs: Vec<(usize, usize)> = g.neighbors(v).collect();
            for (w, ci) in nbrs {
                if Some(&ci) == via.get(&v) {
                    continue; // tree edge back to the parent
                }
                if visited[w] {
                    g.alive[ci] = false;
                    state.cut[ci] = Some(CutFlag::ForestCut);
                } else {
                    visited[w] = true;
                    via.insert(w, ci);
                    stack.push(w);
                }
            }
        }
    }
}

/// Make every tree even-sized: odd trees lose one leaf edge, and every
/// isolated brick gets one direct guard on a reflex edge of a bordering
/// contact rectangle.
fn parity_adjust(
    g: &mut Graph,
    state: &mut PipelineState,
    bricks: &[Brick],
    edges: &EdgeSet,
    guards: &mut BTreeSet<usize>,
) -> Result<(), GuardError> {
    for comp in g.components() {
        if comp.len() >= 2 && comp.len() % 2 == 1 {
            let leaf = comp
                .iter()
                .copied()
                .filter(|&v| g.degree(v) == 1)
                .min_by_key(|&v| (bricks[v].min, bricks[v].max, v))
                .ok_or_else(|| GuardError::Internal("odd tree without leaf".into()))?;
            let (_, ci) = g.neighbors(leaf).next().unwrap();
            g.alive[ci] = false;
            state.cut[ci] = Some(CutFlag::ParityCut);
        }
    }
    // Collect isolated nodes (from non-primitive cuts or the parity step).
    let singles: Vec<usize> = g
        .components()
        .into_iter()
        .filter(|c| c.len() == 1)
        .map(|c| c[0])
        .collect();
    for v in singles {
        let mut candidates: Vec<usize> = Vec::new();
        for &(_, ci) in &g.adj[v] {
            candidates.extend(g.contacts[ci].reflex_edges.iter().copied());
        }
        let pick = candidates
            .into_iter()
            .min_by_key(|&ei| (edges.edges[ei].lex_key(), ei))
            .ok_or(GuardError::IsolatedConvexBrick)?;
        guards.insert(pick);
        state.direct_guarded.push(v);
        g.removed_nodes[v] = true;
    }
    Ok(())
}

/// Delete every edge whose dangling subtree has even size; the remaining
/// components are double castles.
fn odd_cut_partition(g: &mut Graph, state: &mut PipelineState) -> Result<(), GuardError> {
    for comp in g.components() {
        if comp.len() % 2 != 0 {
            return Err(GuardError::Internal(format!(
                "odd component of size {} after parity adjustment",
                comp.len()
            )));
        }
        let root = comp[0];
        // Iterative post-order subtree sizes.
        let mut order = Vec::new();
        let mut parent: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut stack = vec![root];
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        seen.insert(root);
        while let Some(v) = stack.pop() {
            order.push(v);
            for (w, ci) in g.neighbors(v) {
                if seen.insert(w) {
                    parent.insert(w, (v, ci));
                    stack.push(w);
                }
            }
        }
        let mut size: BTreeMap<usize, usize> = comp.iter().map(|&v| (v, 1)).collect();
        for &v in order.iter().rev() {
            if let Some(&(pv, _)) = parent.get(&v) {
                *size.get_mut(&pv).unwrap() += size[&v];
            }
        }
        for (&v, &(_, ci)) in &parent {
            if size[&v] % 2 == 0 {
                g.alive[ci] = false;
                state.cut[ci] = Some(CutFlag::OddCut);
            }
        }
    }
    Ok(())
}

/// Sort reflex edges along the horizontal axis perpendicular to their common
/// direction and guard the odd-indexed ones, plus the last one when the
/// count is even.
pub fn guard_monotone(edge_ids: &[usize], edges: &EdgeSet) -> Vec<usize> {
    assert!(!edge_ids.is_empty(), "monotone guarding needs r > 0");
    let axis = edges.edges[edge_ids[0]].axis;
    debug_assert!(edge_ids.iter().all(|&i| edges.edges[i].axis == axis));
    let perp = axis.horizontal_perp();
    let mut sorted: Vec<usize> = edge_ids.to_vec();
    sorted.sort_by_key(|&i| {
        let e = &edges.edges[i];
        (e.a.get(perp), e.lex_key(), i)
    });
    let r = sorted.len();
    let mut out: Vec<usize> = sorted.iter().copied().step_by(2).collect();
    if r % 2 == 0 {
        out.push(sorted[r - 1]);
    }
    out
}

struct CastleCtx<'a> {
    adj: &'a BTreeMap<usize, Vec<(usize, usize)>>,
    contacts: &'a [ContactRect],
    edges: &'a EdgeSet,
    info: &'a PrismInfo,
}

impl<'a> CastleCtx<'a> {
    fn children(&self, v: usize, from: usize) -> Vec<(usize, usize)> {
        let mut c: Vec<(usize, usize)> = self
            .adj
            .get(&v)
            .into_iter()
            .flatten()
            .copied()
            .filter(|&(w, _)| w != from)
            .collect();
        c.sort_by_key(|&(_, ci)| ci);
        c
    }

    fn subtree_reflex_edges(&self, v: usize, from: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(v, from)];
        while let Some((x, p)) = stack.pop() {
            for (w, ci) in self.children(x, p) {
                out.extend(self.contacts[ci].reflex_edges.iter().copied());
                stack.push((w, x));
            }
        }
        out.sort_unstable();
        out
    }

    fn contact_axis(&self, ci: usize) -> Axis {
        self.edges.edges[self.contacts[ci].reflex_edges[0]].axis
    }

    fn parallel(&self, parent: usize, child: usize, e_axis: Axis) -> bool {
        match self.info.axis(parent, child) {
            None => true, // no reflex edges in the subtree
            Some(a) => a == e_axis,
        }
    }
}

/// Lemma-2 guarding of a castle that is not a prism: at most half of its
/// reflex edges receive guards.
fn guard_castle(
    ctx: &CastleCtx,
    base: usize,
    from: usize,
    guards: &mut BTreeSet<usize>,
) -> Result<(), GuardError> {
    let children = ctx.children(base, from);
    if children.len() != 2 {
        return Err(GuardError::Internal(format!(
            "non-prism castle base {base} has {} children",
            children.len()
        )));
    }
    let (c1, ci1) = children[0];
    let (c2, ci2) = children[1];
    let e1 = ctx.contacts[ci1].reflex_edges[0];
    let e2 = ctx.contacts[ci2].reflex_edges[0];
    let p1 = ctx.info.is_prism(base, c1);
    let p2 = ctx.info.is_prism(base, c2);

    match (p1, p2) {
        (false, false) => {
            guard_castle(ctx, c1, base, guards)?;
            guard_castle(ctx, c2, base, guards)?;
            guards.insert(e1);
        }
        (true, false) | (false, true) => {
            // Normalize: cp is the prism child, cn the other.
            let (cp, cip, ep, cn) = if p1 { (c1, ci1, e1, c2) } else { (c2, ci2, e2, c1) };
            guard_castle(ctx, cn, base, guards)?;
            if ctx.parallel(base, cp, ctx.contact_axis(cip)) {
                // Sub-castle plus the base brick form a monotone polyhedron.
                let mut ids = ctx.subtree_reflex_edges(cp, base);
                ids.push(ep);
                guards.extend(guard_monotone(&ids, ctx.edges));
            } else {
                guards.insert(ep);
            }
        }
        (true, true) => {
            // At least one subtree is orthogonal to its contact edge,
            // otherwise the whole castle would be a prism.
            let perp1 = !ctx.parallel(base, c1, ctx.contact_axis(ci1));
            let perp2 = !ctx.parallel(base, c2, ctx.contact_axis(ci2));
            let (cperp_e, cpar, cipar, epar) = if perp1 {
                (e1, c2, ci2, e2)
            } else if perp2 {
                (e2, c1, ci1, e1)
            } else {
                return Err(GuardError::Internal(
                    "castle flagged non-prism but both subtrees are parallel".into(),
                ));
            };
            guards.insert(cperp_e);
            if ctx.parallel(base, cpar, ctx.contact_axis(cipar)) {
                let mut ids = ctx.subtree_reflex_edges(cpar, base);
                ids.push(epar);
                guards.extend(guard_monotone(&ids, ctx.edges));
            } else {
                guards.insert(epar);
            }
        }
    }
    Ok(())
}

/// Is the subtree from `root` away from `from` a castle growing in the
/// given direction over the live adjacency?
fn directed_castle_alive(
    adj: &BTreeMap<usize, Vec<(usize, usize)>>,
    contacts: &[ContactRect],
    root: usize,
    from: usize,
    up: bool,
) -> bool {
    let mut stack = vec![(root, from)];
    while let Some((v, parent)) = stack.pop() {
        let mut kids = 0usize;
        for &(w, ci) in adj.get(&v).into_iter().flatten() {
            if w == parent {
                continue;
            }
            let w_is_above = contacts[ci].lower == v;
            if w_is_above != up {
                return false;
            }
            kids += 1;
            stack.push((w, v));
        }
        if kids != 0 && kids != 2 {
            return false;
        }
    }
    true
}

/// Lemma-3 guarding of one double-castle component.
fn guard_double_castle(
    comp: &[usize],
    g: &Graph,
    edges: &EdgeSet,
    guards: &mut BTreeSet<usize>,
) -> Result<(), GuardError> {
    let in_comp: BTreeSet<usize> = comp.iter().copied().collect();
    let mut adj: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    let mut edge_list: Vec<usize> = Vec::new();
    for &v in comp {
        for (w, ci) in g.neighbors(v) {
            if in_comp.contains(&w) {
                adj.entry(v).or_default().push((w, ci));
                if v < w {
                    edge_list.push(ci);
                }
            }
        }
    }
    edge_list.sort_unstable();

    // The joint: the contact whose two sides are an upright castle above
    // and an upside-down castle below.
    let mut joint: Option<usize> = None;
    for &ci in &edge_list {
        let c = &g.contacts[ci];
        if directed_castle_alive(&adj, g.contacts, c.upper, c.lower, true)
            && directed_castle_alive(&adj, g.contacts, c.lower, c.upper, false)
        {
            joint = Some(ci);
            break;
        }
    }
    let Some(joint_ci) = joint else {
        return Err(GuardError::ComponentNotDoubleCastle(comp.to_vec()));
    };
    let jc = &g.contacts[joint_ci];
    let (lo, up) = (jc.lower, jc.upper);
    let e = jc.reflex_edges[0];
    let e_axis = edges.edges[e].axis;

    let mut info = prism_info_precompute(&adj, g.contacts, edges, up, lo);
    let info_lo = prism_info_precompute(&adj, g.contacts, edges, lo, up);
    info_merge(&mut info, info_lo);
    let ctx = CastleCtx {
        adj: &adj,
        contacts: g.contacts,
        edges,
        info: &info,
    };

    let upper_prism = info.is_prism(lo, up);
    let lower_prism = info.is_prism(up, lo);
    let upper_par = upper_prism && ctx.parallel(lo, up, e_axis);
    let lower_par = lower_prism && ctx.parallel(up, lo, e_axis);
    let r_upper = ctx.subtree_reflex_edges(up, lo).len() / 2;
    let r_lower = ctx.subtree_reflex_edges(lo, up).len() / 2;

    match (upper_prism, lower_prism) {
        (false, false) => {
            guard_castle(&ctx, up, lo, guards)?;
            guard_castle(&ctx, lo, up, guards)?;
        }
        (true, false) | (false, true) => {
            let (pr_root, pr_from, pr_r, other_root, other_from) = if upper_prism {
                (up, lo, r_upper, lo, up)
            } else {
                (lo, up, r_lower, up, lo)
            };
            guard_castle(&ctx, other_root, other_from, guards)?;
            if pr_r == 0 {
                guards.insert(e);
            } else {
                let ids = ctx.subtree_reflex_edges(pr_root, pr_from);
                guards.extend(guard_monotone(&ids, edges));
            }
        }
        (true, true) => {
            if upper_par && lower_par {
                // The whole double castle is monotone.
                let mut ids = ctx.subtree_reflex_edges(up, lo);
                ids.extend(ctx.subtree_reflex_edges(lo, up));
                ids.push(e);
                guards.extend(guard_monotone(&ids, edges));
            } else if !upper_par && !lower_par {
                guards.insert(e);
            } else {
                // One half is orthogonal to e and is seen from e; the
                // parallel half is guarded monotonically on its own.
                let (par_root, par_from, par_r) = if upper_par {
                    (up, lo, r_upper)
                } else {
                    (lo, up, r_lower)
                };
                guards.insert(e);
                if par_r > 0 {
                    let ids = ctx.subtree_reflex_edges(par_root, par_from);
                    guards.extend(guard_monotone(&ids, edges));
                }
            }
        }
    }
    Ok(())
}

fn info_merge(dst: &mut PrismInfo, src: PrismInfo) {
    dst.merge_from(src);
}

/// Everything place_guards computed along the way, for stats and tests.
pub struct PlacementTrace {
    pub normalized: Polyhedron,
    pub rotation: Rotation,
    pub decomposition: Decomposition,
    pub edges: EdgeSet,
    pub state: PipelineState,
}

/// Run the full pipeline and return a guard set whose size respects both
/// bounds; the result is identical for open and closed mode.
pub fn place_guards(p: &Polyhedron, mode: GuardMode) -> Result<GuardSet, GuardError> {
    place_guards_traced(p, mode).map(|(gs, _)| gs)
}

pub fn place_guards_traced(
    p: &Polyhedron,
    mode: GuardMode,
) -> Result<(GuardSet, PlacementTrace), GuardError> {
    let report = validate(p);
    if !report.ok() {
        return Err(GuardError::Validation(
            report
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    let adj0 = Adjacency::build(p)?;
    let edges0 = classify_edges(p, &adj0)?;
    let (np, rotation) = normalize_orientation(p, &edges0)?;
    let (np, adj, edges) = if rotation == Rotation::Identity {
        (p.clone(), adj0, edges0)
    } else {
        let adj = Adjacency::build(&np)?;
        let edges = classify_edges(&np, &adj)?;
        (np, adj, edges)
    };
    let g = euler_genus(&np, &adj)?;
    let m = edges.m();
    let r = edges.r();

    let d = decompose(&np, &adj, &edges)?;
    let b = count_collars(&d.contacts, &d.bricks);
    let g_graph = crate::decomp::graph_genus(&d.graph);
    if g != g_graph {
        return Err(GuardError::Internal(format!(
            "euler genus {g} != brick-graph genus {g_graph}"
        )));
    }

    let certificate = |count: usize| Certificate {
        m,
        r,
        g,
        b,
        bound_r: bound_r(r, g, b),
        bound_m: bound_m(m, g),
        count,
    };

    let mut state = PipelineState {
        cut: vec![None; d.contacts.len()],
        ..Default::default()
    };

    if r == 0 {
        let gs = GuardSet {
            guards: Vec::new(),
            mode,
            status: GuardStatus::Convex,
            certificate: certificate(0),
            rotation,
        };
        let trace = PlacementTrace {
            normalized: np,
            rotation,
            decomposition: d,
            edges,
            state,
        };
        return Ok((gs, trace));
    }

    let mut graph = Graph::new(&d);
    let mut guard_ids: BTreeSet<usize> = BTreeSet::new();
    resolve_nonprimitive(&mut graph, &mut state, &d.bricks);
    spanning_forest(&mut graph, &mut state);
    parity_adjust(&mut graph, &mut state, &d.bricks, &edges, &mut guard_ids)?;
    odd_cut_partition(&mut graph, &mut state)?;

    let comps = graph.components();
    for comp in &comps {
        if comp.len() == 1 {
            return Err(GuardError::Internal(
                "isolated node survived parity adjustment".into(),
            ));
        }
        guard_double_castle(comp, &graph, &edges, &mut guard_ids)?;
    }
    state.components = comps;

    // All guards must be reflex edges.
    for &gi in &guard_ids {
        if edges.edges[gi].convexity != Convexity::Reflex {
            return Err(GuardError::Internal("guard on a convex edge".into()));
        }
    }

    let inv = rotation.inverse();
    let guards: Vec<Edge> = guard_ids
        .iter()
        .map(|&gi| {
            let e = &edges.edges[gi];
            let (a, b) = (inv.apply(e.a), inv.apply(e.b));
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            Edge {
                a,
                b,
                axis: inv.apply_axis(e.axis),
                convexity: Convexity::Reflex,
            }
        })
        .collect();

    let count = guards.len();
    debug_assert!(count as i64 <= bound_r(r, g, b).min(bound_m(m, g)));
    let gs = GuardSet {
        guards,
        mode,
        status: GuardStatus::Guarded,
        certificate: certificate(count),
        rotation,
    };
    let trace = PlacementTrace {
        normalized: np,
        rotation,
        decomposition: d,
        edges,
        state,
    };
    Ok((gs, trace))
}

/// Reflex edge ids of one double-castle component, for tests.
pub fn component_reflex_edges(
    comp: &[usize],
    contacts: &[ContactRect],
    cut: &[Option<CutFlag>],
) -> Vec<usize> {
    let in_comp: BTreeSet<usize> = comp.iter().copied().collect();
    let mut out = Vec::new();
    for (ci, c) in contacts.iter().enumerate() {
        if cut[ci].is_none() && in_comp.contains(&c.lower) && in_comp.contains(&c.upper) {
            out.extend(c.reflex_edges.iter().copied());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::geom::Point3;

    fn ids(edges: &EdgeSet, picks: &[usize]) -> Vec<usize> {
        let mut v = picks.to_vec();
        v.sort_unstable();
        let _ = edges;
        v
    }

    fn synthetic_parallel_edges(coords: &[i64]) -> EdgeSet {
        let edges = coords
            .iter()
            .map(|&x| Edge {
                a: Point3::new(x, 0, 1),
                b: Point3::new(x, 4, 1),
                axis: Axis::Y,
                convexity: Convexity::Reflex,
            })
            .collect();
        EdgeSet {
            edges,
            reflex_axes: [Axis::Y].into_iter().collect(),
        }
    }

    #[test]
    fn monotone_rule_odd_and_even() {
        let es = synthetic_parallel_edges(&[1, 2, 5]);
        assert_eq!(guard_monotone(&[0, 1, 2], &es), vec![0, 2]);
        let es = synthetic_parallel_edges(&[1, 2, 5, 9]);
        assert_eq!(guard_monotone(&[0, 1, 2, 3], &es), vec![0, 2, 3]);
        let es = synthetic_parallel_edges(&[7]);
        assert_eq!(guard_monotone(&[0], &es), vec![0]);
    }

    #[test]
    fn cube_is_convex() {
        let gs = place_guards(&gen::gen_cuboid(2, 2, 2), GuardMode::Open).unwrap();
        assert_eq!(gs.status, GuardStatus::Convex);
        assert!(gs.guards.is_empty());
    }

    #[test]
    fn figure2_within_bounds() {
        let gs = place_guards(&gen::gen_figure2(), GuardMode::Open).unwrap();
        assert_eq!(gs.certificate.r, 2);
        assert_eq!(gs.certificate.bound_r, 2);
        assert!(gs.certificate.count >= 1 && gs.certificate.count as i64 <= 2);
    }

    #[test]
    fn comb_counts_match_floor_r_half_plus_one() {
        for k in 2..=6i64 {
            let gs = place_guards(&gen::gen_comb(k), GuardMode::Open).unwrap();
            let r = gs.certificate.r as i64;
            assert_eq!(r, 2 * k - 2);
            assert_eq!(gs.certificate.count as i64, r / 2 + 1, "k={k}");
        }
    }

    #[test]
    fn open_and_closed_modes_agree() {
        let p = gen::gen_stack(11, 9);
        let a = place_guards(&p, GuardMode::Open).unwrap();
        let b = place_guards(&p, GuardMode::Closed).unwrap();
        let ea: Vec<_> = a.guards.iter().map(|e| (e.a, e.b)).collect();
        let eb: Vec<_> = b.guards.iter().map(|e| (e.a, e.b)).collect();
        assert_eq!(ea, eb);
    }

    #[test]
    fn bounds_hold_on_families() {
        let mut checked = 0;
        for seed in 0..10u64 {
            for p in [
                gen::gen_stack(seed, 3 + (seed as usize % 9)),
                gen::gen_castle(seed, 2 + (seed % 2) as u32),
                gen::gen_double_castle(seed, 2),
                gen::gen_composite(seed, 6),
            ] {
                let gs = place_guards(&p, GuardMode::Open).unwrap();
                let c = gs.certificate;
                if c.r == 0 {
                    continue;
                }
                assert!(
                    (c.count as i64) <= c.bound_r.min(c.bound_m),
                    "violated: {c:?} seed {seed}"
                );
                checked += 1;
            }
        }
        assert!(checked > 20);
        let _ = ids(&EdgeSet::default(), &[]);
    }

    #[test]
    fn ring_guards_within_bounds() {
        for loops in 1..=3 {
            let gs = place_guards(&gen::gen_ring(4, loops), GuardMode::Open).unwrap();
            let c = gs.certificate;
            assert_eq!(c.g, loops);
            assert!((c.count as i64) <= c.bound_r.min(c.bound_m), "{c:?}");
        }
    }

    #[test]
    fn three_reflex_directions_rejected() {
        let p = crate::model::parse_polyhedron(crate::testutil::THREE_REFLEX_CORNER).unwrap();
        match place_guards(&p, GuardMode::Open) {
            Err(GuardError::Model(ModelError::ThreeReflexDirections)) => {}
            other => panic!("expected ThreeReflexDirections, got {other:?}"),
        }
    }
}
