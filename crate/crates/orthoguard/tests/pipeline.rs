//! End-to-end pipeline checks across the generated families: bounds,
//! coverage, genus agreement and determinism.

use orthoguard::classify::{classify_contact, ContactKind};
use orthoguard::decomp::{decompose, graph_genus};
use orthoguard::gen;
use orthoguard::guard::{place_guards, GuardMode, GuardStatus};
use orthoguard::model::{
    classify_edges, euler_genus, normalize_orientation, validate, write_polyhedron, Adjacency,
    Polyhedron,
};
use orthoguard::verify::coverage_check_on;

fn family_suite(small: bool) -> Vec<(String, Polyhedron)> {
    let mut out: Vec<(String, Polyhedron)> = Vec::new();
    let seeds: Vec<u64> = if small { (0..6).collect() } else { (0..20).collect() };
    for &s in &seeds {
        out.push((format!("stack-{s}"), gen::gen_stack(s, 4 + (s as usize * 3) % 12)));
        out.push((format!("castle-{s}"), gen::gen_castle(s, 2 + (s % 3) as u32)));
        out.push((format!("dcastle-{s}"), gen::gen_double_castle(s, 1 + (s % 3) as u32)));
        out.push((format!("composite-{s}"), gen::gen_composite(s, 5 + (s as usize) % 8)));
        out.push((format!("monotone-{s}"), gen::gen_monotone_prism(s, 4 + (s % 5) as i64)));
    }
    for k in 2..=6 {
        out.push((format!("comb-{k}"), gen::gen_comb(k)));
    }
    for loops in 1..=3 {
        out.push((format!("ring-{loops}"), gen::gen_ring(4, loops)));
    }
    out.push(("figure2".into(), gen::gen_figure2()));
    out
}

#[test]
fn every_instance_validates_and_respects_bounds() {
    for (name, p) in family_suite(false) {
        let rep = validate(&p);
        assert!(rep.ok(), "{name}: {:?}", rep.violations);
        let gs = place_guards(&p, GuardMode::Open).unwrap_or_else(|e| {
            panic!("{name}: pipeline failed: {e}");
        });
        let c = gs.certificate;
        if c.r > 0 {
            assert!(
                (c.count as i64) <= c.bound_r,
                "{name}: count {} > boundR {} ({c:?})",
                c.count,
                c.bound_r
            );
            assert!(
                (c.count as i64) <= c.bound_m,
                "{name}: count {} > boundM {} ({c:?})",
                c.count,
                c.bound_m
            );
        } else {
            assert_eq!(gs.status, GuardStatus::Convex);
        }
    }
}

#[test]
fn genus_computations_agree_everywhere() {
    for (name, p) in family_suite(false) {
        let adj = Adjacency::build(&p).unwrap();
        let es = classify_edges(&p, &adj).unwrap();
        let (np, _) = normalize_orientation(&p, &es).unwrap();
        let nadj = Adjacency::build(&np).unwrap();
        let nes = classify_edges(&np, &nadj).unwrap();
        let d = decompose(&np, &nadj, &nes).unwrap();
        let ge = euler_genus(&np, &nadj).unwrap();
        let gg = graph_genus(&d.graph);
        assert_eq!(ge, gg, "{name}");
    }
}

#[test]
fn coverage_passes_in_open_mode() {
    for (name, p) in family_suite(true) {
        let gs = place_guards(&p, GuardMode::Open).unwrap();
        let rep = coverage_check_on(&p, &gs, 3, 16).unwrap();
        assert!(
            rep.pass(),
            "{name}: {} of {} uncovered, first failures {:?}",
            rep.failures.len(),
            rep.samples,
            &rep.failures[..rep.failures.len().min(3)]
        );
    }
}

#[test]
fn coverage_passes_in_closed_mode_too() {
    for (name, p) in family_suite(true).into_iter().take(12) {
        let gs = place_guards(&p, GuardMode::Closed).unwrap();
        let rep = coverage_check_on(&p, &gs, 3, 16).unwrap();
        assert!(rep.pass(), "{name}");
    }
}

#[test]
fn guard_sets_are_deterministic() {
    for (name, p) in family_suite(true).into_iter().take(10) {
        let a = place_guards(&p, GuardMode::Open).unwrap();
        let b = place_guards(&p, GuardMode::Open).unwrap();
        let ka: Vec<_> = a.guards.iter().map(|e| (e.a, e.b)).collect();
        let kb: Vec<_> = b.guards.iter().map(|e| (e.a, e.b)).collect();
        assert_eq!(ka, kb, "{name}");
        assert_eq!(write_polyhedron(&p), write_polyhedron(&p));
    }
}

#[test]
fn stacks_satisfy_theorem3_identity() {
    for s in 0..30u64 {
        let p = gen::gen_stack(s, 2 + (s as usize) % 14);
        let adj = Adjacency::build(&p).unwrap();
        let es = classify_edges(&p, &adj).unwrap();
        let d = decompose(&p, &adj, &es).unwrap();
        let all_primitive = d.contacts.iter().all(|c| {
            matches!(
                classify_contact(c, &d.bricks[c.lower], &d.bricks[c.upper]).kind,
                ContactKind::PrimitiveD | ContactKind::PrimitiveI
            )
        });
        assert!(all_primitive, "seed {s}: stack generator made a non-stack");
        let g = euler_genus(&p, &adj).unwrap() as i64;
        let (m, r) = (es.m() as i64, es.r() as i64);
        assert_eq!(r, d.bricks.len() as i64 - 1, "seed {s}");
        assert_eq!(m, 6 * r - 12 * g + 12, "seed {s}: m={m} r={r}");
    }
}

#[test]
fn lemma5_inequalities_hold_everywhere() {
    for (name, p) in family_suite(false) {
        let adj = Adjacency::build(&p).unwrap();
        let es = classify_edges(&p, &adj).unwrap();
        let (np, _) = normalize_orientation(&p, &es).unwrap();
        let nadj = Adjacency::build(&np).unwrap();
        let nes = classify_edges(&np, &nadj).unwrap();
        let d = decompose(&np, &nadj, &nes).unwrap();
        let b = orthoguard::classify::count_collars(&d.contacts, &d.bricks) as i64;
        let g = euler_genus(&np, &nadj).unwrap() as i64;
        let (m, r) = (nes.m() as i64, nes.r() as i64);
        assert!(m >= 4 * r - 12 * g - 4 * b + 12, "{name}: lemma 5");
        assert!(m >= 3 * r - 12 * g + 12, "{name}: weak inequality");
    }
}
