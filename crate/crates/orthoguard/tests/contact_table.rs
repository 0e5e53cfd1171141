//! The twenty ways two bricks can meet at a contact rectangle, each built
//! as a literal two-box instance. The edge-count deltas between the union
//! and the separated parts, the reflex-edge deltas, and the
//! primitive/collar/other classification are all pinned here.

use orthoguard::classify::{classify_contact, ContactKind};
use orthoguard::decomp::decompose;
use orthoguard::gen::{emit_from_bricks, BrickBox};
use orthoguard::geom::Point3;
use orthoguard::model::{classify_edges, validate, Adjacency, Polyhedron};

/// Side labels of the contact rectangle, cyclic order west, north, east,
/// south. `A`: bounded by the lower brick's face, strictly inside the
/// upper's. `B`: the other way round. `F`: flush.
#[derive(Clone, Copy, PartialEq, Eq)]
enum L {
    A,
    B,
    F,
}

struct Case {
    letter: char,
    pattern: [L; 4],
    dm: i64,
    dr: i64,
    kind: ContactKind,
}

fn cases() -> Vec<Case> {
    use ContactKind::*;
    use L::*;
    vec![
        Case { letter: 'a', pattern: [A, A, A, A], dm: 0, dr: 4, kind: Collar },
        Case { letter: 'b', pattern: [F, A, A, A], dm: 0, dr: 3, kind: Other },
        Case { letter: 'c', pattern: [F, F, A, A], dm: -3, dr: 2, kind: Other },
        Case { letter: 'd', pattern: [F, F, F, A], dm: -6, dr: 1, kind: PrimitiveD },
        Case { letter: 'e', pattern: [A, F, A, F], dm: 0, dr: 2, kind: Other },
        Case { letter: 'f', pattern: [B, B, B, B], dm: 0, dr: 4, kind: Collar },
        Case { letter: 'g', pattern: [F, B, B, B], dm: 0, dr: 3, kind: Other },
        Case { letter: 'h', pattern: [F, F, B, B], dm: -3, dr: 2, kind: Other },
        Case { letter: 'i', pattern: [F, F, F, B], dm: -6, dr: 1, kind: PrimitiveI },
        Case { letter: 'j', pattern: [B, F, B, F], dm: 0, dr: 2, kind: Other },
        Case { letter: 'k', pattern: [F, A, A, B], dm: 2, dr: 3, kind: Other },
        Case { letter: 'l', pattern: [A, A, A, B], dm: 4, dr: 4, kind: Other },
        Case { letter: 'm', pattern: [F, A, B, A], dm: 4, dr: 3, kind: Other },
        Case { letter: 'n', pattern: [A, A, B, B], dm: 4, dr: 4, kind: Other },
        Case { letter: 'o', pattern: [A, B, A, B], dm: 8, dr: 4, kind: Other },
        Case { letter: 'p', pattern: [F, A, B, B], dm: 2, dr: 3, kind: Other },
        Case { letter: 'q', pattern: [A, B, B, B], dm: 4, dr: 4, kind: Other },
        Case { letter: 'r', pattern: [F, B, A, B], dm: 4, dr: 3, kind: Other },
        Case { letter: 's', pattern: [A, F, B, F], dm: 0, dr: 2, kind: Other },
        Case { letter: 't', pattern: [F, F, A, B], dm: -1, dr: 2, kind: Other },
    ]
}

/// Instantiate a two-box configuration realizing the side labels.
pub fn boxes_for(pattern: [L; 4]) -> (BrickBox, BrickBox) {
    // Bounds of the lower top face (a) and upper bottom face (b) per axis:
    // low slot and high slot of x from west/east, of y from south/north.
    let bound = |label: L, low: bool| -> (i64, i64) {
        // Returns (a_bound, b_bound).
        match (label, low) {
            (L::F, true) => (0, 0),
            (L::F, false) => (6, 6),
            (L::A, true) => (1, 0),
            (L::A, false) => (5, 6),
            (L::B, true) => (0, 1),
            (L::B, false) => (6, 5),
        }
    };
    let [w, n, e, s] = pattern;
    let (ax0, bx0) = bound(w, true);
    let (ax1, bx1) = bound(e, false);
    let (ay0, by0) = bound(s, true);
    let (ay1, by1) = bound(n, false);
    (
        BrickBox::new(Point3::new(ax0, ay0, 0), Point3::new(ax1, ay1, 2)),
        BrickBox::new(Point3::new(bx0, by0, 2), Point3::new(bx1, by1, 4)),
    )
}

fn counts(p: &Polyhedron) -> (i64, i64) {
    let adj = Adjacency::build(p).unwrap();
    let es = classify_edges(p, &adj).unwrap();
    (es.m() as i64, es.r() as i64)
}

#[test]
fn all_twenty_types_reproduce_their_deltas() {
    for case in cases() {
        let (lo, hi) = boxes_for(case.pattern);
        let union = emit_from_bricks(&[lo, hi]);
        let rep = validate(&union);
        assert!(rep.ok(), "type ({}): {:?}", case.letter, rep.violations);
        let (m, r) = counts(&union);

        // The separated parts, measured as two independent runs.
        let (m1, r1) = counts(&emit_from_bricks(&[lo]));
        let (m2, r2) = counts(&emit_from_bricks(&[hi]));
        let (mp, rp) = (m1 + m2, r1 + r2);
        assert_eq!(mp, 24, "type ({})", case.letter);
        assert_eq!(rp, 0, "type ({})", case.letter);

        assert_eq!(m - mp, case.dm, "type ({}): m delta", case.letter);
        assert_eq!(r - rp, case.dr, "type ({}): r delta", case.letter);

        // Classification of the single contact.
        let adj = Adjacency::build(&union).unwrap();
        let es = classify_edges(&union, &adj).unwrap();
        let d = decompose(&union, &adj, &es).unwrap();
        assert_eq!(d.contacts.len(), 1, "type ({})", case.letter);
        let c = &d.contacts[0];
        let cls = classify_contact(c, &d.bricks[c.lower], &d.bricks[c.upper]);
        assert_eq!(cls.kind, case.kind, "type ({})", case.letter);
        assert_eq!(
            cls.reflex_edge_count as i64, case.dr,
            "type ({}): reflex edge count",
            case.letter
        );
        assert_eq!(
            c.reflex_edges.len() as i64,
            case.dr,
            "type ({}): bordering edges",
            case.letter
        );
    }
}

#[test]
fn collar_fully_surrounds_the_smaller_brick() {
    // Type (a): the contact is the lower brick's whole top face; type (f)
    // mirrors it. Both count as collars, four reflex edges each.
    for pattern in [[L::A; 4], [L::B; 4]] {
        let (lo, hi) = boxes_for(pattern);
        let union = emit_from_bricks(&[lo, hi]);
        let adj = Adjacency::build(&union).unwrap();
        let es = classify_edges(&union, &adj).unwrap();
        let d = decompose(&union, &adj, &es).unwrap();
        assert_eq!(
            orthoguard::classify::count_collars(&d.contacts, &d.bricks),
            1
        );
    }
}
