use std::collections::BTreeSet;

use argshift::flags::{b_a_from_centralizer, compute_b_a, enumerate_atlas};
use argshift::lie::{GElement, LieAlgebraA};

fn el(rows: &[&[i64]]) -> GElement {
    GElement::from_ints(rows).unwrap()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn patterns(a: &GElement) -> (BTreeSet<String>, BTreeSet<String>, String) {
    let atlas = enumerate_atlas(a).unwrap();
    let g = &atlas.algebra;
    (
        atlas.borels.iter().map(|p| p.pattern(g)).collect(),
        atlas.parabolics.iter().map(|p| p.pattern(g)).collect(),
        atlas.b_a.pattern(g),
    )
}

#[test]
fn semisimple_tables() {
    let (b, p, ba) = patterns(&el(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]]));
    assert_eq!(
        b,
        set(&["***/0**/00*", "*00/**0/***", "**0/0*0/***", "*0*/***/00*", "*00/***/*0*", "***/0*0/0**"])
    );
    assert_eq!(
        p,
        set(&["***/***/00*", "**0/**0/***", "***/0**/0**", "*00/***/***", "***/0*0/***", "*0*/***/*0*"])
    );
    assert_eq!(ba, "*00/0*0/00*");
}

#[test]
fn mixed_tables() {
    let (b, p, ba) = patterns(&el(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -2]]));
    assert_eq!(b, set(&["***/0**/00*", "**0/0*0/***", "***/0*0/0**"]));
    assert_eq!(p, set(&["***/***/00*", "**0/**0/***", "***/0**/0**", "***/0*0/***"]));
    assert_eq!(ba, "**0/0*0/00*");
}

#[test]
fn nilpotent_tables() {
    let (b, p, ba) = patterns(&el(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]));
    assert_eq!(b, set(&["***/0**/00*"]));
    assert_eq!(p, set(&["***/***/00*", "***/0**/0**"]));
    assert_eq!(ba, "***/0**/00*");
}

#[test]
fn b_a_routes_agree() {
    for a in [
        el(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]]),
        el(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -2]]),
        el(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]),
        el(&[&[1, 0], &[0, -1]]),
        el(&[&[0, 1], &[0, 0]]),
    ] {
        let (ba, ua) = compute_b_a(&a).unwrap();
        assert_eq!(ba, b_a_from_centralizer(&a).unwrap());
        let g = LieAlgebraA::new(a.n()).unwrap();
        assert!(ba.contains_element(&g, &a));
        assert!(ua.is_subspace_of(&ba));
    }
}
