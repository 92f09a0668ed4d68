use argshift::components::{
    count_zero_fibre, is_regular_nilpotent, semisimple_exotic_witness, AffineComponent, Analysis, IPrime,
    IPrimeTable,
};
use argshift::lie::{GElement, Subspace};
use argshift::sampling::{self, rng};
use argshift::{Error, ExactMatrix, Scalar};

fn el(rows: &[&[i64]]) -> GElement {
    GElement::from_ints(rows).unwrap()
}

fn s3() -> GElement {
    el(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]])
}

fn r3() -> GElement {
    el(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -2]])
}

fn n3() -> GElement {
    el(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])
}

fn zeros(k: usize) -> Vec<Scalar> {
    vec![Scalar::from(0); k]
}

/// Every sampled point of the component has the image of its base point.
fn sampled_level(an: &Analysis, c: &AffineComponent, seed: u64) -> bool {
    let mut rng = rng(seed);
    let f0 = an.sys.evaluate(&c.base_point);
    (0..10).all(|_| {
        let mut x = c.base_point.clone();
        for d in &c.direction_space {
            x = x.add_scaled(&sampling::small_rational(&mut rng, 6), d).unwrap();
        }
        an.sys.evaluate(&x) == f0
    })
}

#[test]
fn borel_components_sl2() {
    let an = Analysis::new(&el(&[&[1, 0], &[0, -1]])).unwrap();
    let g = &an.sys.algebra;
    let x = el(&[&[2, 0], &[0, -2]]);
    assert_eq!(an.atlas.borels.len(), 2);
    let comps: Vec<AffineComponent> = an
        .atlas
        .borels
        .iter()
        .map(|b| an.borel_component(&x, b).unwrap())
        .collect();
    let upper = Subspace::from_elements(g, &[GElement::e(2, 0, 1)]);
    let lower = Subspace::from_elements(g, &[GElement::e(2, 1, 0)]);
    let dirs: Vec<Subspace> = comps.iter().map(|c| c.directions(g)).collect();
    assert!(dirs.contains(&upper) && dirs.contains(&lower));
    for c in &comps {
        assert_eq!(c.dim(), 1);
        assert!(c.contains(g, &x));
        assert!(sampled_level(&an, c, 1));
    }
    assert!(!comps[0].same_as(g, &comps[1]));

    let an = Analysis::new(&el(&[&[0, 1], &[0, 0]])).unwrap();
    let c = an.borel_component(&GElement::zero(2), &an.atlas.borels[0]).unwrap();
    assert_eq!(c.directions(&an.sys.algebra), upper);
    assert!(sampled_level(&an, &c, 2));
    assert_eq!(an.sys.evaluate(&c.base_point), zeros(2));
}

#[test]
fn borel_component_dimension_sl3() {
    for a in [s3(), r3(), n3()] {
        let an = Analysis::new(&a).unwrap();
        let mut rng = rng(3);
        for b in &an.atlas.borels {
            let x = sampling::random_in_subspace(&mut rng, &an.sys.algebra, &b.p, 3);
            let c = an.borel_component(&x, b).unwrap();
            assert_eq!(c.dim(), 3);
            assert!(sampled_level(&an, &c, 4));
        }
    }
}

#[test]
fn borel_component_membership_errors() {
    let an = Analysis::new(&s3()).unwrap();
    let x = el(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
    let upper = an
        .atlas
        .borels
        .iter()
        .find(|b| b.pattern(&an.sys.algebra) == "***/0**/00*")
        .unwrap();
    assert!(matches!(an.borel_component(&x, upper), Err(Error::NotInSubalgebra)));
    assert!(matches!(
        an.borel_component(&x, &an.atlas.parabolics[0]),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn weyl_components() {
    let an = Analysis::new(&el(&[&[0, 1], &[0, 0]])).unwrap();
    let comps = an.weyl_components(&el(&[&[1, 0], &[0, -1]])).unwrap();
    let bases: Vec<GElement> = comps.iter().map(|c| c.base_point.clone()).collect();
    assert_eq!(bases, vec![el(&[&[1, 0], &[0, -1]]), el(&[&[-1, 0], &[0, 1]])]);
    let x = el(&[&[0, 5], &[0, 0]]);
    assert_eq!(an.weyl_components(&x).unwrap().len(), 1);

    let an = Analysis::new(&n3()).unwrap();
    let x = el(&[&[1, 4, -1], &[0, 2, 7], &[0, 0, -3]]);
    let comps = an.weyl_components(&x).unwrap();
    assert_eq!(comps.len(), 6);
    let fx = an.sys.evaluate(&x);
    for (k, c) in comps.iter().enumerate() {
        assert!(c.base_point.is_diagonal());
        assert_eq!(an.sys.evaluate(&c.base_point), fx);
        assert!(sampled_level(&an, c, 10 + k as u64));
    }
    // a repeated diagonal entry shrinks the orbit
    let y = el(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]]);
    assert_eq!(an.weyl_components(&y).unwrap().len(), 3);

    let an = Analysis::new(&s3()).unwrap();
    assert!(matches!(an.weyl_components(&s3()), Err(Error::NotNilpotent)));
}

#[test]
fn parabolic_lift_nilpotent() {
    let an = Analysis::new(&n3()).unwrap();
    let g = &an.sys.algebra;
    let p1 = an
        .atlas
        .parabolics
        .iter()
        .find(|p| p.composition() == [2, 1])
        .unwrap();
    let y = AffineComponent {
        base_point: GElement::zero(3),
        direction_space: vec![GElement::e(3, 0, 1)],
    };
    let lifted = an.parabolic_lift(p1, &y).unwrap();
    assert_eq!(lifted.dim(), 3);
    let u_plus = Subspace::from_elements(
        g,
        &[GElement::e(3, 0, 1), GElement::e(3, 0, 2), GElement::e(3, 1, 2)],
    );
    assert_eq!(lifted.directions(g), u_plus);
    assert!(lifted.directions(g).is_subspace_of(&p1.p));
    assert_eq!(an.sys.evaluate(&lifted.base_point), zeros(5));
    assert!(sampled_level(&an, &lifted, 20));

    // the Cartan of the Levi is not a level set of the Levi system
    let bad = AffineComponent {
        base_point: GElement::zero(3),
        direction_space: vec![el(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]])],
    };
    assert!(matches!(an.parabolic_lift(p1, &bad), Err(Error::Certification(_))));
    // directions outside l
    let outside = AffineComponent {
        base_point: GElement::zero(3),
        direction_space: vec![GElement::e(3, 2, 0)],
    };
    assert!(matches!(an.parabolic_lift(p1, &outside), Err(Error::NotInSubalgebra)));
}

#[test]
fn parabolic_lift_of_a_point_is_the_borel_component() {
    for a in [s3(), r3(), n3()] {
        let an = Analysis::new(&a).unwrap();
        let g = &an.sys.algebra;
        let mut rng = rng(5);
        for b in &an.atlas.borels {
            let x = sampling::random_in_subspace(&mut rng, g, &b.p, 4);
            let xl = b.levi_projection(g, &x).unwrap();
            let y = AffineComponent {
                base_point: xl.clone(),
                direction_space: vec![],
            };
            let lifted = an.parabolic_lift(b, &y).unwrap();
            let direct = an.borel_component(&x, b).unwrap();
            assert!(lifted.same_as(g, &direct));
            assert!(lifted.contains(g, &x));
        }
    }
}

#[test]
fn distinct_levi_components_lift_to_distinct_components() {
    let an = Analysis::new(&s3()).unwrap();
    let g = &an.sys.algebra;
    for p in &an.atlas.parabolics {
        let block = p.levi_blocks().into_iter().find(|b| b.len() == 2).unwrap();
        // the two root lines of the sl_2 block, in standard coordinates
        let root_line = |i: usize, j: usize| {
            let mut e = ExactMatrix::zeros(3, 3);
            e.set(i, j, Scalar::from(1));
            GElement::new(p.basis.from_adapted(&e)).unwrap()
        };
        let lines = [root_line(block[0], block[1]), root_line(block[1], block[0])];
        let mut lifts = Vec::new();
        for c in [1, 2, -1] {
            let xl = p.levi_projection(g, &s3().scale(&Scalar::from(c))).unwrap();
            for line in &lines {
                let y = AffineComponent {
                    base_point: xl.clone(),
                    direction_space: vec![line.clone()],
                };
                lifts.push(an.parabolic_lift(p, &y).unwrap());
            }
        }
        for i in 0..lifts.len() {
            for j in 0..lifts.len() {
                assert_eq!(lifts[i].same_as(g, &lifts[j]), i == j);
            }
        }
    }
}

#[test]
fn zero_fibre_counts() {
    let t = IPrimeTable::default();
    let c = count_zero_fibre(&el(&[&[1, 0], &[0, -1]]), "s", &t).unwrap();
    assert_eq!((c.total.exact, c.formula.as_str()), (Some(2), "0 + 0 + 2"));
    let c = count_zero_fibre(&el(&[&[0, 1], &[0, 0]]), "n", &t).unwrap();
    assert_eq!((c.total.exact, c.formula.as_str()), (Some(1), "0 + 0 + 1"));

    let c = count_zero_fibre(&n3(), "n", &t).unwrap();
    assert_eq!(c.formula, "|I'_n| + 0 + 1");
    assert_eq!((c.borel_count, c.parabolic_count), (1, 2));
    assert_eq!((c.total.exact, c.total.lower_bound), (None, 2));
    assert!(c.parabolic_terms.iter().all(|p| p.product.exact == Some(0)));

    let c = count_zero_fibre(&s3(), "s", &t).unwrap();
    assert_eq!(c.formula, "|I'_s| + 0 + 6");
    assert_eq!((c.total.exact, c.total.lower_bound), (None, 7));
    assert_eq!(c.parabolic_terms.len(), 6);
    for p in &c.parabolic_terms {
        assert_eq!(p.factors.len(), 1);
        assert_eq!((p.factors[0].size, p.factors[0].jordan_type.as_str()), (2, "1+1"));
    }

    let c = count_zero_fibre(&r3(), "r", &t).unwrap();
    assert_eq!(c.formula, "|I'_r| + 0 + 3");
    assert_eq!(c.total.lower_bound, 4);
    let types: Vec<&str> = c
        .parabolic_terms
        .iter()
        .map(|p| p.factors[0].jordan_type.as_str())
        .collect();
    assert_eq!(types.iter().filter(|&&t| t == "2").count(), 2);
    assert_eq!(types.iter().filter(|&&t| t == "1+1").count(), 2);
}

#[test]
fn iprime_table_overrides() {
    let t = IPrimeTable::from_json_over_defaults(
        r#"{"entries": [{"n": 3, "jordan_type": "3", "value": {"exact": 1}}]}"#,
    )
    .unwrap();
    assert_eq!(t.lookup(3, "3"), IPrime::Exact(1));
    let c = count_zero_fibre(&n3(), "n", &t).unwrap();
    assert_eq!((c.total.exact, c.formula.as_str()), (Some(2), "1 + 0 + 1"));
    let bad = r#"{"entries": [{"n": 2, "jordan_type": "2", "value": {"exact": 3}}]}"#;
    assert!(IPrimeTable::from_json_over_defaults(bad).is_err());
    assert!(IPrimeTable::from_json_over_defaults("not json").is_err());
    assert_eq!(t.lookup(4, "4"), IPrime::Unknown { lower_bound: 0 });
}

#[test]
fn exotic_witnesses() {
    let i = |v: i64| Scalar::from(v) * Scalar::i();
    let z = Scalar::from(0);
    let w_r = GElement::from_rows(vec![
        vec![Scalar::from(-3), Scalar::from(1), i(3)],
        vec![z.clone(), Scalar::from(3), i(9)],
        vec![i(3), z.clone(), z.clone()],
    ])
    .unwrap();
    let w_n = el(&[&[0, 0, 0], &[1, 0, 0], &[0, -1, 0]]);
    let s = el(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]]);
    let w_s = semisimple_exotic_witness(&s).unwrap();
    assert_eq!(w_s, el(&[&[0, 1, -1], &[2, 0, 1], &[4, 2, 0]]));
    for (a, x) in [(r3(), w_r), (n3(), w_n), (s, w_s)] {
        let an = Analysis::new(&a).unwrap();
        let rep = an.exotic_witness_check(&x, &zeros(5));
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.members_checked, an.atlas.members().count());
        assert!(is_regular_nilpotent(&x));
        assert!(!x.matrix().pow(2).is_zero() && x.matrix().pow(3).is_zero());
    }
    // points of atlas members are not exotic
    let an = Analysis::new(&n3()).unwrap();
    let rep = an.exotic_witness_check(&GElement::e(3, 0, 2), &zeros(5));
    assert!(rep.in_fibre && !rep.passed);
    assert!(!rep.containing_members.is_empty());
    // no square root of α(s)β(s)γ(s) in Q(i)
    assert!(semisimple_exotic_witness(&el(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]])).is_err());
}

#[test]
fn tarasov_exotic_probe() {
    let an = Analysis::new(&s3()).unwrap();
    let rep = an.tarasov_exotic_probe(40, &mut rng(6)).unwrap();
    assert_eq!(rep.member_avoidance.len(), 12);
    assert!(rep.passed, "{rep:?}");
    let an = Analysis::new(&r3()).unwrap();
    assert!(matches!(an.tarasov_exotic_probe(5, &mut rng(6)), Err(Error::NotDiagonal)));
}

#[test]
fn singular_family() {
    let an = Analysis::new(&el(&[&[1, 0], &[0, -1]])).unwrap();
    let rep = an.singular_family_check(&GElement::zero(2)).unwrap();
    assert!(rep.passed);
    assert_eq!(rep.u_a, "00/00");
    let an = Analysis::new(&r3()).unwrap();
    assert!(an.singular_family_check(&r3()).unwrap().passed);
    let mut rng = rng(8);
    for a in [s3(), r3()] {
        let an = Analysis::new(&a).unwrap();
        for _ in 0..20 {
            let x = sampling::random_in_subspace(&mut rng, &an.sys.algebra, &an.atlas.b_a, 5);
            assert!(an.singular_family_check(&x).unwrap().passed);
        }
        let off = el(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
        assert!(matches!(an.singular_family_check(&off), Err(Error::NotInSubalgebra)));
    }
    let an = Analysis::new(&n3()).unwrap();
    assert!(matches!(an.singular_family_check(&n3()), Err(Error::Nilpotent(_))));
}

#[test]
fn image_of_b_a() {
    let cases = [
        (el(&[&[1, 0], &[0, -1]]), 2),
        (el(&[&[0, 1], &[0, 0]]), 1),
        (s3(), 6),
        (r3(), 3),
        (n3(), 1),
    ];
    for (a, degree) in cases {
        let an = Analysis::new(&a).unwrap();
        let rep = an.image_bba_check(50, &mut rng(9)).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.expected_degree, degree);
        assert_eq!(rep.observed_degrees, vec![degree]);
        assert_eq!(rep.nilpotent_form, a.is_nilpotent().then_some(true));
    }
    let an = Analysis::new(&n3()).unwrap();
    let rep = an.image_bba_check(1, &mut rng(9)).unwrap();
    assert_eq!(&rep.restricted[2..], ["0", "0", "0"]);
}

#[test]
fn critical_values() {
    for a1 in [1, 3] {
        let an = Analysis::new(&el(&[&[a1, 0], &[0, -a1]])).unwrap();
        let rep = an.critical_value_probe(100, &mut rng(11));
        assert_eq!(rep.sl2_identity, Some(true));
        assert!(rep.passed);
    }
    let an = Analysis::new(&el(&[&[0, 1], &[0, 0]])).unwrap();
    let rep = an.critical_value_probe(100, &mut rng(12));
    assert_eq!(rep.sl2_identity, Some(true));
    assert!(rep.points.iter().all(|p| p.image.iter().all(|z| *z == Scalar::from(0))));

    let an = Analysis::new(&s3()).unwrap();
    let rep = an.critical_value_probe(200, &mut rng(13));
    assert!(rep.passed, "{:?}", rep.rank_counts);
    assert!(rep.rank_counts.keys().all(|&k| k == 3 || k == 4));
}

#[test]
fn near_section_observations() {
    let an = Analysis::new(&n3()).unwrap();
    let rep = an.near_section_probe(5, &mut rng(14)).unwrap();
    assert_eq!(rep.b_minus_dim, 5);
    assert_eq!(rep.weyl_coincidences.len(), 5);
    assert!(matches!(
        Analysis::new(&s3()).unwrap().near_section_probe(1, &mut rng(14)),
        Err(Error::NotNilpotent)
    ));
}
