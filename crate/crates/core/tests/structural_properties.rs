use argshift::properties::run_all;

#[test]
fn structural_identities_hold_on_seeded_instances() {
    let start = std::time::Instant::now();
    let reports = run_all(100, 0x00c0_ffee).unwrap();
    for r in &reports {
        println!("{:<28} {:>4} instances  {}", r.name, r.instances, if r.passed { "ok" } else { "FAILED" });
        assert!(r.passed, "{}: {:?}", r.name, r.first_failure);
        assert!(r.instances >= 100);
    }
    assert_eq!(reports.len(), 8);
    println!("elapsed {:?}", start.elapsed());
}

#[test]
fn borel_invariance_fails_off_the_borel() {
    // lower triangular conjugation does not preserve the fibre of a = diag(1, 2, -3)
    let sys = &argshift::properties::representative_systems().unwrap()[2];
    let x = argshift::lie::GElement::from_ints(&[&[1, 2, 3], &[0, 0, 1], &[0, 0, -1]]).unwrap();
    let l = argshift::ExactMatrix::from_rows(vec![
        vec![1.into(), 0.into(), 0.into()],
        vec![1.into(), 1.into(), 0.into()],
        vec![2.into(), 1.into(), 1.into()],
    ])
    .unwrap();
    let lx = x.conjugate_by(&l).unwrap();
    assert_ne!(sys.evaluate(&x), sys.evaluate(&lx));
    let u = argshift::sampling::random_upper_unimodular(&mut argshift::sampling::rng(3), 3);
    assert_eq!(sys.evaluate(&x), sys.evaluate(&x.conjugate_by(&u).unwrap()));
}
