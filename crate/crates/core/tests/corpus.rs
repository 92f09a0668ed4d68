use std::time::Instant;

use argshift::corpus::{check_formula, formula_cases, run, run_with};

#[test]
fn frozen_corpus_passes() {
    let start = Instant::now();
    let rep = run();
    for c in &rep.checks {
        assert!(c.passed, "{}: {:?}", c.name, c.detail);
    }
    assert!(rep.passed && rep.first_failure.is_none());
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn tampered_coefficient_is_localized() {
    let mut cases = formula_cases();
    let k = cases.iter().position(|c| c.name == "sl3 F_r on b^r, rho = 2").unwrap();
    cases[k].expected[3] = cases[k].expected[3].replace("12*rho", "11*rho");
    let rep = run_with(&cases);
    assert!(!rep.passed);
    let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["sl3 F_r on b^r, rho = 2"]);
    let diff = rep.first_failure.unwrap();
    assert!(diff.starts_with("sl3 F_r on b^r, rho = 2 component 4: expected"), "{diff}");
    assert!(diff.contains("expected -6*x11^2 - 22*x11*x22") && diff.contains("got -6*x11^2 - 24*x11*x22"), "{diff}");
}

#[test]
fn tampered_sl2_scaling_is_caught() {
    let mut cases = formula_cases();
    cases[0].expected[1] = "a1*x11".into();
    let d = check_formula(&cases[0]).unwrap().unwrap();
    assert!(d.contains("component 2"), "{d}");
}
