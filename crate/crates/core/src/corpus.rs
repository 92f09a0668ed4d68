//! Frozen regression corpus for the explicit sl_2 and sl_3 computations.
//!
//! Formula cases are plain data so a single coefficient can be perturbed to
//! exercise the mismatch path.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::components::{count_zero_fibre, semisimple_exotic_witness, Analysis, IPrimeTable};
use crate::elements::ElementSpec;
use crate::error::{Error, Result};
use crate::exact_math::{MPoly, PolyRing};
use crate::flags::enumerate_atlas;
use crate::lie::{GElement, LieAlgebraA};
use crate::mf::ShiftSystem;
use crate::sampling;
use crate::{Field, Poly, Scalar};

type FixedCheck = fn() -> Result<Option<String>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Domain {
    Whole,
    /// Restriction to b^a, which is spanned by coordinates for the standard
    /// representatives.
    BorelOfA,
}

/// Expected display-scaled components, written with the element parameters
/// as extra variables.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaCase {
    pub name: String,
    pub n: usize,
    pub element: String,
    pub params: Vec<(String, String)>,
    pub domain: Domain,
    pub expected: Vec<String>,
}

fn case(name: &str, n: usize, element: &str, params: &[(&str, &str)], domain: Domain, expected: &[&str]) -> FormulaCase {
    FormulaCase {
        name: name.into(),
        n,
        element: element.into(),
        params: params.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        domain,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

const F_H_S: [&str; 5] = [
    "2*x11^2 + 2*x22^2 + 2*x11*x22",
    "-3*x11^2*x22 - 3*x11*x22^2",
    "4*s1*x11 + 2*s2*x11 + 2*s1*x22 + 4*s2*x22",
    "-3*s2*x11^2 - 6*s1*x11*x22 - 6*s2*x11*x22 - 3*s1*x22^2",
    "-12*s1*s2*x11 - 6*s2^2*x11 - 6*s1^2*x22 - 12*s1*s2*x22",
];

const F_B_R: [&str; 5] = [
    "2*x11^2 + 2*x22^2 + 2*x11*x22",
    "-3*x11^2*x22 - 3*x11*x22^2",
    "6*rho*x11 + 6*rho*x22",
    "-3*rho*x11^2 - 12*rho*x11*x22 - 3*rho*x22^2",
    "-18*rho^2*x11 - 18*rho^2*x22",
];

const F_B_N: [&str; 5] = [
    "2*x11^2 + 2*x22^2 + 2*x11*x22",
    "-3*x11^2*x22 - 3*x11*x22^2",
    "0",
    "0",
    "0",
];

pub fn formula_cases() -> Vec<FormulaCase> {
    let mut out = Vec::new();
    for a1 in ["1", "3", "-1/2", "2*i"] {
        out.push(case(
            &format!("sl2 F_s, a1 = {a1}"),
            2,
            "s",
            &[("a1", a1)],
            Domain::Whole,
            &["x11^2 + x12*x21", "2*a1*x11"],
        ));
    }
    out.push(case("sl2 F_n", 2, "n", &[], Domain::Whole, &["x11^2 + x12*x21", "x21"]));
    out.push(case("sl2 F_n on b^n", 2, "n", &[], Domain::BorelOfA, &["x11^2", "0"]));
    for (s1, s2) in [("1", "2"), ("2", "-5"), ("1/2", "i")] {
        out.push(case(
            &format!("sl3 F_s on b^s, s = ({s1}, {s2})"),
            3,
            "s",
            &[("s1", s1), ("s2", s2)],
            Domain::BorelOfA,
            &F_H_S,
        ));
    }
    for rho in ["1", "2", "-1/3"] {
        out.push(case(
            &format!("sl3 F_r on b^r, rho = {rho}"),
            3,
            "r",
            &[("rho", rho)],
            Domain::BorelOfA,
            &F_B_R,
        ));
    }
    out.push(case("sl3 F_n on b^n", 3, "n", &[], Domain::BorelOfA, &F_B_N));
    out
}

/// Compares a formula case component by component; `Some(diff)` on mismatch.
pub fn check_formula(c: &FormulaCase) -> Result<Option<String>> {
    let values: Vec<String> = c.params.iter().map(|(_, v)| v.clone()).collect();
    let a = ElementSpec::parse(&c.element, &values)?.build(c.n)?;
    let sys = ShiftSystem::build(&a)?;
    let g = &sys.algebra;
    let mut actual = sys.scaled_components();
    if c.domain == Domain::BorelOfA {
        let atlas = enumerate_atlas(&a)?;
        let images: Vec<Poly> = (0..g.dim())
            .map(|k| {
                if atlas.b_a.contains_element(g, &g.basis_element(k)) {
                    MPoly::var(g.ring(), k)
                } else {
                    Poly::zero(g.ring())
                }
            })
            .collect();
        actual = actual
            .iter()
            .map(|p| p.compose(&images))
            .collect::<std::result::Result<_, _>>()?;
    }
    let ext = g.ring().extend(c.params.iter().map(|(k, _)| k.clone()));
    let mut images: Vec<Poly> = (0..g.dim()).map(|k| MPoly::var(g.ring(), k)).collect();
    for (_, v) in &c.params {
        let val: Scalar = v.parse().map_err(|e: crate::MathError| Error::InvalidInput(e.to_string()))?;
        images.push(MPoly::constant(g.ring(), val));
    }
    if c.expected.len() != actual.len() {
        return Ok(Some(format!(
            "{}: expected {} components, got {}",
            c.name,
            c.expected.len(),
            actual.len()
        )));
    }
    for (k, (text, got)) in c.expected.iter().zip(&actual).enumerate() {
        let want = MPoly::parse(&ext, text)?.compose(&images)?;
        if &want != got {
            return Ok(Some(format!(
                "{} component {}: expected {want}, got {got}",
                c.name,
                k + 1
            )));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusCheck {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub checks: Vec<CorpusCheck>,
    pub first_failure: Option<String>,
    pub passed: bool,
}

impl CorpusReport {
    fn from_checks(checks: Vec<CorpusCheck>) -> Self {
        let first_failure = checks
            .iter()
            .find(|c| !c.passed)
            .map(|c| c.detail.clone().unwrap_or_else(|| c.name.clone()));
        Self {
            passed: first_failure.is_none(),
            first_failure,
            checks,
        }
    }
}

fn record(name: &str, outcome: Result<Option<String>>) -> CorpusCheck {
    let detail = match outcome {
        Ok(d) => d,
        Err(e) => Some(format!("{name}: {e}")),
    };
    CorpusCheck {
        name: name.into(),
        passed: detail.is_none(),
        detail,
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, want: T, got: T) -> Option<String> {
    (want != got).then(|| format!("{what}: expected {want:?}, got {got:?}"))
}

/// Runs the full corpus with the given formula cases.
pub fn run_with(cases: &[FormulaCase]) -> CorpusReport {
    let mut checks: Vec<CorpusCheck> = cases.iter().map(|c| record(&c.name, check_formula(c))).collect();
    let fixed: Vec<(&str, FixedCheck)> = vec![
        ("sl2 generic fibre of F_s", sl2_generic_fibre),
        ("sl2 degenerate fibre of F_s", sl2_degenerate_fibre),
        ("sl2 fibres of F_n", sl2_nilpotent_fibres),
        ("sl2 zero fibre counts", sl2_counts),
        ("sl3 trace form of F_a", sl3_trace_form),
        ("sl3 atlas tables", sl3_atlas_tables),
        ("sl3 zero fibre formulas", sl3_counts),
        ("sl3 exotic witnesses", sl3_exotic),
        ("sl3 degree of F_a(b^a) over C^2", sl3_degrees),
    ];
    for (name, f) in fixed {
        checks.push(record(name, f()));
    }
    CorpusReport::from_checks(checks)
}

pub fn run() -> CorpusReport {
    run_with(&formula_cases())
}

/// Substitutes a matrix of polynomials into the display-scaled
/// components.
fn substitute(sys: &ShiftSystem, entries: &[Vec<Poly>]) -> Result<Vec<Poly>> {
    let g = &sys.algebra;
    let images: Vec<Poly> = g.positions().iter().map(|&(i, j)| entries[i][j].clone()).collect();
    sys.scaled_components()
        .iter()
        .map(|p| p.compose(&images).map_err(Error::from))
        .collect()
}

fn sl2_system(a1: &Scalar) -> Result<ShiftSystem> {
    ShiftSystem::build(&GElement::diag(&[a1.clone(), -a1.clone()])?)
}

fn parse_all(ring: &std::sync::Arc<PolyRing>, texts: &[&str]) -> Result<Vec<Poly>> {
    texts
        .iter()
        .map(|t| MPoly::parse(ring, t).map_err(Error::from))
        .collect()
}

/// Off the parabola the fibre is the torus orbit of
/// `[[z2/(2a1), x2], [(z1 - z2^2/(4a1^2))/x2, -z2/(2a1)]]`.
fn sl2_generic_fibre() -> Result<Option<String>> {
    let ring = PolyRing::new(["z1", "z2"]);
    let want = parse_all(&ring, &["z1", "z2"])?;
    for a1 in [Scalar::from(1), Scalar::from(3), Scalar::from_ratio(-1, 2)] {
        let sys = sl2_system(&a1)?;
        let two = Scalar::from(2);
        let d = MPoly::var(&ring, 1).scale(&(two.clone() * &a1).inv());
        let disc = &MPoly::var(&ring, 0) - &MPoly::var(&ring, 1).pow(2).scale(&(Scalar::from(4) * &a1 * &a1).inv());
        for x2 in [Scalar::from(1), Scalar::from(-2), Scalar::from_ratio(1, 3), Scalar::i()] {
            let entries = vec![
                vec![d.clone(), MPoly::constant(&ring, x2.clone())],
                vec![disc.scale(&x2.inv()), -&d],
            ];
            let got = substitute(&sys, &entries)?;
            if got != want {
                return Ok(Some(format!("a1 = {a1}, x2 = {x2}: image {got:?}")));
            }
        }
    }
    Ok(None)
}

/// On the parabola the fibre is `x + u_+` and `x + u_-` with
/// `x = z2/(2 a1^2) s`.
fn sl2_degenerate_fibre() -> Result<Option<String>> {
    let ring = PolyRing::new(["z2", "t"]);
    for a1 in [Scalar::from(1), Scalar::from(-3), Scalar::from_ratio(2, 5)] {
        let sys = sl2_system(&a1)?;
        let four_a2 = Scalar::from(4) * &a1 * &a1;
        let want = vec![MPoly::var(&ring, 0).pow(2).scale(&four_a2.inv()), MPoly::var(&ring, 0)];
        let base = MPoly::var(&ring, 0).scale(&(Scalar::from(2) * &a1 * &a1).inv());
        let d = base.scale(&a1);
        let t = MPoly::var(&ring, 1);
        let zero = Poly::zero(&ring);
        for entries in [
            vec![vec![d.clone(), t.clone()], vec![zero.clone(), -&d]],
            vec![vec![d.clone(), zero.clone()], vec![t.clone(), -&d]],
        ] {
            let got = substitute(&sys, &entries)?;
            if got != want {
                return Ok(Some(format!("a1 = {a1}: image {got:?}")));
            }
        }
    }
    Ok(None)
}

/// `F_n^{-1}(z) = {x1^2 + x2 z2 = z1, x3 = z2}`, the split fibre over
/// `z2 = 0 != z1`, and `F_n(b^n) = C x {0}`.
fn sl2_nilpotent_fibres() -> Result<Option<String>> {
    let sys = ShiftSystem::build(&GElement::from_ints(&[&[0, 1], &[0, 0]])?)?;
    let ring = PolyRing::new(["x1", "x2", "z2"]);
    let [x1, x2, z2] = [0, 1, 2].map(|k| MPoly::var(&ring, k));
    let got = substitute(&sys, &[vec![x1.clone(), x2.clone()], vec![z2.clone(), -&x1]])?;
    let want = parse_all(&ring, &["x1^2 + x2*z2", "z2"])?;
    if got != want {
        return Ok(Some(format!("generic fibre: image {got:?}")));
    }
    let ring = PolyRing::new(["w", "t"]);
    let [w, t] = [0, 1].map(|k| MPoly::var(&ring, k));
    let want = parse_all(&ring, &["w^2", "0"])?;
    for sign in [w.clone(), -&w] {
        let got = substitute(
            &sys,
            &[vec![sign.clone(), t.clone()], vec![Poly::zero(&ring), -&sign]],
        )?;
        if got != want {
            return Ok(Some(format!("split fibre: image {got:?}")));
        }
    }
    Ok(None)
}

fn sl2_counts() -> Result<Option<String>> {
    let t = IPrimeTable::default();
    let s = count_zero_fibre(&GElement::from_ints(&[&[1, 0], &[0, -1]])?, "s", &t)?;
    let n = count_zero_fibre(&GElement::from_ints(&[&[0, 1], &[0, 0]])?, "n", &t)?;
    Ok(expect_eq("totals", (Some(2), Some(1)), (s.total.exact, n.total.exact))
        .or_else(|| expect_eq("Borel counts", (2, 1), (s.borel_count, n.borel_count)))
        .or_else(|| expect_eq("parabolic counts", (0, 0), (s.parabolic_count, n.parabolic_count))))
}

/// `F_a = (tr x^2, tr x^3, 2 tr(ax), 3 tr(ax^2), 6 tr(a^2 x))` after scaling.
fn sl3_trace_form() -> Result<Option<String>> {
    let g = LieAlgebraA::new(3)?;
    for label in ["s", "r", "n"] {
        let a = ElementSpec::parse(label, &[])?.build(3)?;
        let sys = ShiftSystem::build(&a)?;
        let x = g.symbolic();
        let am = crate::lie::SymMatrix::constant(g.ring(), a.matrix());
        let want = [
            x.pow(2).trace(),
            x.pow(3).trace(),
            am.mul(&x).trace().scale(&Scalar::from(2)),
            am.mul(&x.pow(2)).trace().scale(&Scalar::from(3)),
            am.pow(2).mul(&x).trace().scale(&Scalar::from(6)),
        ];
        if sys.scaled_components() != want {
            return Ok(Some(format!("a = {label}: components differ from the trace form")));
        }
    }
    Ok(None)
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn sl3_atlas_tables() -> Result<Option<String>> {
    let tables = [
        (
            "s",
            set(&["***/0**/00*", "*00/**0/***", "**0/0*0/***", "*0*/***/00*", "*00/***/*0*", "***/0*0/0**"]),
            set(&["***/***/00*", "**0/**0/***", "***/0**/0**", "*00/***/***", "***/0*0/***", "*0*/***/*0*"]),
            "*00/0*0/00*",
        ),
        (
            "r",
            set(&["***/0**/00*", "**0/0*0/***", "***/0*0/0**"]),
            set(&["***/***/00*", "**0/**0/***", "***/0**/0**", "***/0*0/***"]),
            "**0/0*0/00*",
        ),
        ("n", set(&["***/0**/00*"]), set(&["***/***/00*", "***/0**/0**"]), "***/0**/00*"),
    ];
    for (label, borels, parabolics, b_a) in tables {
        let atlas = enumerate_atlas(&ElementSpec::parse(label, &[])?.build(3)?)?;
        let g = &atlas.algebra;
        let got_b: BTreeSet<String> = atlas.borels.iter().map(|p| p.pattern(g)).collect();
        let got_p: BTreeSet<String> = atlas.parabolics.iter().map(|p| p.pattern(g)).collect();
        let diff = expect_eq(&format!("B_{label}"), &borels, &got_b)
            .or_else(|| expect_eq(&format!("P_{label}"), &parabolics, &got_p))
            .or_else(|| expect_eq(&format!("b^{label}"), b_a.to_string(), atlas.b_a.pattern(g)));
        if diff.is_some() {
            return Ok(diff);
        }
    }
    Ok(None)
}

fn sl3_counts() -> Result<Option<String>> {
    let t = IPrimeTable::default();
    for (label, formula, lower) in [("s", "|I'_s| + 0 + 6", 7), ("r", "|I'_r| + 0 + 3", 4), ("n", "|I'_n| + 0 + 1", 2)] {
        let c = count_zero_fibre(&ElementSpec::parse(label, &[])?.build(3)?, label, &t)?;
        let diff = expect_eq(label, (formula, lower), (c.formula.as_str(), c.total.lower_bound));
        if diff.is_some() {
            return Ok(diff);
        }
    }
    Ok(None)
}

fn sl3_exotic() -> Result<Option<String>> {
    let i = |v: i64| Scalar::from(v) * Scalar::i();
    let z = Scalar::zero();
    let w_r = GElement::from_rows(vec![
        vec![Scalar::from(-3), Scalar::one(), i(3)],
        vec![z.clone(), Scalar::from(3), i(9)],
        vec![i(3), z.clone(), z.clone()],
    ])?;
    let w_n = GElement::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, -1, 0]])?;
    let s = GElement::from_ints(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]])?;
    let w_s = semisimple_exotic_witness(&s)?;
    let r = ElementSpec::parse("r", &[])?.build(3)?;
    let n = ElementSpec::parse("n", &[])?.build(3)?;
    for (label, a, x) in [("r", r, w_r), ("n", n, w_n), ("s", s, w_s)] {
        let rep = Analysis::new(&a)?.exotic_witness_check(&x, &vec![Scalar::zero(); 5]);
        if !(rep.passed && rep.regular_nilpotent) {
            return Ok(Some(format!(
                "witness for {label}: image {:?}, inside {:?}",
                rep.image, rep.containing_members
            )));
        }
    }
    Ok(None)
}

fn sl3_degrees() -> Result<Option<String>> {
    for (label, degree) in [("r", 3), ("s", 6), ("n", 1)] {
        let an = Analysis::new(&ElementSpec::parse(label, &[])?.build(3)?)?;
        let rep = an.image_bba_check(10, &mut sampling::rng(0x6_2))?;
        let diff = expect_eq(label, vec![degree], rep.observed_degrees);
        if diff.is_some() {
            return Ok(diff);
        }
    }
    Ok(None)
}
