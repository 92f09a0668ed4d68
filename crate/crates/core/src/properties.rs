//! Seeded randomized checks of the structural identities satisfied by F_a.
//! Each check runs a fixed number of exact instances and records the first
//! counterexample.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::elements::ElementSpec;
use crate::error::Result;
use crate::flags::enumerate_atlas;
use crate::lie::{GElement, LieAlgebraA, Subspace};
use crate::mf::{invariant_generators, shift_expand, ShiftSystem};
use crate::sampling::{self, SeededRng};
use crate::{ExactMatrix, Scalar};

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub passed: bool,
}

struct Tally {
    name: &'static str,
    instances: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            instances: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: Result<bool>, what: impl FnOnce() -> String) {
        self.instances += 1;
        let msg = match ok {
            Ok(true) => return,
            Ok(false) => what(),
            Err(e) => format!("{}: {e}", what()),
        };
        self.failures += 1;
        self.first_failure.get_or_insert(msg);
    }

    fn finish(self) -> PropertyReport {
        PropertyReport {
            name: self.name,
            instances: self.instances,
            failures: self.failures,
            passed: self.failures == 0 && self.instances > 0,
            first_failure: self.first_failure,
        }
    }
}

/// The sl_2 and sl_3 systems for the representatives s, r, n.
pub fn representative_systems() -> Result<Vec<ShiftSystem>> {
    let mut out = Vec::new();
    for (n, label) in [(2, "s"), (2, "n"), (3, "s"), (3, "r"), (3, "n")] {
        out.push(ShiftSystem::build(&ElementSpec::parse(label, &[])?.build(n)?)?);
    }
    Ok(out)
}

fn eval_at(g: &LieAlgebraA, p: &crate::Poly, x: &GElement) -> Result<Scalar> {
    Ok(p.eval(&g.coordinates(x))?)
}

fn nonzero_rational(rng: &mut SeededRng, bound: i64) -> Scalar {
    loop {
        let v = sampling::small_rational(rng, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// `f_i(x + λa) = λ^{d_i} f_i(a) + sum_j λ^j f_ij(x)` at random `x`, `λ`.
pub fn reconstruction(systems: &[ShiftSystem], instances: usize, rng: &mut SeededRng) -> PropertyReport {
    let mut t = Tally::new("shift_reconstruction");
    for k in 0..instances {
        let sys = &systems[k % systems.len()];
        let g = &sys.algebra;
        let x = sampling::random_rational_element(rng, g, 5);
        let lam = sampling::small_rational(rng, 5);
        let ok = (|| {
            let shifted = x.add_scaled(&lam, &sys.a)?;
            for (i, f) in sys.generators.iter().enumerate() {
                let d = sys.degrees[i];
                let mut rhs = eval_at(g, f, &sys.a)? * lam.pow(d);
                for (j, p) in sys.table[i].iter().enumerate() {
                    rhs = rhs + eval_at(g, p, &x)? * lam.pow(j as u32);
                }
                if eval_at(g, f, &shifted)? != rhs {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        t.record(ok, || format!("a = {}, x = {x}, lambda = {lam}", sys.a));
    }
    t.finish()
}

/// Each `f_ij` is homogeneous of degree `d_i - j`, and `f_ij(tx) = t^{d_i-j} f_ij(x)`.
pub fn homogeneity(systems: &[ShiftSystem], instances: usize, rng: &mut SeededRng) -> PropertyReport {
    let mut t = Tally::new("homogeneity");
    for k in 0..instances {
        let sys = &systems[k % systems.len()];
        let g = &sys.algebra;
        let x = sampling::random_rational_element(rng, g, 5);
        let s = nonzero_rational(rng, 4);
        let ok = (|| {
            for (p, &(i, j)) in sys.components.iter().zip(&sys.labels) {
                let e = sys.degrees[i - 1] - j as u32;
                if !p.is_homogeneous() || p.total_degree() != Some(e) {
                    return Ok(false);
                }
                if eval_at(g, p, &x.scale(&s))? != eval_at(g, p, &x)? * s.pow(e) {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        t.record(ok, || format!("a = {}, x = {x}, t = {s}", sys.a));
    }
    t.finish()
}

/// Values of all shifted components of `a` at `x`, without building a full system.
fn shifted_values(g: &LieAlgebraA, gens: &[crate::Poly], a: &GElement, x: &GElement) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for (f, d) in gens.iter().zip(2..) {
        for p in shift_expand(g, f, d, a)? {
            out.push(eval_at(g, &p, x)?);
        }
    }
    Ok(out)
}

/// `F_a(Ad_h x) = F_{Ad_{h^-1} a}(x)` for random unimodular `h`.
pub fn equivariance(systems: &[ShiftSystem], instances: usize, rng: &mut SeededRng) -> PropertyReport {
    let mut t = Tally::new("adjoint_equivariance");
    for k in 0..instances {
        let sys = &systems[k % systems.len()];
        let g = &sys.algebra;
        let h = sampling::random_unimodular(rng, g.n());
        let h_inv = h.inverse().expect("unimodular");
        let x = sampling::random_rational_element(rng, g, 4);
        let ok = (|| {
            let gens = invariant_generators(g);
            let lhs = shifted_values(g, &gens, &sys.a, &x.conjugate(&h, &h_inv))?;
            let rhs = shifted_values(g, &gens, &sys.a.conjugate(&h_inv, &h), &x)?;
            Ok(lhs == rhs)
        })();
        t.record(ok, || format!("a = {}, x = {x}, h = {h:?}", sys.a));
    }
    t.finish()
}

/// `F_a(x) = F_a(Ad_b x)` for `x` and `b` upper triangular in the adapted basis of `a`.
pub fn borel_invariance(systems: &[ShiftSystem], instances: usize, rng: &mut SeededRng) -> PropertyReport {
    let mut t = Tally::new("borel_invariance");
    let bases: Vec<_> = systems.iter().map(|s| crate::flags::AdaptedBasis::new(&s.a)).collect();
    for k in 0..instances {
        let sys = &systems[k % systems.len()];
        let n = sys.n();
        let basis = match &bases[k % systems.len()] {
            Ok(b) => b,
            Err(e) => {
                t.record(Err(e.clone()), || format!("a = {}", sys.a));
                continue;
            }
        };
        let mut y = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                y.set(i, j, sampling::small_int(rng, 4));
            }
        }
        let tr = y.trace() / Scalar::from(n as i64);
        y = y.sub(&ExactMatrix::identity(n).scale(&tr));
        let b = sampling::random_upper_unimodular(rng, n);
        let b_inv = b.inverse().expect("unimodular");
        let ok = (|| {
            let x = GElement::new(basis.from_adapted(&y))?;
            let bx = GElement::new(basis.from_adapted(&b.mul(&y).mul(&b_inv)))?;
            Ok(sys.evaluate(&x) == sys.evaluate(&bx))
        })();
        t.record(ok, || format!("a = {}, y = {y:?}, b = {b:?}", sys.a));
    }
    t.finish()
}

fn distinct_row(rng: &mut SeededRng, len: usize) -> Vec<Scalar> {
    let mut row: Vec<Scalar> = Vec::with_capacity(len);
    while row.len() < len {
        let v = sampling::small_rational(rng, 6);
        if !row.contains(&v) {
            row.push(v);
        }
    }
    row
}

/// `g_ij = sum_k λ_j^k f_ik` as polynomials, and fibre membership through the
/// `g_ij` agrees with membership through the `f_ij`.
pub fn vandermonde(systems: &[ShiftSystem], instances: usize, rng: &mut SeededRng) -> PropertyReport {
    let mut t = Tally::new("alternative_generators");
    for k in 0..instances {
        let sys = &systems[k % systems.len()];
        let g = &sys.algebra;
        let lambdas: Vec<Vec<Scalar>> = sys.degrees.iter().map(|&d| distinct_row(rng, d as usize)).collect();
        let (x, y) = fibre_pair(sys, rng, k % 2 == 0);
        let ok = (|| {
            let alt = sys.alt_generators(&lambdas)?;
            for (i, row) in alt.iter().enumerate() {
                for (gij, lam) in row.iter().zip(&lambdas[i]) {
                    let mut sum = crate::Poly::zero(g.ring());
                    let mut pw = Scalar::one();
                    for f in &sys.table[i] {
                        sum = &sum + &f.scale(&pw);
                        pw = pw * lam;
                    }
                    if *gij != sum {
                        return Ok(false);
                    }
                }
            }
            let same_alt = alt
                .iter()
                .flatten()
                .map(|p| Ok(eval_at(g, p, &x)? == eval_at(g, p, &y)?))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            Ok(same_alt == sys.fibre_membership(&x, &y))
        })();
        t.record(ok, || format!("a = {}, lambdas = {lambdas:?}", sys.a));
    }
    t.finish()
}

/// A pair of points; in a common fibre when `same` (x in a Borel containing
/// `a`, y a translate along its nilradical), otherwise independent.
fn fibre_pair(sys: &ShiftSystem, rng: &mut SeededRng, same: bool) -> (GElement, GElement) {
    let g = &sys.algebra;
    let n = g.n();
    let basis = crate::flags::AdaptedBasis::new(&sys.a).expect("representatives have rational eigenvalues");
    let upper = |rng: &mut SeededRng, strict: bool| {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in (if strict { i + 1 } else { i })..n {
                m.set(i, j, sampling::small_int(rng, 4));
            }
        }
        let tr = m.trace() / Scalar::from(n as i64);
        GElement::new(basis.from_adapted(&m.sub(&ExactMatrix::identity(n).scale(&tr)))).expect("traceless")
    };
    let x = upper(rng, false);
    let y = if same {
        x.add(&upper(rng, true)).expect("same n")
    } else if rng.gen_bool(0.5) {
        sampling::random_element(rng, g, 4)
    } else {
        // near miss: a translate perturbed in one coordinate
        let k = rng.gen_range(0..g.dim());
        x.add(&upper(rng, true))
            .and_then(|z| z.add(&g.basis_element(k)))
            .expect("same n")
    };
    (x, y)
}

/// Fibre membership by the components, by the λ-polynomials and by
/// characteristic polynomials on the finite λ set all agree.
pub fn finite_lambda(systems: &[ShiftSystem], instances: usize, rng: &mut SeededRng) -> PropertyReport {
    let mut t = Tally::new("finite_lambda_membership");
    let mut positives = 0;
    for k in 0..instances {
        let sys = &systems[k % systems.len()];
        let (x, y) = fibre_pair(sys, rng, k % 2 == 0);
        let m = sys.fibre_membership(&x, &y);
        positives += m as usize;
        let ok = m == sys.fibre_membership_finite(&x, &y) && m == sys.fibre_membership_lambda(&x, &y);
        t.record(Ok(ok), || format!("a = {}, x = {x}, y = {y}", sys.a));
    }
    if positives == 0 || positives == instances {
        t.failures += 1;
        t.first_failure
            .get_or_insert_with(|| format!("degenerate sample: {positives} of {instances} pairs share a fibre"));
    }
    t.finish()
}

/// The three descriptions of the tangent space at strongly regular points agree
/// and have dimension b - r.
pub fn tangent_spaces(systems: &[ShiftSystem], instances: usize, rng: &mut SeededRng) -> PropertyReport {
    let mut t = Tally::new("tangent_space_agreement");
    for k in 0..instances {
        let sys = &systems[k % systems.len()];
        let mut x = sampling::random_element(rng, &sys.algebra, 4);
        while !sys.is_strongly_regular(&x) {
            x = sampling::random_element(rng, &sys.algebra, 4);
        }
        let ok = sys.tangent_space(&x).map(|s| s.dim() == sys.b() - sys.r());
        t.record(ok, || format!("a = {}, x = {x}", sys.a));
    }
    t.finish()
}

/// Random regular element with rational eigenvalues: one Jordan block per
/// eigenvalue, block sizes a random composition of `n`, conjugated by a
/// random unimodular matrix.
pub fn random_regular(rng: &mut SeededRng, n: usize) -> GElement {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    let mut eig: Vec<i64> = Vec::new();
    while eig.len() < sizes.len() {
        let v = rng.gen_range(-5..=5);
        if !eig.contains(&v) {
            eig.push(v);
        }
    }
    let mut m = ExactMatrix::zeros(n, n);
    let mut at = 0;
    for (&s, &e) in sizes.iter().zip(&eig) {
        for i in 0..s {
            m.set(at + i, at + i, Scalar::from(e));
            if i + 1 < s {
                m.set(at + i, at + i + 1, Scalar::one());
            }
        }
        at += s;
    }
    let tr = m.trace() / Scalar::from(n as i64);
    m = m.sub(&ExactMatrix::identity(n).scale(&tr));
    let h = sampling::random_unimodular(rng, n);
    let h_inv = h.inverse().expect("unimodular");
    GElement::new(h.mul(&m).mul(&h_inv)).expect("traceless")
}

/// The centralizer of a regular `a` lies in every Borel containing `a`.
pub fn centralizer_in_borels(instances: usize, rng: &mut SeededRng) -> PropertyReport {
    let mut t = Tally::new("centralizer_in_borels");
    for k in 0..instances {
        let n = [2, 3, 3, 4][k % 4];
        let a = random_regular(rng, n);
        let ok = (|| {
            let atlas = enumerate_atlas(&a)?;
            let g = &atlas.algebra;
            let ga = Subspace::from_elements(g, &a.centralizer());
            Ok(ga.dim() == g.rank() && atlas.borels.iter().all(|b| ga.is_subspace_of(&b.p)))
        })();
        t.record(ok, || format!("a = {a}"));
    }
    t.finish()
}

/// The checks of one system, plus `g_a` inside every Borel of its own atlas.
pub fn run_for(sys: &ShiftSystem, instances: usize, rng: &mut SeededRng) -> Vec<PropertyReport> {
    let systems = std::slice::from_ref(sys);
    let mut out = vec![
        reconstruction(systems, instances, rng),
        homogeneity(systems, instances, rng),
        equivariance(systems, instances, rng),
        borel_invariance(systems, instances, rng),
        vandermonde(systems, instances, rng),
        finite_lambda(systems, instances, rng),
        tangent_spaces(systems, instances, rng),
    ];
    let mut t = Tally::new("centralizer_in_borels");
    let ok = enumerate_atlas(&sys.a).map(|atlas| {
        let ga = Subspace::from_elements(&sys.algebra, &sys.a.centralizer());
        atlas.borels.iter().all(|b| ga.is_subspace_of(&b.p))
    });
    t.record(ok, || format!("a = {}", sys.a));
    out.push(t.finish());
    out
}

/// Runs every check with `instances` instances each.
pub fn run_all(instances: usize, seed: u64) -> Result<Vec<PropertyReport>> {
    let systems = representative_systems()?;
    let mut rng = sampling::rng(seed);
    Ok(vec![
        reconstruction(&systems, instances, &mut rng),
        homogeneity(&systems, instances, &mut rng),
        equivariance(&systems, instances, &mut rng),
        borel_invariance(&systems, instances, &mut rng),
        vandermonde(&systems, instances, &mut rng),
        finite_lambda(&systems, instances, &mut rng),
        tangent_spaces(&systems, instances, &mut rng),
        centralizer_in_borels(instances, &mut rng),
    ])
}
