//! The Mishchenko-Fomenko system F_a: shifted invariants, Poisson brackets,
//! fibres, strong regularity, tangent spaces and Tarasov sections.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_math::{Field, MPoly, PolyRing};
use crate::lie::{krylov_rank, poly_det, GElement, LieAlgebraA, Subspace, SymMatrix};
use crate::sampling::{self, SeededRng};
use crate::{ExactMatrix, Poly, Scalar, UniPoly};

/// `tr(X^k)` for k = 2..=n.
pub fn invariant_generators(g: &LieAlgebraA) -> Vec<Poly> {
    let x = g.symbolic();
    let mut power = x.clone();
    let mut out = Vec::with_capacity(g.rank());
    for _ in 2..=g.n() {
        power = power.mul(&x);
        out.push(power.trace());
    }
    out
}

/// Directional derivative `sum_k a_k df/dx_k`.
fn directional(f: &Poly, a: &[Scalar]) -> Poly {
    let mut acc = Poly::zero(f.ring());
    for (k, c) in a.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &f.diff(k).scale(c);
        }
    }
    acc
}

/// Coefficients `f_j` (j < d) of `f(x + t a) = f(a) t^d + sum_j f_j(x) t^j`.
pub fn shift_expand(g: &LieAlgebraA, f: &Poly, d: u32, a: &GElement) -> Result<Vec<Poly>> {
    if !f.is_homogeneous() || f.total_degree().is_some_and(|e| e != d) {
        return Err(crate::MathError::NotHomogeneous.into());
    }
    let ac = g.coordinates(a);
    let mut out = Vec::with_capacity(d as usize);
    let mut cur = f.clone();
    let mut fact = Scalar::one();
    for j in 0..d {
        if j > 0 {
            cur = directional(&cur, &ac);
            fact = fact * Scalar::from(j as i64);
        }
        out.push(cur.scale(&fact.inv()));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceCertificate {
    pub point: GElement,
    pub rank: usize,
    pub attempts: usize,
}

/// F_a together with its shifted generators.
#[derive(Clone, Debug)]
pub struct ShiftSystem {
    pub algebra: LieAlgebraA,
    pub a: GElement,
    pub generators: Vec<Poly>,
    pub degrees: Vec<u32>,
    /// `table[i][j]` is the coefficient of `t^j` in `f_{i+1}(x + t a)`.
    pub table: Vec<Vec<Poly>>,
    /// Invariants first, then the shifted terms generator by generator.
    pub components: Vec<Poly>,
    /// `(i, j)` for each component, generators numbered from 1.
    pub labels: Vec<(usize, usize)>,
    /// Constant factors turning `components` into the conventional printed form.
    pub display_scaling: Vec<Scalar>,
    pub jacobian: Vec<Vec<Poly>>,
    pub certificate: IndependenceCertificate,
}

const CERTIFY_ATTEMPTS: usize = 25;
const CERTIFY_SEED: u64 = 0x5eed_0001;

impl ShiftSystem {
    pub fn build(a: &GElement) -> Result<Self> {
        a.require_regular()?;
        let g = LieAlgebraA::new(a.n())?;
        let generators = invariant_generators(&g);
        let degrees: Vec<u32> = (2..=g.n() as u32).collect();
        let table = generators
            .iter()
            .zip(&degrees)
            .map(|(f, &d)| shift_expand(&g, f, d, a))
            .collect::<Result<Vec<_>>>()?;
        let mut components = Vec::with_capacity(g.borel_dim());
        let mut labels = Vec::with_capacity(g.borel_dim());
        for (i, row) in table.iter().enumerate() {
            components.push(row[0].clone());
            labels.push((i + 1, 0));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, p) in row.iter().enumerate().skip(1) {
                components.push(p.clone());
                labels.push((i + 1, j));
            }
        }
        let jacobian = components
            .iter()
            .map(|p| (0..g.dim()).map(|k| p.diff(k)).collect())
            .collect();
        let display_scaling = display_scaling(g.n(), components.len());
        let mut sys = Self {
            algebra: g,
            a: a.clone(),
            generators,
            degrees,
            table,
            components,
            labels,
            display_scaling,
            jacobian,
            certificate: IndependenceCertificate {
                point: GElement::zero(a.n()),
                rank: 0,
                attempts: 0,
            },
        };
        sys.certificate = sys.certify_independence()?;
        Ok(sys)
    }

    fn certify_independence(&self) -> Result<IndependenceCertificate> {
        let b = self.b();
        let mut rng = sampling::rng(CERTIFY_SEED);
        for attempt in 1..=CERTIFY_ATTEMPTS {
            let x = sampling::random_element(&mut rng, &self.algebra, 4);
            let rank = self.jacobian_rank(&x);
            if rank == b {
                return Ok(IndependenceCertificate {
                    point: x,
                    rank,
                    attempts: attempt,
                });
            }
        }
        Err(Error::Certification(format!(
            "Jacobian rank below {b} at {CERTIFY_ATTEMPTS} random points"
        )))
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    pub fn b(&self) -> usize {
        self.components.len()
    }

    pub fn r(&self) -> usize {
        self.algebra.rank()
    }

    pub fn scaled_components(&self) -> Vec<Poly> {
        self.components
            .iter()
            .zip(&self.display_scaling)
            .map(|(p, c)| p.scale(c))
            .collect()
    }

    pub fn evaluate(&self, x: &GElement) -> Vec<Scalar> {
        let pt = self.algebra.coordinates(x);
        self.components
            .iter()
            .map(|p| p.eval(&pt).expect("dimension matches"))
            .collect()
    }

    pub fn jacobian_at(&self, x: &GElement) -> ExactMatrix {
        let pt = self.algebra.coordinates(x);
        let rows = self
            .jacobian
            .iter()
            .map(|row| row.iter().map(|p| p.eval(&pt).unwrap()).collect())
            .collect();
        ExactMatrix::from_rows(rows).expect("rectangular")
    }

    pub fn jacobian_rank(&self, x: &GElement) -> usize {
        self.jacobian_at(x).rank()
    }

    /// Whether `x` lies in the same fibre as `y`.
    pub fn fibre_membership(&self, x: &GElement, y: &GElement) -> bool {
        self.evaluate(x) == self.evaluate(y)
    }

    /// Fibre test through the λ-polynomials `tr((x + λa)^k)`.
    pub fn fibre_membership_lambda(&self, x: &GElement, y: &GElement) -> bool {
        let px = lambda_power_traces(x, &self.a);
        let py = lambda_power_traces(y, &self.a);
        px == py
    }

    /// λ values 0, 1, 2, ... skipping those with `x + λa` singular, `n` in total.
    pub fn finite_lambda_set(&self, x: &GElement) -> Vec<Scalar> {
        let n = self.n();
        let mut out = vec![Scalar::zero()];
        let mut k = 1i64;
        while out.len() < n {
            let lam = Scalar::from(k);
            let shifted = x.add_scaled(&lam, &self.a).unwrap();
            if krylov_rank(shifted.matrix()) == n || k > 10 * n as i64 + 10 {
                out.push(lam);
            }
            k += 1;
        }
        out
    }

    /// Fibre test comparing characteristic polynomials of `x + λa` and
    /// `y + λa` on the finite set from [`Self::finite_lambda_set`].
    pub fn fibre_membership_finite(&self, x: &GElement, y: &GElement) -> bool {
        self.finite_lambda_set(x).iter().all(|lam| {
            let xs = x.add_scaled(lam, &self.a).unwrap();
            let ys = y.add_scaled(lam, &self.a).unwrap();
            xs.charpoly() == ys.charpoly()
        })
    }

    /// Generators `g_ij = f_i(x + λ_j a) - f_i(λ_j a)` for a table of shifts.
    pub fn alt_generators(&self, lambdas: &[Vec<Scalar>]) -> Result<Vec<Vec<Poly>>> {
        if lambdas.len() != self.r() {
            return Err(Error::InvalidInput(format!(
                "need {} rows of shift values",
                self.r()
            )));
        }
        let ring = self.algebra.ring();
        let ac = self.algebra.coordinates(&self.a);
        let mut out = Vec::with_capacity(self.r());
        for (i, row) in lambdas.iter().enumerate() {
            if row.len() != self.degrees[i] as usize {
                return Err(Error::InvalidInput(format!(
                    "row {} needs {} shift values",
                    i + 1,
                    self.degrees[i]
                )));
            }
            for (p, lp) in row.iter().enumerate() {
                if row[..p].contains(lp) {
                    return Err(Error::RepeatedLambda);
                }
            }
            let f = &self.generators[i];
            let mut gens = Vec::with_capacity(row.len());
            for lam in row {
                let images: Vec<Poly> = ac
                    .iter()
                    .enumerate()
                    .map(|(k, c)| &MPoly::var(ring, k) + &MPoly::constant(ring, c.clone() * lam))
                    .collect();
                let shifted = f.compose(&images)?;
                let shift_only: Vec<Scalar> = ac.iter().map(|c| c.clone() * lam).collect();
                let at_shift = f.eval(&shift_only)?;
                gens.push(&shifted - &MPoly::constant(ring, at_shift));
            }
            out.push(gens);
        }
        Ok(out)
    }

    pub fn is_strongly_regular(&self, x: &GElement) -> bool {
        self.jacobian_rank(x) == self.b()
    }

    /// Strong regularity by three routes: Jacobian rank, regularity of
    /// `x + λa` at 2b+1 values of λ, and a gcd certificate on the Krylov minors.
    pub fn strong_regularity(&self, x: &GElement) -> StrongRegularity {
        let n = self.n();
        let b = self.b();
        let jacobian_rank = self.jacobian_rank(x);
        let sampled = (0..=(2 * b) as i64).all(|k| {
            let lam = Scalar::from(k - b as i64);
            krylov_rank(x.add_scaled(&lam, &self.a).unwrap().matrix()) == n
        });
        let gcd = krylov_minor_gcd(x, &self.a);
        let gcd_constant = gcd.degree() == Some(0);
        StrongRegularity {
            jacobian_rank,
            by_jacobian: jacobian_rank == b,
            sampled_lambdas_regular: sampled,
            krylov_gcd: gcd.to_string(),
            by_krylov_gcd: gcd_constant,
        }
    }

    /// Gradient of a polynomial at `x` with respect to the trace form
    /// (defined up to a multiple of the identity; the last diagonal entry is 0).
    pub fn gradient_at(&self, f: &Poly, x: &GElement) -> ExactMatrix {
        gradient_matrix(&self.algebra, f)
            .eval(&self.algebra.coordinates(x))
            .expect("dimension matches")
    }

    /// The three spans describing the tangent space of the fibre at a strongly regular `x`.
    pub fn tangent_spaces(&self, x: &GElement) -> Result<TangentSpaces> {
        if !self.is_strongly_regular(x) {
            return Err(Error::NotStronglyRegular);
        }
        let g = &self.algebra;
        let br = |m: &ExactMatrix, y: &ExactMatrix| {
            g.coordinates(&GElement::new(m.commutator(y)).expect("commutators are traceless"))
        };
        let grads: Vec<ExactMatrix> = self.components.iter().map(|f| self.gradient_at(f, x)).collect();
        let shifted_only: Vec<Vec<Scalar>> = grads[self.r()..]
            .iter()
            .map(|gr| br(x.matrix(), gr))
            .collect();
        let all: Vec<Vec<Scalar>> = grads.iter().map(|gr| br(x.matrix(), gr)).collect();
        let mut via_shifts = Vec::new();
        for k in 1..=self.n() as i64 {
            let xs = x.add_scaled(&Scalar::from(k), &self.a)?;
            for f in &self.generators {
                via_shifts.push(br(self.a.matrix(), &self.gradient_at(f, &xs)));
            }
        }
        let dim = g.dim();
        Ok(TangentSpaces {
            shifted_components: Subspace::from_vectors(dim, &shifted_only),
            all_components: Subspace::from_vectors(dim, &all),
            shifted_invariants: Subspace::from_vectors(dim, &via_shifts),
        })
    }

    /// Tangent space of the fibre through `x`, after checking that all three
    /// descriptions agree and have dimension b - r.
    pub fn tangent_space(&self, x: &GElement) -> Result<Subspace> {
        let t = self.tangent_spaces(x)?;
        if t.shifted_components != t.all_components || t.all_components != t.shifted_invariants {
            return Err(Error::Certification("tangent space descriptions disagree".into()));
        }
        if t.all_components.dim() != self.b() - self.r() {
            return Err(Error::Certification(format!(
                "tangent space has dimension {}",
                t.all_components.dim()
            )));
        }
        Ok(t.all_components)
    }
}

fn display_scaling(n: usize, b: usize) -> Vec<Scalar> {
    match n {
        2 => vec![Scalar::from_ratio(1, 2); b],
        3 => vec![1, 1, 1, 1, 2].into_iter().map(Scalar::from).collect(),
        _ => vec![Scalar::one(); b],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongRegularity {
    pub jacobian_rank: usize,
    pub by_jacobian: bool,
    pub sampled_lambdas_regular: bool,
    pub krylov_gcd: String,
    pub by_krylov_gcd: bool,
}

impl StrongRegularity {
    pub fn consistent(&self) -> bool {
        self.by_jacobian == self.by_krylov_gcd && (!self.by_jacobian || self.sampled_lambdas_regular)
    }
}

#[derive(Clone, Debug)]
pub struct TangentSpaces {
    pub shifted_components: Subspace,
    pub all_components: Subspace,
    pub shifted_invariants: Subspace,
}

/// Gradient with respect to the trace form as a symbolic gl_n matrix:
/// entry (j, i) is `df/dx_ij`, diagonal entries are `df/dx_kk` and 0.
pub fn gradient_matrix(g: &LieAlgebraA, f: &Poly) -> SymMatrix {
    let n = g.n();
    let mut entries = vec![Poly::zero(g.ring()); n * n];
    for (k, &(i, j)) in g.positions().iter().enumerate() {
        entries[j * n + i] = f.diff(k);
    }
    SymMatrix::new(n, entries)
}

/// Lie-Poisson bracket `{f, h}(x) = tr(x [grad f, grad h])`.
pub fn poisson_bracket(g: &LieAlgebraA, f: &Poly, h: &Poly) -> Result<Poly> {
    if f.ring() != g.ring() || h.ring() != g.ring() {
        return Err(crate::MathError::RingMismatch.into());
    }
    let gf = gradient_matrix(g, f);
    let gh = gradient_matrix(g, h);
    Ok(g.symbolic().mul(&gf.commutator(&gh)).trace())
}

fn lambda_matrix(x: &GElement, a: &GElement) -> Vec<UniPoly> {
    x.matrix()
        .data()
        .iter()
        .zip(a.matrix().data())
        .map(|(p, q)| UniPoly::new(vec![p.clone(), q.clone()]))
        .collect()
}

fn upoly_mat_mul(a: &[UniPoly], b: &[UniPoly], n: usize) -> Vec<UniPoly> {
    let mut out = vec![UniPoly::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i * n + j] = &out[i * n + j] + &(&a[i * n + k] * &b[k * n + j]);
            }
        }
    }
    out
}

/// `tr((x + λa)^k)` for k = 2..=n as polynomials in λ.
pub fn lambda_power_traces(x: &GElement, a: &GElement) -> Vec<UniPoly> {
    let n = x.n();
    let m = lambda_matrix(x, a);
    let mut p = m.clone();
    let mut out = Vec::new();
    for _ in 2..=n {
        p = upoly_mat_mul(&p, &m, n);
        out.push((0..n).fold(UniPoly::zero(), |acc, i| &acc + &p[i * n + i]));
    }
    out
}

fn upoly_det(m: &[UniPoly], n: usize) -> UniPoly {
    fn rec(m: &[UniPoly], n: usize, row: usize, cols: &[usize]) -> UniPoly {
        if cols.len() == 1 {
            return m[row * n + cols[0]].clone();
        }
        let mut acc = UniPoly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let e = &m[row * n + c];
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let t = e * &rec(m, n, row + 1, &rest);
            acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }
    let cols: Vec<usize> = (0..n).collect();
    rec(m, n, 0, &cols)
}

/// Monic gcd of the maximal minors of the Krylov matrix of `x + λa`.
///
/// `x + λa` is regular exactly when the Krylov matrix has full rank, so a
/// constant gcd certifies regularity for every complex λ.
pub fn krylov_minor_gcd(x: &GElement, a: &GElement) -> UniPoly {
    let n = x.n();
    let m = lambda_matrix(x, a);
    let mut cols: Vec<Vec<UniPoly>> = Vec::with_capacity(n);
    let mut id = vec![UniPoly::zero(); n * n];
    for i in 0..n {
        id[i * n + i] = UniPoly::constant(Scalar::one());
    }
    let mut p = id;
    for _ in 0..n {
        cols.push(p.clone());
        p = upoly_mat_mul(&p, &m, n);
    }
    let rows = n * n;
    let mut gcd = UniPoly::zero();
    let mut chosen: Vec<usize> = (0..n).collect();
    loop {
        let minor: Vec<UniPoly> = chosen
            .iter()
            .flat_map(|&r| cols.iter().map(move |c| c[r].clone()))
            .collect();
        let d = upoly_det(&minor, n);
        if !d.is_zero() {
            gcd = gcd.gcd(&d);
            if gcd.degree() == Some(0) {
                return gcd;
            }
        }
        // next n-subset of rows
        let Some(pos) = (0..n).rev().find(|&i| chosen[i] < rows - n + i) else {
            return gcd;
        };
        chosen[pos] += 1;
        for i in pos + 1..n {
            chosen[i] = chosen[i - 1] + 1;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TarasovReport {
    pub n: usize,
    pub a: GElement,
    pub jacobian_determinant: String,
    pub determinant_constant_nonzero: bool,
    pub samples: usize,
    pub strongly_regular_samples: usize,
    pub pairs: usize,
    pub injective_pairs: usize,
    pub passed: bool,
}

/// Restricts F_a to `ξ + b` (ξ the sum of the subdiagonal unit matrices,
/// b upper triangular), certifies a constant nonzero Jacobian determinant and
/// samples strong regularity and injectivity.
pub fn tarasov_check(
    sys: &ShiftSystem,
    samples: usize,
    pairs: usize,
    rng: &mut SeededRng,
) -> Result<TarasovReport> {
    if !sys.a.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let g = &sys.algebra;
    let n = g.n();
    let upper = upper_borel_coordinates(g);
    let params: Vec<String> = (1..=upper.len()).map(|k| format!("t{k}")).collect();
    let ring = PolyRing::new(params);
    let images: Vec<Poly> = g
        .positions()
        .iter()
        .map(|&(i, j)| {
            if let Some(k) = upper.iter().position(|&c| g.positions()[c] == (i, j)) {
                MPoly::var(&ring, k)
            } else if i == j + 1 {
                MPoly::constant(&ring, Scalar::one())
            } else {
                Poly::zero(&ring)
            }
        })
        .collect();
    let restricted: Vec<Poly> = sys
        .components
        .iter()
        .map(|p| p.compose(&images))
        .collect::<std::result::Result<_, _>>()?;
    let jac: Vec<Vec<Poly>> = restricted
        .iter()
        .map(|p| (0..upper.len()).map(|k| p.diff(k)).collect())
        .collect();
    let det = poly_det(&jac);
    let det_ok = det.is_constant() && !det.is_zero();

    let section_point = |t: &[Scalar]| -> GElement {
        let mut c = vec![Scalar::zero(); g.dim()];
        for (k, &idx) in upper.iter().enumerate() {
            c[idx] = t[k].clone();
        }
        for i in 0..n - 1 {
            c[g.coordinate_index(i + 1, i).unwrap()] = Scalar::one();
        }
        g.element_from_coordinates(&c).unwrap()
    };
    let mut sreg = 0;
    for _ in 0..samples {
        let t: Vec<Scalar> = (0..upper.len()).map(|_| sampling::small_rational(rng, 5)).collect();
        if sys.is_strongly_regular(&section_point(&t)) {
            sreg += 1;
        }
    }
    let mut injective = 0;
    for _ in 0..pairs {
        let t1: Vec<Scalar> = (0..upper.len()).map(|_| sampling::small_int(rng, 4)).collect();
        let mut t2: Vec<Scalar> = (0..upper.len()).map(|_| sampling::small_int(rng, 4)).collect();
        while t2 == t1 {
            t2 = (0..upper.len()).map(|_| sampling::small_int(rng, 4)).collect();
        }
        if sys.evaluate(&section_point(&t1)) != sys.evaluate(&section_point(&t2)) {
            injective += 1;
        }
    }
    Ok(TarasovReport {
        n,
        a: sys.a.clone(),
        jacobian_determinant: det.to_string(),
        determinant_constant_nonzero: det_ok,
        samples,
        strongly_regular_samples: sreg,
        pairs,
        injective_pairs: injective,
        passed: det_ok && sreg == samples && injective == pairs,
    })
}

/// Coordinate indices spanning the upper triangular Borel, in coordinate order.
pub fn upper_borel_coordinates(g: &LieAlgebraA) -> Vec<usize> {
    g.positions()
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| i <= j)
        .map(|(k, _)| k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(rows: &[&[i64]]) -> GElement {
        GElement::from_ints(rows).unwrap()
    }

    #[test]
    fn sl2_components() {
        let s = el(&[&[1, 0], &[0, -1]]);
        let sys = ShiftSystem::build(&s).unwrap();
        let c: Vec<String> = sys.scaled_components().iter().map(ToString::to_string).collect();
        assert_eq!(c, ["x12*x21 + x11^2", "2*x11"]);
        let n = el(&[&[0, 1], &[0, 0]]);
        let sys = ShiftSystem::build(&n).unwrap();
        let c: Vec<String> = sys.scaled_components().iter().map(ToString::to_string).collect();
        assert_eq!(c, ["x12*x21 + x11^2", "x21"]);
    }

    #[test]
    fn rejects_non_regular() {
        let d = el(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]]);
        assert!(matches!(ShiftSystem::build(&d), Err(Error::NotRegular { .. })));
    }

    #[test]
    fn non_homogeneous_input() {
        let g = LieAlgebraA::new(2).unwrap();
        let f = Poly::parse(g.ring(), "x11^2 + x12").unwrap();
        assert!(shift_expand(&g, &f, 2, &el(&[&[1, 0], &[0, -1]])).is_err());
    }

    #[test]
    fn linear_brackets() {
        let g = LieAlgebraA::new(2).unwrap();
        let h = el(&[&[1, 0], &[0, -1]]);
        let e = GElement::e(2, 0, 1);
        let ph = g.linear_function(&h);
        let pe = g.linear_function(&e);
        assert_eq!(
            poisson_bracket(&g, &ph, &pe).unwrap(),
            pe.scale(&Scalar::from(2))
        );
        assert!(poisson_bracket(&g, &ph, &ph).unwrap().is_zero());
    }
}
