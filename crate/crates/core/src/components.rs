//! Affine components of fibres of F_a, the recursive count of components of
//! the zero fibre, and witness and sampling checks built on the Borel atlas.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::{MPoly, PolyRing};
use crate::flags::{enumerate_atlas, jordan_type_label, AdaptedBasis, BorelAtlas, FlagParabolic};
use crate::lie::{weyl_group, weyl_stabilizer, GElement, LieAlgebraA, Subspace, SymMatrix, WeylElement};
use crate::mf::{upper_borel_coordinates, ShiftSystem};
use crate::sampling::{self, SeededRng};
use crate::{ExactMatrix, Poly, Scalar};

/// The affine subspace `base_point + span(direction_space)`.
#[derive(Clone, Debug, Serialize)]
pub struct AffineComponent {
    pub base_point: GElement,
    pub direction_space: Vec<GElement>,
}

impl AffineComponent {
    /// Builds the subspace after certifying that every component of F_a is
    /// constant on it.
    pub fn certified(sys: &ShiftSystem, base: GElement, directions: &Subspace) -> Result<Self> {
        let comp = Self {
            base_point: base,
            direction_space: directions.basis(&sys.algebra),
        };
        if !comp.is_level_set(sys)? {
            return Err(Error::Certification(
                "F_a is not constant on the affine subspace".into(),
            ));
        }
        Ok(comp)
    }

    pub fn dim(&self) -> usize {
        self.direction_space.len()
    }

    pub fn directions(&self, g: &LieAlgebraA) -> Subspace {
        Subspace::from_elements(g, &self.direction_space)
    }

    /// Whether the restriction of every component to the subspace is free of
    /// the parameters.
    pub fn is_level_set(&self, sys: &ShiftSystem) -> Result<bool> {
        let restricted = restrict_affine(
            &sys.algebra,
            &sys.components,
            &self.base_point,
            &self.direction_space,
        )?;
        Ok(restricted.iter().all(MPoly::is_constant))
    }

    pub fn contains(&self, g: &LieAlgebraA, x: &GElement) -> bool {
        match x.sub(&self.base_point) {
            Ok(d) => self.directions(g).contains_element(g, &d),
            Err(_) => false,
        }
    }

    /// Equality as affine subspaces.
    pub fn same_as(&self, g: &LieAlgebraA, other: &Self) -> bool {
        self.directions(g) == other.directions(g) && self.contains(g, &other.base_point)
    }
}

/// Substitutes `base + sum t_i dirs_i` into each polynomial. The results live
/// in the ring `t1..tk`.
pub fn restrict_affine(
    g: &LieAlgebraA,
    polys: &[Poly],
    base: &GElement,
    dirs: &[GElement],
) -> Result<Vec<Poly>> {
    let ring = PolyRing::new((1..=dirs.len()).map(|k| format!("t{k}")));
    let images = affine_images(g, &ring, &[(base.clone(), None)], dirs, 0);
    polys
        .iter()
        .map(|p| p.compose(&images).map_err(Error::from))
        .collect()
}

/// Coordinate images of `sum_terms + sum_i var(offset + i) * dirs_i`, where
/// each term is a fixed element optionally multiplied by a variable.
fn affine_images(
    g: &LieAlgebraA,
    ring: &std::sync::Arc<PolyRing>,
    terms: &[(GElement, Option<usize>)],
    dirs: &[GElement],
    offset: usize,
) -> Vec<Poly> {
    let mut images = vec![Poly::zero(ring); g.dim()];
    let mut push = |x: &GElement, var: Option<usize>| {
        for (k, c) in g.coordinates(x).into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match var {
                Some(v) => MPoly::var(ring, v).scale(&c),
                None => MPoly::constant(ring, c),
            };
            images[k] = &images[k] + &term;
        }
    };
    for (x, v) in terms {
        push(x, *v);
    }
    for (i, d) in dirs.iter().enumerate() {
        push(d, Some(offset + i));
    }
    images
}

/// Whether `x^(n-1) != 0 = x^n`.
pub fn is_regular_nilpotent(x: &GElement) -> bool {
    let n = x.n() as u32;
    !x.matrix().pow(n - 1).is_zero() && x.matrix().pow(n).is_zero()
}

/// `w` acting by permutation of the adapted basis.
fn weyl_act(basis: &AdaptedBasis, w: &WeylElement, x: &GElement) -> GElement {
    let y = GElement::from_traceless_unchecked(basis.to_adapted(x.matrix()));
    GElement::from_traceless_unchecked(basis.from_adapted(w.act(&y).matrix()))
}

/// Traceless diagonal matrices in the adapted basis.
fn adapted_cartan(basis: &AdaptedBasis) -> Vec<GElement> {
    let n = basis.n();
    (0..n - 1)
        .map(|k| {
            let mut m = ExactMatrix::zeros(n, n);
            m.set(k, k, Scalar::one());
            m.set(n - 1, n - 1, -Scalar::one());
            GElement::from_traceless_unchecked(basis.from_adapted(&m))
        })
        .collect()
}

fn adapted_diagonal(basis: &AdaptedBasis, d: &GElement) -> GElement {
    GElement::from_traceless_unchecked(basis.from_adapted(d.matrix()))
}

/// A shift system together with the Borel atlas of its shift element.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub sys: ShiftSystem,
    pub atlas: BorelAtlas,
}

impl Analysis {
    pub fn new(a: &GElement) -> Result<Self> {
        Ok(Self {
            sys: ShiftSystem::build(a)?,
            atlas: enumerate_atlas(a)?,
        })
    }

    fn g(&self) -> &LieAlgebraA {
        &self.sys.algebra
    }

    fn check_dim(&self, c: &AffineComponent) -> Result<()> {
        let want = self.sys.b() - self.sys.r();
        if c.dim() != want {
            return Err(Error::Certification(format!(
                "component has dimension {}, expected {want}",
                c.dim()
            )));
        }
        Ok(())
    }

    /// `x + u` for a Borel containing both `a` and `x`.
    pub fn borel_component(&self, x: &GElement, borel: &FlagParabolic) -> Result<AffineComponent> {
        if !borel.is_borel() {
            return Err(Error::InvalidInput("not a Borel subalgebra".into()));
        }
        if !borel.contains(self.g(), &self.sys.a) || !borel.contains(self.g(), x) {
            return Err(Error::NotInSubalgebra);
        }
        let c = AffineComponent::certified(&self.sys, x.clone(), &borel.u)?;
        self.check_dim(&c)?;
        Ok(c)
    }

    /// The translates `w x_h + u` over the Weyl group, for nilpotent `a` and
    /// `x` in the unique Borel containing it.
    pub fn weyl_components(&self, x: &GElement) -> Result<Vec<AffineComponent>> {
        if !self.sys.a.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let g = self.g();
        let borel = &self.atlas.borels[0];
        let xh = borel.levi_projection(g, x)?;
        let fx = self.sys.evaluate(x);
        let mut out: Vec<AffineComponent> = Vec::new();
        for w in weyl_group(g.n()) {
            let base = weyl_act(&self.atlas.basis, &w, &xh);
            if out.iter().any(|c| c.base_point == base) {
                continue;
            }
            if self.sys.evaluate(&base) != fx {
                return Err(Error::Certification(
                    "Weyl translate left the fibre".into(),
                ));
            }
            out.push(self.borel_component(&base, borel)?);
        }
        Ok(out)
    }

    /// `Y + u` for a component `Y` of a fibre of the Levi system.
    pub fn parabolic_lift(&self, p: &FlagParabolic, y: &AffineComponent) -> Result<AffineComponent> {
        let g = self.g();
        if !p.contains(g, &self.sys.a) {
            return Err(Error::NotInSubalgebra);
        }
        let in_l = std::iter::once(&y.base_point)
            .chain(&y.direction_space)
            .all(|v| p.l.contains_element(g, v));
        if !in_l {
            return Err(Error::NotInSubalgebra);
        }
        let a_l = p.levi_projection(g, &self.sys.a)?;
        certify_levi(p, &a_l, y)?;
        let dirs = y.directions(g).sum(&p.u);
        let c = AffineComponent::certified(&self.sys, y.base_point.clone(), &dirs)?;
        self.check_dim(&c)?;
        Ok(c)
    }

    /// Checks `F_a(x) = target` and that `x` lies in no Borel or parabolic of
    /// the atlas.
    pub fn exotic_witness_check(&self, x: &GElement, target: &[Scalar]) -> ExoticReport {
        let g = self.g();
        let image = self.sys.evaluate(x);
        let containing: Vec<String> = self
            .atlas
            .members()
            .filter(|p| p.contains(g, x))
            .map(|p| p.pattern(g))
            .collect();
        let in_fibre = image == target;
        ExoticReport {
            a: self.sys.a.clone(),
            x: x.clone(),
            target: target.to_vec(),
            image,
            in_fibre,
            members_checked: self.atlas.members().count(),
            passed: in_fibre && containing.is_empty(),
            containing_members: containing,
            regular_nilpotent: is_regular_nilpotent(x),
        }
    }

    /// Samples `ξ + b` with nonzero highest root coordinate and checks each
    /// point avoids every member of the atlas.
    pub fn tarasov_exotic_probe(&self, samples: usize, rng: &mut SeededRng) -> Result<TarasovExoticReport> {
        if !self.sys.a.is_diagonal() {
            return Err(Error::NotDiagonal);
        }
        let g = self.g();
        let n = g.n();
        let upper = upper_borel_coordinates(g);
        let top = g.coordinate_index(0, n - 1).expect("off-diagonal");
        let point = |rng: &mut SeededRng, top_nonzero: bool| {
            let mut c = vec![Scalar::zero(); g.dim()];
            for &k in &upper {
                c[k] = sampling::small_int(rng, 5);
            }
            c[top] = if top_nonzero {
                Scalar::from(rng.gen_range(1..=5))
            } else {
                Scalar::zero()
            };
            for i in 0..n - 1 {
                c[g.coordinate_index(i + 1, i).unwrap()] = Scalar::one();
            }
            g.element_from_coordinates(&c).unwrap()
        };
        let members: Vec<&FlagParabolic> = self.atlas.members().collect();
        let mut avoided = vec![false; members.len()];
        let mut outside_all = 0;
        for _ in 0..samples {
            let x = point(rng, true);
            let mut inside = false;
            for (k, p) in members.iter().enumerate() {
                if p.contains(g, &x) {
                    inside = true;
                } else {
                    avoided[k] = true;
                }
            }
            if !inside {
                outside_all += 1;
            }
        }
        let zero_root = (0..samples.min(20))
            .map(|_| {
                let x = point(rng, false);
                ZeroRootObservation {
                    in_some_borel: self.atlas.borels.iter().any(|p| p.contains(g, &x)),
                    in_some_parabolic: self.atlas.parabolics.iter().any(|p| p.contains(g, &x)),
                }
            })
            .collect();
        let member_avoidance: Vec<MemberAvoidance> = members
            .iter()
            .zip(&avoided)
            .map(|(p, &avoided)| MemberAvoidance {
                pattern: p.pattern(g),
                avoided,
            })
            .collect();
        Ok(TarasovExoticReport {
            samples,
            outside_all,
            passed: outside_all == samples && avoided.iter().all(|&v| v),
            member_avoidance,
            zero_highest_root: zero_root,
        })
    }

    /// Two distinct Borels `b_1, b_2` containing `b^a` with
    /// `x + u^a ⊆ (x + u_1) ∩ (x + u_2)`, both translates inside the fibre of `x`.
    pub fn singular_family_check(&self, x: &GElement) -> Result<SingularFamilyReport> {
        let g = self.g();
        if self.sys.a.is_nilpotent() {
            return Err(Error::Nilpotent(
                "a regular nilpotent element lies in a unique Borel subalgebra".into(),
            ));
        }
        if !self.atlas.b_a.contains_element(g, x) {
            return Err(Error::NotInSubalgebra);
        }
        let (b1, b2) = match self.atlas.borels.as_slice() {
            [b1, b2, ..] => (b1, b2),
            _ => return Err(Error::Certification("fewer than two Borels contain a".into())),
        };
        let contains_b_a = self.atlas.b_a.is_subspace_of(&b1.p) && self.atlas.b_a.is_subspace_of(&b2.p);
        let u_a_in_both = self.atlas.u_a.is_subspace_of(&b1.u.intersection(&b2.u));
        let c1 = AffineComponent::certified(&self.sys, x.clone(), &b1.u)?;
        let c2 = AffineComponent::certified(&self.sys, x.clone(), &b2.u)?;
        Ok(SingularFamilyReport {
            x: x.clone(),
            borels: [b1.pattern(g), b2.pattern(g)],
            u_a: self.atlas.u_a.pattern(g),
            contains_b_a,
            u_a_in_both,
            translates_in_fibre: true,
            passed: contains_b_a && u_a_in_both && c1.dim() == c2.dim(),
        })
    }

    /// Restriction of F_a to `b^a = h ⊕ u^a`, the nilpotent image form and the
    /// degree of `F_a(b^a)` over the invariant coordinates.
    pub fn image_bba_check(&self, samples: usize, rng: &mut SeededRng) -> Result<ImageReport> {
        let g = self.g();
        let n = g.n();
        let r = self.sys.r();
        let basis = &self.atlas.basis;
        let cartan = adapted_cartan(basis);
        let h = Subspace::from_elements(g, &cartan);
        if !h.is_subspace_of(&self.atlas.b_a) || h.dim() + self.atlas.u_a.dim() != self.atlas.b_a.dim() {
            return Err(Error::Certification("b^a is not h plus u^a".into()));
        }
        let u = self.atlas.u_a.basis(g);
        let names = (1..=r)
            .map(|k| format!("c{k}"))
            .chain((1..=u.len()).map(|k| format!("t{k}")));
        let ring = PolyRing::new(names);
        let terms: Vec<(GElement, Option<usize>)> =
            cartan.iter().cloned().enumerate().map(|(k, x)| (x, Some(k))).collect();
        let images = affine_images(g, &ring, &terms, &u, r);
        let restricted: Vec<Poly> = self
            .sys
            .components
            .iter()
            .map(|p| p.compose(&images))
            .collect::<std::result::Result<_, _>>()?;
        let t_idx: Vec<usize> = (r..r + u.len()).collect();
        let t_free = restricted.iter().all(|p| !p.involves_any(&t_idx));
        let nilpotent_form = self.sys.a.is_nilpotent().then(|| {
            restricted[..r].iter().all(|p| !p.is_zero()) && restricted[r..].iter().all(MPoly::is_zero)
        });

        let jd = self.sys.a.jordan_chevalley();
        let s_adapted = GElement::from_traceless_unchecked(basis.to_adapted(jd.semisimple.matrix()));
        let group = weyl_group(n);
        let expected = group.len() / weyl_stabilizer(&s_adapted)?.len();
        let mut observed = BTreeSet::new();
        for _ in 0..samples {
            let d = sampling::random_regular_diagonal(rng, n, 30);
            let x = adapted_diagonal(basis, &d);
            let values: BTreeSet<Vec<Scalar>> = group
                .iter()
                .map(|w| self.sys.evaluate(&weyl_act(basis, w, &x)))
                .collect();
            observed.insert(values.len());
        }
        let degree_ok = observed.len() == 1 && observed.contains(&expected);
        Ok(ImageReport {
            restricted: restricted.iter().map(ToString::to_string).collect(),
            t_free,
            nilpotent_form,
            expected_degree: expected,
            observed_degrees: observed.into_iter().collect(),
            samples,
            passed: t_free && nilpotent_form.unwrap_or(true) && degree_ok,
        })
    }

    /// Samples `y + λa` with `y` singular and records images and Jacobian ranks.
    pub fn critical_value_probe(&self, samples: usize, rng: &mut SeededRng) -> CriticalReport {
        let g = self.g();
        let n = g.n();
        let b = self.sys.b();
        let scaled = self.sys.scaled_components();
        let sl2_diag = (n == 2 && self.sys.a.is_diagonal()).then(|| self.sys.a.entry(0, 0).clone());
        let mut ranks = BTreeMap::new();
        let mut points = Vec::with_capacity(samples);
        let mut all_singular = true;
        let mut sl2_ok = true;
        for _ in 0..samples {
            let y = random_singular(rng, n);
            all_singular &= !y.is_regular();
            let lambda = sampling::small_rational(rng, 5);
            let x = y.add_scaled(&lambda, &self.sys.a).expect("same size");
            let pt = g.coordinates(&x);
            let z: Vec<Scalar> = scaled.iter().map(|p| p.eval(&pt).unwrap()).collect();
            if n == 2 {
                if self.sys.a.is_nilpotent() {
                    sl2_ok &= z.iter().all(Zero::is_zero);
                } else if let Some(a1) = &sl2_diag {
                    let four = Scalar::from(4);
                    sl2_ok &= (z[0].clone() - z[1].clone() * &z[1] / (four * a1 * a1)).is_zero();
                }
            }
            let rank = self.sys.jacobian_rank(&x);
            *ranks.entry(rank).or_insert(0usize) += 1;
            points.push(CriticalSample {
                singular: y,
                lambda,
                image: z,
                rank,
            });
        }
        let max_rank = ranks.keys().next_back().copied().unwrap_or(0);
        let rank_ok = max_rank < b && max_rank + 2 >= b;
        let sl2_identity = (n == 2 && (self.sys.a.is_nilpotent() || sl2_diag.is_some())).then_some(sl2_ok);
        CriticalReport {
            samples,
            rank_counts: ranks,
            max_rank,
            rank_bounds_ok: rank_ok,
            sl2_identity,
            passed: all_singular && rank_ok && sl2_identity.unwrap_or(true),
            points,
        }
    }

    /// Observations on `a + b_-` for nilpotent `a`: invertibility of the
    /// restricted differential at `a + x`, `x` regular in h, and the number of
    /// Weyl translates with the same image. Nothing is asserted.
    pub fn near_section_probe(&self, samples: usize, rng: &mut SeededRng) -> Result<NearSectionReport> {
        if !self.sys.a.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let g = self.g();
        let n = g.n();
        let basis = &self.atlas.basis;
        let mut lower = Vec::new();
        for u in 0..n {
            for v in 0..=u {
                let mut e = ExactMatrix::zeros(n, n);
                e.set(u, v, Scalar::one());
                let m = basis.from_adapted(&e);
                let t = m.trace() / Scalar::from(n as i64);
                let m = m.sub(&ExactMatrix::identity(n).scale(&t));
                lower.push(g.coordinates(&GElement::from_traceless_unchecked(m)));
            }
        }
        let b_minus = Subspace::from_vectors(g.dim(), &lower);
        let dirs = ExactMatrix::from_columns(g.dim(), b_minus.basis_vectors())?;
        let group = weyl_group(n);
        let mut invertible = 0;
        let mut coincidences = Vec::with_capacity(samples);
        for _ in 0..samples {
            let x = adapted_diagonal(basis, &sampling::random_regular_diagonal(rng, n, 30));
            let ax = self.sys.a.add(&x)?;
            if self.sys.jacobian_at(&ax).mul(&dirs).rank() == self.sys.b() {
                invertible += 1;
            }
            let fx = self.sys.evaluate(&ax);
            let same = group
                .iter()
                .filter(|w| self.sys.evaluate(&self.sys.a.add(&weyl_act(basis, w, &x)).unwrap()) == fx)
                .count();
            coincidences.push(same);
        }
        Ok(NearSectionReport {
            samples,
            b_minus_dim: b_minus.dim(),
            differential_invertible: invertible,
            weyl_group_order: group.len(),
            weyl_coincidences: coincidences,
        })
    }
}

/// Certifies that the Levi system is constant on `y`: on each Levi block the
/// traces of powers of `(y + λ a_l)` do not involve the parameters of `y`.
fn certify_levi(p: &FlagParabolic, a_l: &GElement, y: &AffineComponent) -> Result<()> {
    let k = y.dim();
    let ring = PolyRing::new((1..=k).map(|i| format!("t{i}")).chain(["lam".to_string()]));
    let adapted = |x: &GElement| p.basis.to_adapted(x.matrix());
    let base = adapted(&y.base_point);
    let al = adapted(a_l);
    let dirs: Vec<ExactMatrix> = y.direction_space.iter().map(adapted).collect();
    let lam = MPoly::var(&ring, k);
    let entry = |i: usize, j: usize| {
        let mut e = MPoly::constant(&ring, base.get(i, j).clone());
        e = &e + &lam.scale(al.get(i, j));
        for (t, d) in dirs.iter().enumerate() {
            e = &e + &MPoly::var(&ring, t).scale(d.get(i, j));
        }
        e
    };
    let t_idx: Vec<usize> = (0..k).collect();
    for block in p.levi_blocks() {
        let entries = block
            .iter()
            .flat_map(|&i| block.iter().map(move |&j| (i, j)))
            .map(|(i, j)| entry(i, j))
            .collect();
        let m = SymMatrix::new(block.len(), entries);
        for e in 1..=block.len() as u32 {
            if m.pow(e).trace().involves_any(&t_idx) {
                return Err(Error::Certification(
                    "Levi system is not constant on the component".into(),
                ));
            }
        }
    }
    Ok(())
}

/// A singular element: a conjugate of a matrix with a repeated nonzero
/// eigenvalue that is either semisimple or carries two Jordan blocks (the
/// eigenvalue is 0 when the blocks fill all of sl_3).
fn random_singular(rng: &mut SeededRng, n: usize) -> GElement {
    if n == 2 {
        return GElement::zero(2);
    }
    let jordan = rng.gen_bool(0.5);
    let repeated = if jordan { 3 } else { 2 };
    let mu = if repeated == n {
        Scalar::zero()
    } else {
        Scalar::from(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 })
    };
    let mut d = vec![mu; repeated.min(n)];
    while d.len() < n - 1 {
        d.push(sampling::small_int(rng, 4));
    }
    if d.len() < n {
        let s = d.iter().fold(Scalar::zero(), |acc, v| acc + v);
        d.push(-s);
    }
    let mut m = ExactMatrix::diagonal(&d);
    if jordan {
        m.set(1, 2, Scalar::one());
    }
    // L U with nonzero off-diagonal entries keeps the conjugate away from h
    let mut l = ExactMatrix::identity(n);
    let mut u = ExactMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, Scalar::from(rng.gen_range(1..=3)));
            u.set(j, i, Scalar::from(rng.gen_range(1..=3)));
        }
    }
    let p = l.mul(&u);
    let p_inv = p.inverse().expect("unimodular");
    GElement::from_traceless_unchecked(p.mul(&m).mul(&p_inv))
}

/// The explicit solution of F_s(x) = 0 for regular diagonal `s` in sl_3:
/// unit entries on the simple roots, `x_{-γ}` a square root of
/// `α(s)β(s)γ(s)`, and the negative-root entries fixed by the trace equations.
pub fn semisimple_exotic_witness(s: &GElement) -> Result<GElement> {
    if s.n() != 3 {
        return Err(Error::InvalidInput("the construction is for sl_3".into()));
    }
    if !s.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    s.require_regular()?;
    let d = s.diagonal();
    let alpha = d[0].clone() - &d[1];
    let beta = d[1].clone() - &d[2];
    let gamma = d[0].clone() - &d[2];
    let root = (alpha.clone() * &beta * &gamma)
        .sqrt()
        .ok_or(Error::UnsupportedEigenvalues)?;
    let z = Scalar::zero();
    let one = Scalar::one();
    let rows = vec![
        vec![z.clone(), one.clone(), -gamma / &root],
        vec![alpha, z.clone(), one],
        vec![root, beta, z],
    ];
    GElement::from_rows(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExoticReport {
    pub a: GElement,
    pub x: GElement,
    pub target: Vec<Scalar>,
    pub image: Vec<Scalar>,
    pub in_fibre: bool,
    pub members_checked: usize,
    pub containing_members: Vec<String>,
    pub regular_nilpotent: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MemberAvoidance {
    pub pattern: String,
    pub avoided: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroRootObservation {
    pub in_some_borel: bool,
    pub in_some_parabolic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TarasovExoticReport {
    pub samples: usize,
    pub outside_all: usize,
    pub member_avoidance: Vec<MemberAvoidance>,
    pub zero_highest_root: Vec<ZeroRootObservation>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularFamilyReport {
    pub x: GElement,
    pub borels: [String; 2],
    pub u_a: String,
    pub contains_b_a: bool,
    pub u_a_in_both: bool,
    pub translates_in_fibre: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageReport {
    pub restricted: Vec<String>,
    pub t_free: bool,
    pub nilpotent_form: Option<bool>,
    pub expected_degree: usize,
    pub observed_degrees: Vec<usize>,
    pub samples: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalSample {
    pub singular: GElement,
    pub lambda: Scalar,
    pub image: Vec<Scalar>,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalReport {
    pub samples: usize,
    pub rank_counts: BTreeMap<usize, usize>,
    pub max_rank: usize,
    pub rank_bounds_ok: bool,
    pub sl2_identity: Option<bool>,
    pub passed: bool,
    pub points: Vec<CriticalSample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NearSectionReport {
    pub samples: usize,
    pub b_minus_dim: usize,
    pub differential_invertible: usize,
    pub weyl_group_order: usize,
    pub weyl_coincidences: Vec<usize>,
}

/// Number of exotic components of the zero fibre for one conjugacy class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IPrime {
    Exact(u64),
    Unknown { lower_bound: u64 },
}

impl IPrime {
    pub fn lower_bound(&self) -> u64 {
        match *self {
            IPrime::Exact(v) => v,
            IPrime::Unknown { lower_bound } => lower_bound,
        }
    }

    pub fn exact(&self) -> Option<u64> {
        match *self {
            IPrime::Exact(v) => Some(v),
            IPrime::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IPrimeKey {
    pub n: usize,
    pub jordan_type: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IPrimeEntry {
    pub n: usize,
    pub jordan_type: String,
    pub value: IPrime,
}

/// Values of |I'| keyed by rank and Jordan type. Missing entries read as
/// unknown with lower bound 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IPrimeTable {
    pub entries: Vec<IPrimeEntry>,
}

impl Default for IPrimeTable {
    fn default() -> Self {
        let mut entries: Vec<IPrimeEntry> = ["2", "1+1"]
            .iter()
            .map(|t| IPrimeEntry {
                n: 2,
                jordan_type: t.to_string(),
                value: IPrime::Exact(0),
            })
            .collect();
        entries.extend(["3", "2+1", "1+1+1"].iter().map(|t| IPrimeEntry {
            n: 3,
            jordan_type: t.to_string(),
            value: IPrime::Unknown { lower_bound: 1 },
        }));
        Self { entries }
    }
}

impl IPrimeTable {
    pub fn lookup(&self, n: usize, jordan_type: &str) -> IPrime {
        self.entries
            .iter()
            .rev()
            .find(|e| e.n == n && e.jordan_type == jordan_type)
            .map(|e| e.value)
            .unwrap_or(IPrime::Unknown { lower_bound: 0 })
    }

    /// Parses a table and overlays it on the defaults.
    pub fn from_json_over_defaults(text: &str) -> Result<Self> {
        let extra: IPrimeTable =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("I' table: {e}")))?;
        for e in &extra.entries {
            if e.n == 2 && e.value != IPrime::Exact(0) {
                return Err(Error::InvalidInput(format!(
                    "sl_2 entries must be 0, got {:?} for {}",
                    e.value, e.jordan_type
                )));
            }
        }
        let mut t = Self::default();
        t.entries.extend(extra.entries);
        Ok(t)
    }
}

/// An exact count or a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Count {
    pub exact: Option<u64>,
    pub lower_bound: u64,
}

impl Count {
    fn exact(v: u64) -> Self {
        Self {
            exact: Some(v),
            lower_bound: v,
        }
    }

    fn add(self, o: Self) -> Self {
        Self {
            exact: self.exact.zip(o.exact).map(|(x, y)| x + y),
            lower_bound: self.lower_bound + o.lower_bound,
        }
    }

    fn mul(self, o: Self) -> Self {
        Self {
            exact: self.exact.zip(o.exact).map(|(x, y)| x * y),
            lower_bound: self.lower_bound * o.lower_bound,
        }
    }
}

impl From<IPrime> for Count {
    fn from(v: IPrime) -> Self {
        Self {
            exact: v.exact(),
            lower_bound: v.lower_bound(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorTerm {
    pub size: usize,
    pub jordan_type: String,
    pub value: IPrime,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicTerm {
    pub composition: Vec<usize>,
    pub pattern: String,
    pub factors: Vec<FactorTerm>,
    pub product: Count,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub element: String,
    pub jordan_type: String,
    pub borel_count: usize,
    pub parabolic_count: usize,
    pub iprime: IPrime,
    pub parabolic_terms: Vec<ParabolicTerm>,
    pub parabolic_sum: Count,
    pub base_table_used: Vec<IPrimeEntry>,
    pub total: Count,
    pub formula: String,
}

/// `|I_a| = |I'_a| + sum over parabolics of the product of |I'| over the simple
/// Levi factors + |B_a|`.
pub fn count_zero_fibre(a: &GElement, label: &str, table: &IPrimeTable) -> Result<CountReport> {
    let atlas = enumerate_atlas(a)?;
    let g = &atlas.algebra;
    let n = g.n();
    let mut used: BTreeMap<IPrimeKey, IPrime> = BTreeMap::new();
    let mut look = |k: usize, ty: String| {
        let v = table.lookup(k, &ty);
        used.insert(IPrimeKey { n: k, jordan_type: ty }, v);
        v
    };
    let jordan_type = jordan_type_label(a);
    let iprime = look(n, jordan_type.clone());

    let mut terms = Vec::new();
    let mut sum = Count::exact(0);
    let mut symbolic = Vec::new();
    for p in &atlas.parabolics {
        let a_l = p.levi_projection(g, a)?;
        let mut factors = Vec::new();
        let mut product = Count::exact(1);
        for block in p.levi_blocks().into_iter().filter(|b| b.len() >= 2) {
            let a_b = p.levi_block_element(&a_l, &block)?;
            let ty = jordan_type_label(&a_b);
            let v = look(block.len(), ty.clone());
            product = product.mul(v.into());
            factors.push(FactorTerm {
                size: block.len(),
                jordan_type: ty,
                value: v,
            });
        }
        if product.exact.is_none() {
            symbolic.push(
                factors
                    .iter()
                    .map(|f| match f.value {
                        IPrime::Exact(v) => v.to_string(),
                        IPrime::Unknown { .. } => format!("|I'[sl{} {}]|", f.size, f.jordan_type),
                    })
                    .collect::<Vec<_>>()
                    .join("*"),
            );
        }
        sum = sum.add(product);
        terms.push(ParabolicTerm {
            composition: p.composition().to_vec(),
            pattern: p.pattern(g),
            factors,
            product,
        });
    }
    let borels = atlas.borels.len() as u64;
    let total = Count::from(iprime).add(sum).add(Count::exact(borels));

    let first = match iprime {
        IPrime::Exact(v) => v.to_string(),
        IPrime::Unknown { .. } => format!("|I'_{label}|"),
    };
    let middle = match sum.exact {
        Some(v) => v.to_string(),
        None => format!("({})", symbolic.join(" + ")),
    };
    Ok(CountReport {
        n,
        element: label.to_string(),
        jordan_type,
        borel_count: atlas.borels.len(),
        parabolic_count: atlas.parabolics.len(),
        iprime,
        parabolic_terms: terms,
        parabolic_sum: sum,
        base_table_used: used
            .into_iter()
            .map(|(k, value)| IPrimeEntry {
                n: k.n,
                jordan_type: k.jordan_type,
                value,
            })
            .collect(),
        total,
        formula: format!("{first} + {middle} + {borels}"),
    })
}
