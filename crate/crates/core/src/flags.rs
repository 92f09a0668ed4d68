//! Borel and parabolic subalgebras containing a regular element, realised as
//! stabilizers of invariant flags.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_math::roots::exact_roots;
use crate::lie::{GElement, LieAlgebraA, Subspace};
use crate::{ExactMatrix, Scalar};

/// Basis of C^n made of one Jordan chain per eigenvalue of a regular element.
///
/// Eigenvalues are sorted by (real part, imaginary part). Within an eigenvalue
/// `c`, chain vector `t` satisfies `(a - c) v_t = v_{t-1}`, so the first `k`
/// vectors span `ker (a - c)^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub eigenvalues: Vec<Scalar>,
    pub multiplicities: Vec<usize>,
    /// Columns are the chain vectors, grouped by eigenvalue.
    pub p: ExactMatrix,
    pub p_inv: ExactMatrix,
}

impl AdaptedBasis {
    pub fn new(a: &GElement) -> Result<Self> {
        a.require_regular()?;
        let n = a.n();
        let roots = exact_roots(&a.charpoly()).ok_or(Error::UnsupportedEigenvalues)?;
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
        let mut eigenvalues = Vec::new();
        let mut multiplicities = Vec::new();
        for (c, m) in roots {
            let shifted = a.matrix().sub(&ExactMatrix::identity(n).scale(&c));
            let top_kernel = shifted.pow(m as u32).kernel();
            let below = shifted.pow(m as u32 - 1);
            let top = top_kernel
                .into_iter()
                .find(|v| below.mul_vec(v).iter().any(|x| !x.is_zero()))
                .ok_or(Error::Certification("missing Jordan chain".into()))?;
            let mut chain = vec![top];
            for _ in 1..m {
                let next = shifted.mul_vec(chain.last().unwrap());
                chain.push(next);
            }
            chain.reverse();
            cols.extend(chain);
            eigenvalues.push(c);
            multiplicities.push(m);
        }
        let p = ExactMatrix::from_columns(n, &cols)?;
        let p_inv = p
            .inverse()
            .ok_or(Error::Certification("chain vectors are dependent".into()))?;
        Ok(Self {
            eigenvalues,
            multiplicities,
            p,
            p_inv,
        })
    }

    pub fn n(&self) -> usize {
        self.p.rows()
    }

    /// Column index of chain vector `t` (0-based) for eigenvalue `e`.
    pub fn column(&self, e: usize, t: usize) -> usize {
        self.multiplicities[..e].iter().sum::<usize>() + t
    }

    /// `P m P^-1`: a matrix written in the adapted basis, back in standard coordinates.
    pub fn from_adapted(&self, m: &ExactMatrix) -> ExactMatrix {
        self.p.mul(m).mul(&self.p_inv)
    }

    pub fn to_adapted(&self, m: &ExactMatrix) -> ExactMatrix {
        self.p_inv.mul(m).mul(&self.p)
    }
}

/// An a-invariant flag, encoded by how many chain vectors of each eigenvalue
/// lie in each step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Flag {
    pub composition: Vec<usize>,
    /// `steps[j][e]` = dim of `V_{j+1} ∩ (generalized eigenspace e)`.
    pub steps: Vec<Vec<usize>>,
}

impl Flag {
    /// Step at which each adapted basis vector first appears.
    pub fn levels(&self, basis: &AdaptedBasis) -> Vec<usize> {
        let mut levels = vec![0; basis.n()];
        for (e, &m) in basis.multiplicities.iter().enumerate() {
            for t in 0..m {
                let j = self.steps.iter().position(|k| t < k[e]).unwrap();
                levels[basis.column(e, t)] = j;
            }
        }
        levels
    }

    /// Basis vectors (columns of the adapted basis) of each step `V_j`.
    pub fn subspaces(&self, basis: &AdaptedBasis) -> Vec<Vec<Vec<Scalar>>> {
        self.steps
            .iter()
            .map(|k| {
                let mut vs = Vec::new();
                for (e, &ke) in k.iter().enumerate() {
                    for t in 0..ke {
                        vs.push(basis.p.column(basis.column(e, t)));
                    }
                }
                vs
            })
            .collect()
    }
}

/// The stabilizer of an invariant flag, with its Levi decomposition.
#[derive(Clone, Debug)]
pub struct FlagParabolic {
    pub flag: Flag,
    pub basis: AdaptedBasis,
    pub levels: Vec<usize>,
    pub p: Subspace,
    pub l: Subspace,
    pub u: Subspace,
}

impl FlagParabolic {
    fn new(g: &LieAlgebraA, basis: &AdaptedBasis, flag: Flag) -> Self {
        let levels = flag.levels(basis);
        let n = g.n();
        let mut pv = Vec::new();
        let mut lv = Vec::new();
        let mut uv = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if levels[u] > levels[v] {
                    continue;
                }
                let mut e = ExactMatrix::zeros(n, n);
                e.set(u, v, Scalar::one());
                let m = traceless_part(&basis.from_adapted(&e));
                let c = g.coordinates(&GElement::new(m).expect("traceless"));
                if levels[u] == levels[v] {
                    lv.push(c.clone());
                } else {
                    uv.push(c.clone());
                }
                pv.push(c);
            }
        }
        let dim = g.dim();
        Self {
            flag,
            basis: basis.clone(),
            levels,
            p: Subspace::from_vectors(dim, &pv),
            l: Subspace::from_vectors(dim, &lv),
            u: Subspace::from_vectors(dim, &uv),
        }
    }

    pub fn composition(&self) -> &[usize] {
        &self.flag.composition
    }

    pub fn is_borel(&self) -> bool {
        self.flag.composition.iter().all(|&c| c == 1)
    }

    pub fn contains(&self, g: &LieAlgebraA, x: &GElement) -> bool {
        self.p.contains_element(g, x)
    }

    /// Block-diagonal part of `x` in the adapted basis.
    pub fn levi_projection(&self, g: &LieAlgebraA, x: &GElement) -> Result<GElement> {
        if !self.contains(g, x) {
            return Err(Error::NotInSubalgebra);
        }
        let mut y = self.basis.to_adapted(x.matrix());
        let n = g.n();
        for i in 0..n {
            for j in 0..n {
                if self.levels[i] != self.levels[j] {
                    y.set(i, j, Scalar::zero());
                }
            }
        }
        GElement::new(self.basis.from_adapted(&y))
    }

    /// Whether `x` (assumed in l) has an (n-1)-dimensional centralizer inside l.
    pub fn is_regular_in_levi(&self, g: &LieAlgebraA, x: &GElement) -> bool {
        let lb = self.l.basis(g);
        let cols: Vec<Vec<Scalar>> = lb
            .iter()
            .map(|y| g.coordinates(&x.bracket(y).unwrap()))
            .collect();
        let m = ExactMatrix::from_columns(g.dim(), &cols).unwrap();
        lb.len() - m.rank() == g.rank()
    }

    /// Sizes k of the simple factors sl_k of [l, l].
    pub fn levi_simple_factors(&self) -> Vec<usize> {
        levi_simple_factors(&self.flag.composition)
    }

    /// Indices (into the adapted basis) of each Levi block.
    pub fn levi_blocks(&self) -> Vec<Vec<usize>> {
        let k = self.flag.composition.len();
        (0..k)
            .map(|j| (0..self.levels.len()).filter(|&i| self.levels[i] == j).collect())
            .collect()
    }

    /// The component of `x` (in l) on a Levi block, as a traceless matrix.
    pub fn levi_block_element(&self, x: &GElement, block: &[usize]) -> Result<GElement> {
        let y = self.basis.to_adapted(x.matrix());
        let k = block.len();
        let mut m = ExactMatrix::zeros(k, k);
        for (a, &i) in block.iter().enumerate() {
            for (b, &j) in block.iter().enumerate() {
                m.set(a, b, y.get(i, j).clone());
            }
        }
        GElement::new(traceless_part(&m))
    }

    pub fn pattern(&self, g: &LieAlgebraA) -> String {
        self.p.pattern(g)
    }
}

pub fn levi_simple_factors(composition: &[usize]) -> Vec<usize> {
    composition.iter().copied().filter(|&c| c >= 2).collect()
}

fn traceless_part(m: &ExactMatrix) -> ExactMatrix {
    let n = m.rows();
    let t = m.trace() / Scalar::from(n as i64);
    m.sub(&ExactMatrix::identity(n).scale(&t))
}

/// All compositions of `n` in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn chains(mult: &[usize], composition: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        mult: &[usize],
        composition: &[usize],
        prev: Vec<usize>,
        acc: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let Some((&c, rest)) = composition.split_first() else {
            out.push(acc.clone());
            return;
        };
        // distribute c new vectors over the eigenvalues
        let mut choice = vec![0; mult.len()];
        distribute(mult, &prev, c, 0, &mut choice, &mut |add| {
            let next: Vec<usize> = prev.iter().zip(add).map(|(p, a)| p + a).collect();
            acc.push(next.clone());
            rec(mult, rest, next, acc, out);
            acc.pop();
        });
    }
    fn distribute(
        mult: &[usize],
        prev: &[usize],
        left: usize,
        e: usize,
        choice: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if e == mult.len() {
            if left == 0 {
                f(choice);
            }
            return;
        }
        let room = mult[e] - prev[e];
        for k in 0..=room.min(left) {
            choice[e] = k;
            distribute(mult, prev, left - k, e + 1, choice, f);
        }
        choice[e] = 0;
    }
    let mut out = Vec::new();
    rec(mult, composition, vec![0; mult.len()], &mut Vec::new(), &mut out);
    out
}

/// All a-invariant flags with the given composition.
pub fn invariant_flags(a: &GElement, composition: &[usize]) -> Result<Vec<Flag>> {
    let basis = AdaptedBasis::new(a)?;
    flags_for(&basis, composition)
}

fn flags_for(basis: &AdaptedBasis, composition: &[usize]) -> Result<Vec<Flag>> {
    if composition.iter().sum::<usize>() != basis.n() || composition.contains(&0) {
        return Err(Error::InvalidInput(format!(
            "{composition:?} is not a composition of {}",
            basis.n()
        )));
    }
    Ok(chains(&basis.multiplicities, composition)
        .into_iter()
        .map(|steps| Flag {
            composition: composition.to_vec(),
            steps,
        })
        .collect())
}

/// The Borel subalgebras and proper parabolic subalgebras containing `a`.
#[derive(Clone, Debug)]
pub struct BorelAtlas {
    pub algebra: LieAlgebraA,
    pub a: GElement,
    pub basis: AdaptedBasis,
    pub borels: Vec<FlagParabolic>,
    pub parabolics: Vec<FlagParabolic>,
    pub b_a: Subspace,
    pub u_a: Subspace,
}

impl BorelAtlas {
    pub fn members(&self) -> impl Iterator<Item = &FlagParabolic> {
        self.borels.iter().chain(&self.parabolics)
    }

    /// Whether `x` lies in some Borel or parabolic of the atlas.
    pub fn contained_in_member(&self, x: &GElement) -> bool {
        self.members().any(|p| p.contains(&self.algebra, x))
    }
}

pub fn enumerate_atlas(a: &GElement) -> Result<BorelAtlas> {
    let g = LieAlgebraA::new(a.n())?;
    let basis = AdaptedBasis::new(a)?;
    let n = g.n();
    let mut borels = Vec::new();
    let mut parabolics: Vec<FlagParabolic> = Vec::new();
    for comp in compositions(n) {
        if comp.len() == 1 {
            continue;
        }
        let borel = comp.len() == n;
        for flag in flags_for(&basis, &comp)? {
            let fp = FlagParabolic::new(&g, &basis, flag);
            if borel {
                borels.push(fp);
            } else if !parabolics.iter().any(|q| q.p == fp.p) {
                parabolics.push(fp);
            }
        }
    }
    let b_a = borels
        .iter()
        .map(|b| b.p.clone())
        .reduce(|x, y| x.intersection(&y))
        .expect("at least one Borel");
    let u_a = b_a.derived(&g);
    Ok(BorelAtlas {
        algebra: g,
        a: a.clone(),
        basis,
        borels,
        parabolics,
        b_a,
        u_a,
    })
}

/// b^a as z(g_s) plus the Borel of [g_s, g_s] stabilizing the kernels of the
/// powers of the nilpotent part.
pub fn b_a_from_centralizer(a: &GElement) -> Result<Subspace> {
    a.require_regular()?;
    let g = LieAlgebraA::new(a.n())?;
    let n = g.n();
    let jd = a.jordan_chevalley();
    let gs = Subspace::from_elements(&g, &jd.semisimple.centralizer());
    let gs_basis = gs.basis(&g);

    // centre of g_s
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for y in &gs_basis {
        let brs: Vec<Vec<Scalar>> = gs_basis
            .iter()
            .map(|z| g.coordinates(&z.bracket(y).unwrap()))
            .collect();
        for k in 0..g.dim() {
            rows.push(brs.iter().map(|v| v[k].clone()).collect());
        }
    }
    let centre = combine(&g, &gs_basis, &rows);

    // stabilizer of the kernels of nil^k inside [g_s, g_s]
    let derived = gs.derived(&g);
    let d_basis = derived.basis(&g);
    let mut rows = Vec::new();
    let mut power = ExactMatrix::identity(n);
    for _ in 1..n {
        power = power.mul(jd.nilpotent.matrix());
        let kernel = power.kernel();
        if kernel.is_empty() || kernel.len() == n {
            continue;
        }
        let annihilator = ExactMatrix::from_rows(kernel.clone())?.kernel();
        for v in &kernel {
            for w in &annihilator {
                rows.push(
                    d_basis
                        .iter()
                        .map(|y| {
                            let yv = y.matrix().mul_vec(v);
                            w.iter().zip(&yv).fold(Scalar::zero(), |acc, (a, b)| acc + a.clone() * b)
                        })
                        .collect(),
                );
            }
        }
    }
    let tilde = combine(&g, &d_basis, &rows);
    Ok(centre.sum(&tilde))
}

/// Span of `sum c_i basis_i` over solutions `c` of the linear system `rows`.
fn combine(g: &LieAlgebraA, basis: &[GElement], rows: &[Vec<Scalar>]) -> Subspace {
    let sols = if rows.is_empty() {
        ExactMatrix::identity(basis.len()).to_rows()
    } else {
        ExactMatrix::from_rows(rows.to_vec()).unwrap().kernel()
    };
    let vecs: Vec<Vec<Scalar>> = sols
        .iter()
        .map(|c| {
            let mut acc = vec![Scalar::zero(); g.dim()];
            for (ci, b) in c.iter().zip(basis) {
                for (x, y) in acc.iter_mut().zip(g.coordinates(b)) {
                    *x = x.clone() + ci.clone() * &y;
                }
            }
            acc
        })
        .collect();
    Subspace::from_vectors(g.dim(), &vecs)
}

/// b^a and u^a, computed by intersecting Borels and cross-checked against the
/// centralizer construction.
pub fn compute_b_a(a: &GElement) -> Result<(Subspace, Subspace)> {
    let atlas = enumerate_atlas(a)?;
    let other = b_a_from_centralizer(a)?;
    if other != atlas.b_a {
        return Err(Error::Certification(
            "Borel intersection and centralizer construction of b^a disagree".into(),
        ));
    }
    Ok((atlas.b_a, atlas.u_a))
}

/// Jordan type of a regular element: eigenvalue multiplicities, largest first,
/// joined by `+` (one Jordan block per eigenvalue).
pub fn jordan_type_label(a: &GElement) -> String {
    let mut parts: Vec<usize> = Vec::new();
    for (q, k) in a.charpoly().squarefree_decomposition() {
        for _ in 0..q.degree().unwrap_or(0) {
            parts.push(k);
        }
    }
    parts.sort_unstable_by(|x, y| y.cmp(x));
    parts
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(rows: &[&[i64]]) -> GElement {
        GElement::from_ints(rows).unwrap()
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3).len(), 4);
        assert_eq!(compositions(4).len(), 8);
    }

    #[test]
    fn flag_counts() {
        let s = el(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]]);
        let n = el(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let r = el(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -2]]);
        assert_eq!(invariant_flags(&s, &[1, 1, 1]).unwrap().len(), 6);
        assert_eq!(invariant_flags(&n, &[1, 1, 1]).unwrap().len(), 1);
        assert_eq!(invariant_flags(&r, &[1, 1, 1]).unwrap().len(), 3);
        assert!(matches!(
            invariant_flags(&el(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]]), &[1, 1, 1]),
            Err(Error::NotRegular { .. })
        ));
        let irr = el(&[&[0, 2], &[1, 0]]);
        assert_eq!(invariant_flags(&irr, &[1, 1]), Err(Error::UnsupportedEigenvalues));
    }

    #[test]
    fn simple_factors() {
        assert_eq!(levi_simple_factors(&[2, 1]), vec![2]);
        assert!(levi_simple_factors(&[1, 1, 1]).is_empty());
        assert_eq!(levi_simple_factors(&[2, 2]), vec![2, 2]);
    }

    #[test]
    fn labels() {
        assert_eq!(jordan_type_label(&el(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])), "3");
        assert_eq!(jordan_type_label(&el(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -2]])), "2+1");
        assert_eq!(jordan_type_label(&el(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]])), "1+1+1");
        // irrational eigenvalues still get a label
        assert_eq!(jordan_type_label(&el(&[&[0, 2], &[1, 0]])), "1+1");
    }
}
