use num_traits::Zero;

use super::algebra::LieAlgebraA;
use super::element::GElement;
use crate::{ExactMatrix, Scalar};

/// A linear subspace of sl_n, stored as the reduced row echelon form of its
/// coordinate vectors, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(ambient: usize, vecs: &[Vec<Scalar>]) -> Self {
        if vecs.is_empty() {
            return Self::zero(ambient);
        }
        let m = ExactMatrix::from_rows(vecs.to_vec()).expect("vectors of equal length");
        assert_eq!(m.cols(), ambient);
        let (red, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| red.row(i)).collect();
        Self {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn from_elements(g: &LieAlgebraA, elems: &[GElement]) -> Self {
        let vecs: Vec<Vec<Scalar>> = elems.iter().map(|e| g.coordinates(e)).collect();
        Self::from_vectors(g.dim(), &vecs)
    }

    pub fn whole(g: &LieAlgebraA) -> Self {
        Self::from_elements(g, &g.basis())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis_vectors(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn basis(&self, g: &LieAlgebraA) -> Vec<GElement> {
        self.rows
            .iter()
            .map(|v| g.element_from_coordinates(v).expect("ambient matches"))
            .collect()
    }

    /// Residual of `v` after reducing against the basis.
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = x.clone() - c.clone() * r;
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_element(&self, g: &LieAlgebraA, x: &GElement) -> bool {
        self.contains(&g.coordinates(x))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut vecs = self.rows.clone();
        vecs.extend(other.rows.iter().cloned());
        Self::from_vectors(self.ambient, &vecs)
    }

    /// Vectors `w` with `v . w = 0` for all `v` in the subspace.
    pub fn annihilator(&self) -> Self {
        if self.rows.is_empty() {
            let id = ExactMatrix::identity(self.ambient);
            return Self::from_vectors(self.ambient, &id.to_rows());
        }
        let m = ExactMatrix::from_rows(self.rows.clone()).unwrap();
        Self::from_vectors(self.ambient, &m.kernel())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Span of all brackets of basis pairs.
    pub fn derived(&self, g: &LieAlgebraA) -> Self {
        let b = self.basis(g);
        let mut vecs = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                vecs.push(g.coordinates(&b[i].bracket(&b[j]).unwrap()));
            }
        }
        Self::from_vectors(self.ambient, &vecs)
    }

    /// Whether `[U, V]` lands in `target` for basis elements.
    pub fn bracket_within(g: &LieAlgebraA, u: &Self, v: &Self, target: &Self) -> bool {
        let (bu, bv) = (u.basis(g), v.basis(g));
        bu.iter().all(|x| {
            bv.iter()
                .all(|y| target.contains_element(g, &x.bracket(y).unwrap()))
        })
    }

    pub fn is_subalgebra(&self, g: &LieAlgebraA) -> bool {
        Self::bracket_within(g, self, self, self)
    }

    /// Which matrix entries are not identically zero on the subspace, as rows
    /// of `*` and `0` joined by `/`.
    pub fn pattern(&self, g: &LieAlgebraA) -> String {
        let n = g.n();
        let elems = self.basis(g);
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if elems.iter().any(|e| !e.entry(i, j).is_zero()) {
                            '*'
                        } else {
                            '0'
                        }
                    })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("/")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_and_sum() {
        let g = LieAlgebraA::new(2).unwrap();
        let b = g.basis();
        let u = Subspace::from_elements(&g, &[b[0].clone(), b[2].clone()]);
        let v = Subspace::from_elements(&g, &[b[1].clone(), b[2].clone()]);
        let w = u.intersection(&v);
        assert_eq!(w.dim(), 1);
        assert!(w.contains_element(&g, &b[2]));
        assert_eq!(u.sum(&v).dim(), 3);
        assert_eq!(u.pattern(&g), "**/0*");
        assert!(u.is_subalgebra(&g));
        assert_eq!(u.derived(&g).dim(), 1);
    }
}
