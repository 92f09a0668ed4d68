use std::sync::Arc;

use crate::error::Result;
use crate::exact_math::{MPoly, PolyRing};
use crate::{ExactMatrix, Poly, Scalar};

/// A square matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Poly>,
}

impl SymMatrix {
    pub fn new(n: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    pub fn constant(ring: &Arc<PolyRing>, m: &ExactMatrix) -> Self {
        let n = m.rows();
        Self::new(
            n,
            m.data().iter().map(|c| MPoly::constant(ring, c.clone())).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.entries[0].ring()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.n,
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.n,
            self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.n, self.entries.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero(self.ring());
                for k in 0..n {
                    let a = self.entry(i, k);
                    let b = other.entry(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                out.push(acc);
            }
        }
        Self::new(n, out)
    }

    /// `m * self` for a constant matrix `m`.
    pub fn mul_const_left(&self, m: &ExactMatrix) -> Self {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero(self.ring());
                for k in 0..n {
                    let c = m.get(i, k);
                    if !num_traits::Zero::is_zero(c) {
                        acc = &acc + &self.entry(k, j).scale(c);
                    }
                }
                out.push(acc);
            }
        }
        Self::new(n, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let one = SymMatrix::constant(self.ring(), &ExactMatrix::identity(self.n));
        (0..e).fold(one, |acc, _| acc.mul(self))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Poly {
        (0..self.n).fold(Poly::zero(self.ring()), |acc, i| &acc + self.entry(i, i))
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<ExactMatrix> {
        let data = self
            .entries
            .iter()
            .map(|p| p.eval(point))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(ExactMatrix::new(self.n, self.n, data)?)
    }

    pub fn compose(&self, images: &[Poly]) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.compose(images))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::new(self.n, entries))
    }

    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.embed(target))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::new(self.n, entries))
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_det(rows: &[Vec<Poly>]) -> Poly {
    let n = rows.len();
    assert!(n > 0 && rows.iter().all(|r| r.len() == n));
    let cols: Vec<usize> = (0..n).collect();
    det_rec(rows, 0, &cols)
}

fn det_rec(rows: &[Vec<Poly>], r: usize, cols: &[usize]) -> Poly {
    if cols.len() == 1 {
        return rows[r][cols[0]].clone();
    }
    let mut acc = Poly::zero(rows[0][0].ring());
    for (k, &c) in cols.iter().enumerate() {
        let entry = &rows[r][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(rows, r + 1, &rest);
        let term = entry * &minor;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
