use std::sync::Arc;

use num_traits::Zero;

use super::element::GElement;
use super::symbolic::SymMatrix;
use crate::error::{Error, Result};
use crate::exact_math::{MPoly, PolyRing};
use crate::{ExactMatrix, Poly, Scalar};

/// sl_n with a fixed coordinate system.
///
/// Coordinates are the off-diagonal entries `x_ij` in row-major order followed
/// by the diagonal entries `x_kk` for `k < n`; the last diagonal entry is
/// `-(x_11 + ... + x_{n-1,n-1})`. The matching basis is `e_ij` followed by
/// `E_kk - E_nn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraA {
    n: usize,
    positions: Vec<(usize, usize)>,
    ring: Arc<PolyRing>,
}

impl LieAlgebraA {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        let mut positions = Vec::with_capacity(n * n - 1);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    positions.push((i, j));
                }
            }
        }
        positions.extend((0..n - 1).map(|k| (k, k)));
        let names = positions.iter().map(|&(i, j)| coordinate_name(n, i, j));
        Ok(Self {
            n,
            ring: PolyRing::new(names),
            positions,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank r = n - 1.
    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }

    /// b = n(n+1)/2 - 1, the dimension of a Borel subalgebra.
    pub fn borel_dim(&self) -> usize {
        self.n * (self.n + 1) / 2 - 1
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn coordinate_names(&self) -> &[String] {
        self.ring.vars()
    }

    /// Matrix position described by each coordinate.
    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    /// Index of the coordinate for position (i, j), if it is one.
    pub fn coordinate_index(&self, i: usize, j: usize) -> Option<usize> {
        self.positions.iter().position(|&p| p == (i, j))
    }

    pub fn basis(&self) -> Vec<GElement> {
        (0..self.dim()).map(|k| self.basis_element(k)).collect()
    }

    pub fn basis_element(&self, k: usize) -> GElement {
        let n = self.n;
        let (i, j) = self.positions[k];
        let mut m = ExactMatrix::zeros(n, n);
        if i == j {
            m.set(i, i, Scalar::from(1));
            m.set(n - 1, n - 1, Scalar::from(-1));
        } else {
            m.set(i, j, Scalar::from(1));
        }
        GElement::from_traceless_unchecked(m)
    }

    pub fn coordinates(&self, x: &GElement) -> Vec<Scalar> {
        debug_assert_eq!(x.n(), self.n);
        self.positions
            .iter()
            .map(|&(i, j)| x.entry(i, j).clone())
            .collect()
    }

    pub fn element_from_coordinates(&self, c: &[Scalar]) -> Result<GElement> {
        if c.len() != self.dim() {
            return Err(crate::MathError::LengthMismatch {
                expected: self.dim(),
                got: c.len(),
            }
            .into());
        }
        let n = self.n;
        let mut m = ExactMatrix::zeros(n, n);
        let mut last = Scalar::zero();
        for (&(i, j), v) in self.positions.iter().zip(c) {
            m.set(i, j, v.clone());
            if i == j {
                last = last - v;
            }
        }
        m.set(n - 1, n - 1, last);
        Ok(GElement::from_traceless_unchecked(m))
    }

    /// The coordinate function for matrix entry (i, j); `x_nn` is a linear combination.
    pub fn entry_poly(&self, i: usize, j: usize) -> Poly {
        match self.coordinate_index(i, j) {
            Some(k) => MPoly::var(&self.ring, k),
            None => {
                let mut p = Poly::zero(&self.ring);
                for k in 0..self.n - 1 {
                    p = &p - &MPoly::var(&self.ring, self.coordinate_index(k, k).unwrap());
                }
                p
            }
        }
    }

    /// The generic element X of sl_n as a matrix of coordinate functions.
    pub fn symbolic(&self) -> SymMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.entry_poly(i, j));
            }
        }
        SymMatrix::new(n, entries)
    }

    /// Linear coordinate function `p_y(x) = tr(y x)`.
    pub fn linear_function(&self, y: &GElement) -> Poly {
        self.symbolic().mul_const_left(y.matrix()).trace()
    }
}

pub(crate) fn coordinate_name(n: usize, i: usize, j: usize) -> String {
    if n >= 10 {
        format!("x{}_{}", i + 1, j + 1)
    } else {
        format!("x{}{}", i + 1, j + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        for n in 2..6 {
            let g = LieAlgebraA::new(n).unwrap();
            assert_eq!(2 * g.borel_dim(), g.dim() + g.rank());
            assert_eq!(g.basis().len(), g.dim());
        }
        assert!(LieAlgebraA::new(1).is_err());
    }

    #[test]
    fn coordinates_roundtrip() {
        let g = LieAlgebraA::new(3).unwrap();
        assert_eq!(
            g.coordinate_names(),
            ["x12", "x13", "x21", "x23", "x31", "x32", "x11", "x22"]
        );
        let c: Vec<Scalar> = (1..=8).map(Scalar::from).collect();
        let x = g.element_from_coordinates(&c).unwrap();
        assert_eq!(g.coordinates(&x), c);
        assert_eq!(x.entry(2, 2), &Scalar::from(-15));
        let point = g.coordinates(&x);
        assert_eq!(g.symbolic().eval(&point).unwrap(), x.matrix().clone());
    }
}
