//! Dense exact matrices: products, fraction-free rank and determinant, kernels.

use std::fmt;

use super::field::Field;
use super::upoly::UPoly;
use super::MathError;

/// Row-major dense matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self, MathError> {
        if data.len() != rows * cols {
            return Err(MathError::LengthMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, MathError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MathError::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Result<Self, MathError> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(MathError::LengthMismatch {
                    expected: rows,
                    got: c.len(),
                });
            }
            for (i, v) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal(values: &[F]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|v| v.clone() * c)
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(F::zero(), |acc, j| acc + self.get(i, j).clone() * &v[j])
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut prev = F::one();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    m.swap(p * cols + j, rank * cols + j);
                }
            }
            let pivot = m[rank * cols + col].clone();
            for i in rank + 1..rows {
                let lead = m[i * cols + col].clone();
                for j in col + 1..cols {
                    let v = (pivot.clone() * &m[i * cols + j] - lead.clone() * &m[rank * cols + j])
                        / &prev;
                    m[i * cols + j] = v;
                }
                m[i * cols + col] = F::zero();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<F, MathError> {
        if !self.is_square() {
            return Err(MathError::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        let mut m = self.data.clone();
        let mut prev = F::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !m[r * n + k].is_zero()) else {
                return Ok(F::zero());
            };
            if p != k {
                for j in 0..n {
                    m.swap(p * n + j, k * n + j);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m[k * n + k].clone() * &m[i * n + j]
                        - m[i * n + k].clone() * &m[k * n + j])
                        / &prev;
                    m[i * n + j] = v;
                }
            }
            prev = m[k * n + k].clone();
        }
        let d = m[n * n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = m.get(r, col).inv();
            for j in col..cols {
                let v = m.get(r, j).clone() * &inv;
                m.set(r, j, v);
            }
            for i in 0..rows {
                if i == r || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..cols {
                    let v = m.get(i, j).clone() - factor.clone() * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        (m, pivots)
    }

    /// A basis of the right kernel; its length is `cols - rank`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -red.get(row, fc).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial `det(t I - self)` by the Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> UPoly<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
            let mut next = self.mul(&m);
            for i in 0..n {
                let v = next.get(i, i).clone() + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            let c = -(self.mul(&next).trace() / F::from_int(k as i64));
            coeffs[n - k] = c;
            m = next;
        }
        UPoly::new(coeffs)
    }

    /// Evaluates a univariate polynomial at this (square) matrix.
    pub fn eval_poly(&self, p: &UPoly<F>) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = acc.get(i, i).clone() + c;
                acc.set(i, i, v);
            }
        }
        acc
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn m(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Scalar>::identity(3).rank(), 3);
        assert_eq!(Matrix::<Scalar>::zeros(3, 3).rank(), 0);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]]).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::<Scalar>::identity(3).kernel().is_empty());
        assert_eq!(Matrix::<Scalar>::zeros(2, 2).kernel().len(), 2);
        let k = m(&[&[1, 1], &[0, 0]]).kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0].clone() + &k[0][1], Scalar::zero());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det().unwrap(), Scalar::from_int(18));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn charpoly_cayley_hamilton() {
        let a = m(&[&[1, 2, 0], &[0, 1, -1], &[3, 0, 2]]);
        let p = a.charpoly();
        assert!(a.eval_poly(&p).is_zero());
        assert_eq!(p.coeffs()[0], -a.det().unwrap());
    }

    #[test]
    fn works_over_plain_rationals() {
        let a: Matrix<BigRational> = Matrix::from_rows(vec![
            vec![BigRational::from_int(1), BigRational::from_int(2)],
            vec![BigRational::from_int(3), BigRational::from_int(6)],
        ])
        .unwrap();
        assert_eq!(a.rank(), 1);
        assert_eq!(a.kernel().len(), 1);
    }
}
