use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::algebra::LieAlgebraA;
use crate::error::{Error, Result};
use crate::{ExactMatrix, Scalar, UniPoly};

/// A point of sl_n: a traceless square matrix over Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GElement {
    m: ExactMatrix,
}

/// Jordan-Chevalley decomposition `x = semisimple + nilpotent`, with
/// `semisimple = witness(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanData {
    pub semisimple: GElement,
    pub nilpotent: GElement,
    pub witness: UniPoly,
}

impl GElement {
    pub fn new(m: ExactMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare);
        }
        if m.rows() < 2 {
            return Err(Error::InvalidRank(m.rows()));
        }
        let t = m.trace();
        if !t.is_zero() {
            return Err(Error::NotTraceless(t.to_string()));
        }
        Ok(Self { m })
    }

    pub(crate) fn from_traceless_unchecked(m: ExactMatrix) -> Self {
        debug_assert!(m.trace().is_zero());
        Self { m }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        Self::new(ExactMatrix::from_rows(rows)?)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from(v)).collect())
                .collect(),
        )
    }

    /// Parses rows of scalar strings.
    pub fn from_strs(rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse::<Scalar>()).collect())
            .collect::<std::result::Result<Vec<Vec<_>>, _>>()?;
        Self::from_rows(rows)
    }

    pub fn zero(n: usize) -> Self {
        Self {
            m: ExactMatrix::zeros(n, n),
        }
    }

    /// Elementary matrix `e_ij` (0-based, `i != j`).
    pub fn e(n: usize, i: usize, j: usize) -> Self {
        assert_ne!(i, j, "e_ij needs i != j");
        let mut m = ExactMatrix::zeros(n, n);
        m.set(i, j, Scalar::one());
        Self { m }
    }

    pub fn diag(values: &[Scalar]) -> Result<Self> {
        Self::new(ExactMatrix::diagonal(values))
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        self.m.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::AlgebraMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(Self { m: self.m.add(&other.m) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(Self { m: self.m.sub(&other.m) })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { m: self.m.scale(c) }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &Self) -> Result<Self> {
        self.add(&other.scale(c))
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(Self {
            m: self.m.commutator(&other.m),
        })
    }

    /// The trace form `tr(xy)`, which is the Killing form divided by 2n.
    pub fn invariant_form(&self, other: &Self) -> Result<Scalar> {
        self.same_algebra(other)?;
        Ok(self.m.mul(&other.m).trace())
    }

    /// `g x g^-1` given both `g` and its inverse.
    pub fn conjugate(&self, g: &ExactMatrix, g_inv: &ExactMatrix) -> Self {
        Self {
            m: g.mul(&self.m).mul(g_inv),
        }
    }

    /// `g x g^-1`; `None` if `g` is singular.
    pub fn conjugate_by(&self, g: &ExactMatrix) -> Option<Self> {
        let inv = g.inverse()?;
        Some(self.conjugate(g, &inv))
    }

    pub fn charpoly(&self) -> UniPoly {
        self.m.charpoly()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| i == j || self.m.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.n()).map(|i| self.m.get(i, i).clone()).collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.m.pow(self.n() as u32).is_zero()
    }

    /// Semisimple over the algebraic closure: the squarefree part of the
    /// characteristic polynomial annihilates the matrix.
    pub fn is_semisimple(&self) -> bool {
        self.m.eval_poly(&self.charpoly().squarefree_part()).is_zero()
    }

    /// Matrix of `ad_x` in the basis of [`LieAlgebraA`].
    pub fn ad_matrix(&self) -> ExactMatrix {
        let g = LieAlgebraA::new(self.n()).expect("n >= 2");
        let cols: Vec<Vec<Scalar>> = g
            .basis()
            .iter()
            .map(|e| g.coordinates(&Self { m: self.m.commutator(e.matrix()) }))
            .collect();
        ExactMatrix::from_columns(g.dim(), &cols).expect("consistent dimensions")
    }

    pub fn centralizer(&self) -> Vec<GElement> {
        let g = LieAlgebraA::new(self.n()).expect("n >= 2");
        self.ad_matrix()
            .kernel()
            .iter()
            .map(|v| g.element_from_coordinates(v).expect("length dim"))
            .collect()
    }

    pub fn centralizer_dim(&self) -> usize {
        let dim = self.n() * self.n() - 1;
        dim - self.ad_matrix().rank()
    }

    pub fn is_regular(&self) -> bool {
        self.centralizer_dim() == self.n() - 1
    }

    pub fn require_regular(&self) -> Result<()> {
        let d = self.centralizer_dim();
        if d == self.n() - 1 {
            Ok(())
        } else {
            Err(Error::NotRegular {
                centralizer_dim: d,
                rank: self.n() - 1,
            })
        }
    }

    /// Jordan-Chevalley decomposition by Newton iteration on the squarefree
    /// part of the characteristic polynomial, carried out modulo that polynomial.
    pub fn jordan_chevalley(&self) -> JordanData {
        let p = self.charpoly();
        let q = p.squarefree_part();
        let dq = q.derivative();
        let mut s = UniPoly::t().rem(&p);
        loop {
            let qs = q.compose(&s).rem(&p);
            if qs.is_zero() {
                break;
            }
            let inv = dq
                .compose(&s)
                .rem(&p)
                .inverse_mod(&p)
                .expect("q'(s) is a unit modulo the characteristic polynomial");
            s = (&s - &(&qs * &inv)).rem(&p);
        }
        let semisimple = Self {
            m: self.m.eval_poly(&s),
        };
        let nilpotent = Self {
            m: self.m.sub(&semisimple.m),
        };
        JordanData {
            semisimple,
            nilpotent,
            witness: s,
        }
    }
}

/// Rank of the Krylov matrix `[I, x, ..., x^{n-1}]`; equals n iff x is regular.
pub fn krylov_rank(x: &ExactMatrix) -> usize {
    let n = x.rows();
    let mut cols = Vec::with_capacity(n);
    let mut p = ExactMatrix::identity(n);
    for _ in 0..n {
        cols.push(p.data().to_vec());
        p = p.mul(x);
    }
    ExactMatrix::from_columns(n * n, &cols).unwrap().rank()
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.m.fmt(f)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    n: usize,
    entries: Vec<Vec<Scalar>>,
}

impl Serialize for GElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            n: self.n(),
            entries: self.m.to_rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.n || repr.entries.iter().any(|r| r.len() != repr.n) {
            return Err(serde::de::Error::custom("entries do not form an n x n matrix"));
        }
        GElement::from_rows(repr.entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(rows: &[&[i64]]) -> GElement {
        GElement::from_ints(rows).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let e12 = GElement::e(2, 0, 1);
        let e21 = GElement::e(2, 1, 0);
        let h = el(&[&[1, 0], &[0, -1]]);
        assert_eq!(e12.bracket(&e21).unwrap(), h);
        assert!(h.bracket(&h).unwrap().is_zero());
        assert_eq!(h.bracket(&e12).unwrap(), e12.scale(&Scalar::from(2)));
        assert!(h.bracket(&GElement::zero(3)).is_err());
    }

    #[test]
    fn form_examples() {
        let h = el(&[&[1, 0], &[0, -1]]);
        let e12 = GElement::e(2, 0, 1);
        let e21 = GElement::e(2, 1, 0);
        assert_eq!(h.invariant_form(&h).unwrap(), Scalar::from(2));
        assert_eq!(e12.invariant_form(&e12).unwrap(), Scalar::from(0));
        assert_eq!(e12.invariant_form(&e21).unwrap(), Scalar::from(1));
        // Killing form from ad matrices
        let killing = h.ad_matrix().mul(&h.ad_matrix()).trace();
        assert_eq!(killing, Scalar::from(8));
    }

    #[test]
    fn ad_examples() {
        assert!(GElement::zero(2).ad_matrix().is_zero());
        let h = el(&[&[1, 0], &[0, -1]]);
        let ad = h.ad_matrix();
        // basis order is e12, e21, h
        assert_eq!(ad.get(0, 0), &Scalar::from(2));
        assert_eq!(ad.get(1, 1), &Scalar::from(-2));
        assert_eq!(ad.get(2, 2), &Scalar::from(0));
        assert_eq!(h.centralizer().len(), 1);
    }

    #[test]
    fn regularity_examples() {
        assert!(el(&[&[1, 0], &[0, -1]]).is_regular());
        assert!(!GElement::zero(2).is_regular());
        let n3 = el(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert!(n3.is_regular());
        assert!(!el(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]]).is_regular());
        let c = n3.centralizer();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn jordan_examples() {
        let n3 = el(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let jd = n3.jordan_chevalley();
        assert!(jd.semisimple.is_zero());
        assert_eq!(jd.nilpotent, n3);

        let d = el(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]]);
        let jd = d.jordan_chevalley();
        assert_eq!(jd.semisimple, d);
        assert!(jd.nilpotent.is_zero());

        let r = el(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -2]]);
        let jd = r.jordan_chevalley();
        assert_eq!(jd.semisimple, el(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]]));
        assert_eq!(jd.nilpotent, GElement::e(3, 0, 1));
    }

    #[test]
    fn json_roundtrip() {
        let x = GElement::from_strs(&[&["1/2", "i"], &["3", "-1/2"]]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":2,"entries":[["1/2","1*i"],["3","-1/2"]]}"#);
        let y: GElement = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert!(serde_json::from_str::<GElement>(r#"{"n":2,"entries":[["1","0"],["0","1"]]}"#).is_err());
    }
}
