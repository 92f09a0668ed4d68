use super::element::GElement;
use crate::error::{Error, Result};
use crate::{ExactMatrix, Scalar};

/// A permutation `i -> perm[i]` of {0, ..., n-1}, acting on sl_n by
/// conjugation with the permutation matrix sending `e_i` to `e_perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidInput(format!("not a permutation: {perm:?}")));
            }
            seen[p] = true;
        }
        Ok(Self { perm })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm: inv }
    }

    pub fn matrix(&self) -> ExactMatrix {
        let n = self.perm.len();
        let mut m = ExactMatrix::zeros(n, n);
        for (i, &p) in self.perm.iter().enumerate() {
            m.set(p, i, Scalar::from(1));
        }
        m
    }

    pub fn act(&self, x: &GElement) -> GElement {
        x.conjugate(&self.matrix(), &self.inverse().matrix())
    }
}

/// All n! permutations in lexicographic order, identity first.
pub fn weyl_group(n: usize) -> Vec<WeylElement> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(WeylElement { perm: perm.clone() });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    out
}

/// Permutations fixing the diagonal of `s`.
pub fn weyl_stabilizer(s: &GElement) -> Result<Vec<WeylElement>> {
    if !s.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let d = s.diagonal();
    Ok(weyl_group(s.n())
        .into_iter()
        .filter(|w| w.perm.iter().enumerate().all(|(i, &p)| d[p] == d[i]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        assert_eq!(weyl_group(3).len(), 6);
        assert_eq!(weyl_group(4).len(), 24);
        let g = weyl_group(3);
        for a in &g {
            assert_eq!(a.compose(&a.inverse()), WeylElement::identity(3));
            for b in &g {
                assert!(g.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn stabilizers() {
        let s = GElement::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]]).unwrap();
        assert_eq!(weyl_stabilizer(&s).unwrap().len(), 1);
        let r = GElement::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]]).unwrap();
        let st = weyl_stabilizer(&r).unwrap();
        assert_eq!(st.len(), 2);
        assert!(st.contains(&WeylElement::new(vec![1, 0, 2]).unwrap()));
        assert!(weyl_stabilizer(&GElement::e(3, 0, 1)).is_err());
    }

    #[test]
    fn action_permutes_diagonal() {
        let s = GElement::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]]).unwrap();
        let w = WeylElement::new(vec![1, 2, 0]).unwrap();
        let ws = w.act(&s);
        assert_eq!(ws.diagonal(), vec![Scalar::from(-3), Scalar::from(1), Scalar::from(2)]);
    }
}
