//! The standard regular representatives `s`, `r`, `n` with rational parameters.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::GElement;
use crate::{ExactMatrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    /// Regular semisimple diagonal.
    S,
    /// `J_2(ρ)` plus distinct diagonal entries.
    R,
    /// Principal nilpotent `sum e_{i,i+1}`.
    N,
}

impl FromStr for ElementKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(Self::S),
            "r" => Ok(Self::R),
            "n" => Ok(Self::N),
            _ => Err(Error::InvalidInput(format!("unknown element label {s:?}"))),
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::S => "s",
            Self::R => "r",
            Self::N => "n",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSpec {
    pub kind: ElementKind,
    pub params: Vec<Scalar>,
}

impl ElementSpec {
    pub fn new(kind: ElementKind, params: Vec<Scalar>) -> Self {
        Self { kind, params }
    }

    pub fn parse(label: &str, params: &[String]) -> Result<Self> {
        let params = params
            .iter()
            .map(|p| p.parse::<Scalar>().map_err(|e| Error::InvalidInput(e.to_string())))
            .collect::<Result<_>>()?;
        Ok(Self::new(label.parse()?, params))
    }

    /// Defaults: `s = diag(a1, -a1)` with `a1 = 1` on sl_2, `diag(1, 2, -3)` on
    /// sl_3 and `diag(1, ..., n-1, -sum)` beyond; `ρ = 1`.
    pub fn build(&self, n: usize) -> Result<GElement> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        match self.kind {
            ElementKind::S => self.semisimple(n),
            ElementKind::R => self.jordan(n),
            ElementKind::N => {
                if !self.params.is_empty() {
                    return Err(Error::InvalidInput("n takes no parameters".into()));
                }
                let mut m = ExactMatrix::zeros(n, n);
                for i in 0..n - 1 {
                    m.set(i, i + 1, Scalar::one());
                }
                GElement::new(m)
            }
        }
    }

    fn semisimple(&self, n: usize) -> Result<GElement> {
        let mut d: Vec<Scalar> = match self.params.len() {
            0 if n == 3 => [1, 2].iter().map(|&v| Scalar::from(v)).collect(),
            0 => (1..n as i64).map(Scalar::from).collect(),
            k if k == n - 1 || k == n => self.params.clone(),
            k => {
                return Err(Error::InvalidInput(format!(
                    "s on sl_{n} takes {} or {n} parameters, got {k}",
                    n - 1
                )))
            }
        };
        if d.len() == n - 1 {
            let s = d.iter().fold(Scalar::zero(), |acc, v| acc + v);
            d.push(-s);
        }
        GElement::diag(&d)
    }

    fn jordan(&self, n: usize) -> Result<GElement> {
        if n < 3 {
            return Err(Error::InvalidInput("r needs n >= 3".into()));
        }
        let rho = match self.params.as_slice() {
            [] => Scalar::one(),
            [p] => p.clone(),
            _ => return Err(Error::InvalidInput("r takes one parameter".into())),
        };
        let mut m = ExactMatrix::zeros(n, n);
        m.set(0, 0, rho.clone());
        m.set(1, 1, rho.clone());
        m.set(0, 1, Scalar::one());
        let mut sum = rho.clone() * Scalar::from(2);
        for k in 2..n - 1 {
            let v = rho.clone() * Scalar::from(k as i64 + 1);
            sum = sum + &v;
            m.set(k, k, v);
        }
        m.set(n - 1, n - 1, -sum);
        GElement::new(m)
    }
}

/// The label used in reports: the parameters are listed when given.
impl fmt::Display for ElementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(ToString::to_string).collect();
            write!(f, "({})", ps.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representatives() {
        let s = ElementSpec::parse("s", &[]).unwrap().build(3).unwrap();
        assert_eq!(s, GElement::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]]).unwrap());
        let r = ElementSpec::parse("r", &["2".into()]).unwrap().build(3).unwrap();
        assert_eq!(r, GElement::from_ints(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, -4]]).unwrap());
        let s2 = ElementSpec::parse("s", &["3".into()]).unwrap().build(2).unwrap();
        assert_eq!(s2, GElement::from_ints(&[&[3, 0], &[0, -3]]).unwrap());
        for n in 2..6 {
            let x = ElementSpec::parse("n", &[]).unwrap().build(n).unwrap();
            assert!(x.is_regular() && x.is_nilpotent());
            let s = ElementSpec::parse("s", &[]).unwrap().build(n).unwrap();
            assert!(s.is_regular() && s.is_semisimple());
            if n >= 3 {
                let r = ElementSpec::parse("r", &[]).unwrap().build(n).unwrap();
                assert!(r.is_regular() && !r.is_semisimple() && !r.is_nilpotent());
            }
        }
    }

    #[test]
    fn bad_specs() {
        assert!(ElementSpec::parse("q", &[]).is_err());
        assert!(ElementSpec::parse("r", &[]).unwrap().build(2).is_err());
        assert!(ElementSpec::parse("s", &["1".into(), "2".into(), "3".into()]).unwrap().build(3).is_err());
        // repeated eigenvalue
        assert!(!ElementSpec::parse("s", &["1".into(), "1".into()]).unwrap().build(3).unwrap().is_regular());
    }
}
