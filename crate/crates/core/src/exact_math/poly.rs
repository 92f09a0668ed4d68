//! Sparse multivariate polynomials in graded-lex order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use super::field::Field;
use super::MathError;

/// An ordered list of variable names. Polynomials share rings through `Arc`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyRing {
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Arc<Self> {
        Arc::new(Self {
            vars: vars.into_iter().map(Into::into).collect(),
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, MathError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| MathError::UnknownVariable(name.to_string()))
    }

    /// A new ring with extra variables appended.
    pub fn extend<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Arc<Self> {
        let mut vars = self.vars.clone();
        vars.extend(extra.into_iter().map(Into::into));
        Arc::new(Self { vars })
    }
}

/// Exponent vector, ordered by total degree and then lexicographically
/// (earlier variables weigh more).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly<F> {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: F) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn var(ring: &Arc<PolyRing>, idx: usize) -> Self {
        let mut m = Monomial::one(ring.nvars());
        m.0[idx] = 1;
        let mut p = Self::zero(ring);
        p.terms.insert(m, F::one());
        p
    }

    pub fn var_by_name(ring: &Arc<PolyRing>, name: &str) -> Result<Self, MathError> {
        Ok(Self::var(ring, ring.index_of(name)?))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Vec<u32>, F)>,
    ) -> Result<Self, MathError> {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars() {
                return Err(MathError::LengthMismatch {
                    expected: ring.nvars(),
                    got: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    /// Whether any of the given variables occurs.
    pub fn involves_any(&self, idxs: &[usize]) -> bool {
        self.terms.keys().any(|m| idxs.iter().any(|&i| m.0[i] > 0))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.ring, F::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to the variable at `idx`.
    pub fn diff(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[idx] = e - 1;
            out.add_term(dm, c.clone() * &F::from_int(e as i64));
        }
        out
    }

    pub fn diff_by_name(&self, name: &str) -> Result<Self, MathError> {
        Ok(self.diff(self.ring.index_of(name)?))
    }

    pub fn eval(&self, point: &[F]) -> Result<F, MathError> {
        if point.len() != self.ring.nvars() {
            return Err(MathError::LengthMismatch {
                expected: self.ring.nvars(),
                got: point.len(),
            });
        }
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, v) in m.0.iter().zip(point) {
                for _ in 0..*e {
                    t = t * v;
                }
            }
            total = total + t;
        }
        Ok(total)
    }

    /// Substitutes `images[k]` for the k-th variable; all images share one target ring.
    pub fn compose(&self, images: &[MPoly<F>]) -> Result<Self, MathError> {
        if images.len() != self.ring.nvars() {
            return Err(MathError::LengthMismatch {
                expected: self.ring.nvars(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        if images.iter().any(|p| p.ring != target) {
            return Err(MathError::RingMismatch);
        }
        // Cache powers of each image.
        let mut powers: Vec<Vec<MPoly<F>>> = images
            .iter()
            .map(|p| vec![MPoly::constant(&target, F::one()), p.clone()])
            .collect();
        let mut out = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = &powers[k][powers[k].len() - 1] * &images[k];
                    powers[k].push(next);
                }
                t = &t * &powers[k][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in a ring containing all of its variables (by name).
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Self, MathError> {
        let images = self
            .ring
            .vars
            .iter()
            .map(|v| MPoly::var_by_name(target, v))
            .collect::<Result<Vec<_>, _>>()?;
        if images.is_empty() {
            return Ok(MPoly::constant(target, self.constant_term()));
        }
        self.compose(&images)
    }

    /// Coefficients of `var^k` for k = 0..=deg, each still in the same ring.
    pub fn coefficients_in(&self, idx: usize) -> Vec<Self> {
        let deg = self.degree_in(idx) as usize;
        let mut out = vec![Self::zero(&self.ring); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[idx] as usize;
            let mut mm = m.clone();
            mm.0[idx] = 0;
            out[k].add_term(mm, c.clone());
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings"
        );
    }
}

impl<F: Field + FromStr> MPoly<F> {
    /// Parses the format produced by `Display`.
    pub fn parse(ring: &Arc<PolyRing>, s: &str) -> Result<Self, MathError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(MathError::Parse("empty polynomial".into()));
        }
        let mut out = Self::zero(ring);
        for (neg, term) in split_terms(&s)? {
            let mut coeff = F::one();
            let mut mono = Monomial::one(ring.nvars());
            for factor in split_factors(term) {
                if factor.is_empty() {
                    return Err(MathError::Parse(format!("empty factor in `{term}`")));
                }
                let (base, exp) = match factor.rsplit_once('^') {
                    Some((b, e)) if !e.contains(')') => {
                        let e: u32 = e
                            .parse()
                            .map_err(|_| MathError::Parse(format!("bad exponent in `{factor}`")))?;
                        (b, e)
                    }
                    _ => (factor, 1),
                };
                if let Ok(idx) = ring.index_of(base) {
                    mono.0[idx] += exp;
                    continue;
                }
                let inner = base
                    .strip_prefix('(')
                    .and_then(|b| b.strip_suffix(')'))
                    .unwrap_or(base);
                let v: F = inner
                    .parse()
                    .map_err(|_| MathError::Parse(format!("unrecognised factor `{factor}`")))?;
                for _ in 0..exp {
                    coeff = coeff * &v;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

fn split_terms(s: &str) -> Result<Vec<(bool, &str)>, MathError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut neg = false;
    let bytes = s.as_bytes();
    for (k, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                // a sign directly after '^', '*' or '/' is not a term boundary
                if k > 0 && matches!(bytes[k - 1], b'^' | b'*' | b'/') {
                    continue;
                }
                if k > start {
                    out.push((neg, &s[start..k]));
                } else if k != 0 {
                    return Err(MathError::Parse(format!("dangling sign in `{s}`")));
                }
                neg = b == b'-';
                start = k + 1;
            }
            _ => {}
        }
    }
    if depth != 0 || start >= s.len() {
        return Err(MathError::Parse(format!("malformed polynomial `{s}`")));
    }
    out.push((neg, &s[start..]));
    Ok(out)
}

fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in term.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&term[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&term[start..]);
    out
}

impl<F: Field> Add for &MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, rhs: Self) -> MPoly<F> {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, rhs: Self) -> MPoly<F> {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, rhs: Self) -> MPoly<F> {
        self.check_ring(rhs);
        let mut out = MPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb);
            }
        }
        out
    }
}

impl<F: Field> Neg for &MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let simple = !text[1..].contains(['+', '-']);
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ if simple => (false, text.clone()),
                _ => (false, format!("({text})")),
            };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{e}", self.ring.vars[i])
                    }
                })
                .collect();
            if vars.is_empty() {
                f.write_str(&body)?;
            } else {
                if body != "1" {
                    write!(f, "{body}*")?;
                }
                f.write_str(&vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(["x", "y"])
    }

    fn p(s: &str) -> MPoly<Scalar> {
        MPoly::parse(&ring(), s).unwrap()
    }

    #[test]
    fn diff_examples() {
        assert_eq!(p("x^2").diff_by_name("x").unwrap(), p("2*x"));
        assert!(p("y").diff_by_name("x").unwrap().is_zero());
        assert_eq!(p("x^2*y + x*y").diff_by_name("x").unwrap(), p("2*x*y + y"));
        assert!(matches!(
            p("x").diff_by_name("z"),
            Err(MathError::UnknownVariable(_))
        ));
    }

    #[test]
    fn eval_examples() {
        let s = |v: &str| v.parse::<Scalar>().unwrap();
        assert_eq!(p("x^2 + y").eval(&[s("2"), s("3")]).unwrap(), s("7"));
        assert_eq!(p("x*y + 5").eval(&[s("0"), s("0")]).unwrap(), s("5"));
        assert_eq!(p("x*y").eval(&[s("1/2"), s("2/3")]).unwrap(), s("1/3"));
        assert!(p("x").eval(&[s("1")]).is_err());
    }

    #[test]
    fn display_roundtrip() {
        for text in [
            "x^2 + x*y - 3/2*y^2 + 7",
            "-x + (1+2*i)*y",
            "1*i*x^3*y - 1",
            "0",
        ] {
            let q = p(text);
            assert_eq!(q.to_string(), text);
            assert_eq!(p(&q.to_string()), q);
        }
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn compose_and_coefficients() {
        let r = ring();
        let q = p("x^2 + x*y");
        let lam = r.extend(["l"]);
        let images = vec![
            MPoly::parse(&lam, "x + l").unwrap(),
            MPoly::parse(&lam, "y").unwrap(),
        ];
        let shifted = q.compose(&images).unwrap();
        let coeffs = shifted.coefficients_in(2);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[0], q.embed(&lam).unwrap());
        assert_eq!(coeffs[1], MPoly::parse(&lam, "2*x + y").unwrap());
        assert_eq!(coeffs[2], MPoly::parse(&lam, "1").unwrap());
    }
}
