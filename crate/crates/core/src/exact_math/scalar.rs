//! Gaussian rationals `Q(i)`: the base field of every computation in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::Field;
use super::MathError;

/// An element `re + im*i` with both parts exact reduced fractions.
///
/// Ordering is lexicographic on `(re, im)`. It is not a field ordering; it only
/// exists so eigenvalues can be listed deterministically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self;
        }
        acc
    }

    /// An exact square root inside `Q(i)`, if one exists.
    ///
    /// Handles the cases that occur in practice: squares of rationals and of
    /// purely imaginary rationals, plus general Gaussian squares found by
    /// solving `(u+vi)^2 = re+im*i` over `Q`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.im.is_zero() {
            let r = rational_sqrt(&self.re.abs())?;
            return Some(if self.re.is_negative() {
                Self::new(BigRational::zero(), r)
            } else {
                Self::new(r, BigRational::zero())
            });
        }
        // u^2 - v^2 = re, 2uv = im, u^2 + v^2 = |z|
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let u = rational_sqrt(&((&modulus + &self.re) / &two))?;
        if u.is_zero() {
            return None;
        }
        let v = &self.im / (&two * &u);
        let cand = Self::new(u, v);
        (cand.clone() * &cand == *self).then_some(cand)
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl Field for GaussianRational {
    fn from_int(v: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    fn from_bigint(v: BigInt) -> Self {
        Self::new(BigRational::from_integer(v), BigRational::zero())
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::new(&self.re * &rhs.re, BigRational::zero());
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        assert!(!rhs.is_zero(), "division by zero in Q(i)");
        if rhs.im.is_zero() {
            return GaussianRational::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        let n = rhs.norm_sqr();
        let num = self * &rhs.conj();
        GaussianRational::new(num.re / &n, num.im / &n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", fmt_rational(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", fmt_rational(&self.re), fmt_rational(&-self.im.clone()))
        } else {
            write!(f, "{}+{}*i", fmt_rational(&self.re), fmt_rational(&self.im))
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, MathError> {
    let bad = || MathError::Parse(format!("invalid rational `{s}`"));
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Coefficient of `i`: empty or a bare sign means one.
fn parse_imag_coeff(s: &str) -> Result<BigRational, MathError> {
    let s = s.strip_suffix('*').unwrap_or(s);
    match s {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_rational(s),
    }
}

impl FromStr for GaussianRational {
    type Err = MathError;

    /// Accepts `p`, `p/q`, `r/s*i`, `i`, `-i` and `p/q+r/s*i` (also with `-`).
    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(MathError::Parse("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::new(parse_rational(&s)?, BigRational::zero()));
        };
        // split between real and imaginary parts at the last sign that is not leading
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        match split {
            Some(k) => {
                let re = parse_rational(&body[..k])?;
                let im = parse_imag_coeff(&body[k..])?;
                Ok(Self::new(re, im))
            }
            None => Ok(Self::new(BigRational::zero(), parse_imag_coeff(body)?)),
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(Self::from_int(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        for s in ["0", "3", "-7/2", "1/2+3/4*i", "1/2-3/4*i", "5*i", "-1/3*i"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("i"), GaussianRational::i());
        assert_eq!(q("-i"), -GaussianRational::i());
        assert_eq!(q("2+i").to_string(), "2+1*i");
        assert_eq!(q("4/6"), q("2/3"));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("x".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = q("2/3+1/5*i");
        let b = q("-7/4+2*i");
        assert_eq!((a.clone() * &b) / &b, a);
        assert_eq!(a.clone() + &b - &b, a);
        assert_eq!(q("i") * q("i"), q("-1"));
        assert_eq!(q("3/7") * q("7/3"), GaussianRational::one());
    }

    #[test]
    fn square_roots() {
        assert_eq!(q("16").sqrt(), Some(q("4")));
        assert_eq!(q("-9/4").sqrt(), Some(q("3/2*i")));
        assert_eq!(q("2").sqrt(), None);
        let z = q("3+4*i");
        let r = z.sqrt().unwrap();
        assert_eq!(r.clone() * r, z);
    }
}
