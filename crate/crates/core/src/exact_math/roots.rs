//! Exact roots in Q(i) of univariate polynomials.
//!
//! Candidates come from a floating-point root finder and are then confirmed
//! (or rejected) by exact evaluation, so a returned root is always exact.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::field::Field;
use super::scalar::GaussianRational;
use super::upoly::UPoly;

const MAX_DEN: i64 = 1 << 24;

/// Roots with multiplicities, sorted by the total order on Q(i).
///
/// Returns `None` when some root is not in Q(i) (or was not recognised).
pub fn exact_roots(p: &UPoly<GaussianRational>) -> Option<Vec<(GaussianRational, usize)>> {
    let deg = p.degree()?;
    if deg == 0 {
        return Some(Vec::new());
    }
    let mut rest = p.squarefree_part();
    let mut found = Vec::new();
    while rest.degree().unwrap_or(0) > 0 {
        if rest.degree() == Some(1) {
            let c = rest.coeffs();
            found.push(-(c[0].clone() / &c[1]));
            break;
        }
        let approx = numeric_roots(&rest);
        let root = approx
            .iter()
            .find_map(|z| recognise(z, &rest))?;
        rest = rest
            .div_rem(&UPoly::new(vec![-root.clone(), GaussianRational::from_int(1)]))
            .0;
        found.push(root);
    }
    found.sort();
    let mut out = Vec::new();
    for r in found {
        let lin = UPoly::new(vec![-r.clone(), GaussianRational::from_int(1)]);
        let mut q = p.clone();
        let mut mult = 0;
        loop {
            let (quo, rem) = q.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            mult += 1;
            q = quo;
        }
        out.push((r, mult));
    }
    Some(out)
}

fn recognise(z: &Complex64, p: &UPoly<GaussianRational>) -> Option<GaussianRational> {
    let res = convergents(z.re);
    let ims = convergents(z.im);
    for re in &res {
        for im in &ims {
            let cand = GaussianRational::new(re.clone(), im.clone());
            if p.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

fn convergents(x: f64) -> Vec<BigRational> {
    if !x.is_finite() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero()];
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h = ai * h1 + h0;
        let k = ai * k1 + k0;
        if k > MAX_DEN as i128 {
            break;
        }
        out.push(BigRational::new(BigInt::from(h), BigInt::from(k)));
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    // Closest approximations first.
    out.reverse();
    out.truncate(8);
    out
}

fn numeric_roots(p: &UPoly<GaussianRational>) -> Vec<Complex64> {
    let lead = p.leading().unwrap().to_c64();
    let c: Vec<Complex64> = p.coeffs().iter().map(|v| v.to_c64() / lead).collect();
    let n = c.len() - 1;
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, v| acc * z + v);
    let deriv = |z: Complex64| {
        c.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, v)| acc * z + v * k as f64)
    };
    let bound = 1.0 + c[..n].iter().map(|v| v.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound.min(2.0)).collect();
    for _ in 0..1000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    for zi in &mut z {
        for _ in 0..20 {
            let d = deriv(*zi);
            if d.norm() == 0.0 {
                break;
            }
            *zi -= eval(*zi) / d;
        }
    }
    z
}
