//! Seeded random exact data for probes and property checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lie::{GElement, LieAlgebraA, Subspace};
use crate::{ExactMatrix, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer in `[-bound, bound]`.
pub fn small_int(rng: &mut SeededRng, bound: i64) -> Scalar {
    Scalar::from(rng.gen_range(-bound..=bound))
}

/// Rational `p/q` with `|p| <= bound`, `1 <= q <= 3`.
pub fn small_rational(rng: &mut SeededRng, bound: i64) -> Scalar {
    Scalar::from_ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
}

pub fn random_element(rng: &mut SeededRng, g: &LieAlgebraA, bound: i64) -> GElement {
    let c: Vec<Scalar> = (0..g.dim()).map(|_| small_int(rng, bound)).collect();
    g.element_from_coordinates(&c).expect("dimension matches")
}

pub fn random_rational_element(rng: &mut SeededRng, g: &LieAlgebraA, bound: i64) -> GElement {
    let c: Vec<Scalar> = (0..g.dim()).map(|_| small_rational(rng, bound)).collect();
    g.element_from_coordinates(&c).expect("dimension matches")
}

/// Product of random elementary matrices; determinant one.
pub fn random_unimodular(rng: &mut SeededRng, n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::identity(n);
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut e = ExactMatrix::identity(n);
        e.set(i, j, small_int(rng, 2));
        m = m.mul(&e);
    }
    m
}

/// Random upper unitriangular matrix.
pub fn random_upper_unipotent(rng: &mut SeededRng, n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, small_int(rng, 3));
        }
    }
    m
}

/// Random invertible upper triangular matrix with determinant one.
pub fn random_upper_unimodular(rng: &mut SeededRng, n: usize) -> ExactMatrix {
    let mut m = random_upper_unipotent(rng, n);
    let mut prod = Scalar::from(1);
    for i in 0..n - 1 {
        let mut d = small_int(rng, 3);
        while num_traits::Zero::is_zero(&d) {
            d = small_int(rng, 3);
        }
        prod = prod * &d;
        let row: Vec<Scalar> = m.row(i).into_iter().map(|v| v * &d).collect();
        for (j, v) in row.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    let last: Vec<Scalar> = m.row(n - 1).into_iter().map(|v| v / &prod).collect();
    for (j, v) in last.into_iter().enumerate() {
        m.set(n - 1, j, v);
    }
    m
}

/// Random diagonal element with distinct integer entries.
pub fn random_regular_diagonal(rng: &mut SeededRng, n: usize, bound: i64) -> GElement {
    loop {
        let mut d: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-bound..=bound)).collect();
        d.push(-d.iter().sum::<i64>());
        let mut sorted = d.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == n {
            let vals: Vec<Scalar> = d.into_iter().map(Scalar::from).collect();
            return GElement::diag(&vals).expect("traceless");
        }
    }
}

/// Random integer combination of a subspace basis.
pub fn random_in_subspace(rng: &mut SeededRng, g: &LieAlgebraA, s: &Subspace, bound: i64) -> GElement {
    let mut c = vec![Scalar::from(0); g.dim()];
    for v in s.basis_vectors() {
        let k = small_int(rng, bound);
        for (x, y) in c.iter_mut().zip(v) {
            *x = x.clone() + k.clone() * y;
        }
    }
    g.element_from_coordinates(&c).expect("dimension matches")
}
