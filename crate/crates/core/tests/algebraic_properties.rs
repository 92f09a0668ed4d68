use std::sync::Arc;

use argshift::exact_math::{MPoly, PolyRing};
use argshift::lie::{GElement, LieAlgebraA};
use argshift::sampling::{self, rng};
use argshift::{ExactMatrix, Poly, Scalar, UniPoly};
use num_traits::Zero;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(100)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3).prop_map(|(a, b, c, d)| {
        Scalar::from_ratio(a, b) + Scalar::from_ratio(c, d) * Scalar::i()
    })
}

fn matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-2i64..=2, r * c).prop_map(move |v| {
            ExactMatrix::new(r, c, v.into_iter().map(Scalar::from).collect()).unwrap()
        })
    })
}

fn ring() -> Arc<PolyRing> {
    PolyRing::new(["x", "y", "z"])
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, 3), -5i64..=5), 0..6)
        .prop_map(|terms| MPoly::from_terms(&ring(), terms.into_iter().map(|(e, c)| (e, Scalar::from(c)))).unwrap())
}

fn point() -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(scalar(), 3)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rank_nullity(m in matrix(5)) {
        prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
        for v in m.kernel() {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(), q in poly(), v in point()) {
        let (pv, qv) = (p.eval(&v).unwrap(), q.eval(&v).unwrap());
        prop_assert_eq!((&p * &q).eval(&v).unwrap(), pv.clone() * &qv);
        prop_assert_eq!((&p + &q).eval(&v).unwrap(), pv + qv);
    }

    #[test]
    fn leibniz_rule(p in poly(), q in poly(), k in 0usize..3) {
        let lhs = (&p * &q).diff(k);
        let rhs = &(&p.diff(k) * &q) + &(&p * &q.diff(k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_round_trips(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.clone() + &b - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.clone() * &b / &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn polynomial_text_round_trips(p in poly()) {
        prop_assert_eq!(MPoly::parse(&ring(), &p.to_string()).unwrap(), p);
    }
}

fn element(g: &LieAlgebraA, c: &[i64]) -> GElement {
    g.element_from_coordinates(&c.iter().map(|&v| Scalar::from(v)).collect::<Vec<_>>())
        .unwrap()
}

fn coords(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, n * n - 1)
}

#[test]
fn jacobi_on_basis_triples() {
    for n in 2..=4 {
        let g = LieAlgebraA::new(n).unwrap();
        let basis = g.basis();
        for x in &basis {
            for y in &basis {
                let xy = x.bracket(y).unwrap();
                assert_eq!(xy, y.bracket(x).unwrap().scale(&Scalar::from(-1)));
                for z in &basis {
                    let sum = x
                        .bracket(&y.bracket(z).unwrap())
                        .unwrap()
                        .add(&y.bracket(&z.bracket(x).unwrap()).unwrap())
                        .unwrap()
                        .add(&z.bracket(&xy).unwrap())
                        .unwrap();
                    assert!(sum.is_zero(), "n = {n}: {x} {y} {z}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn trace_form_properties(n in 2usize..=4, seed in any::<u64>()) {
        let g = LieAlgebraA::new(n).unwrap();
        let mut r = rng(seed);
        let x = sampling::random_rational_element(&mut r, &g, 4);
        let y = sampling::random_rational_element(&mut r, &g, 4);
        let z = sampling::random_rational_element(&mut r, &g, 4);
        let form = x.invariant_form(&y).unwrap();
        prop_assert_eq!(&form, &y.invariant_form(&x).unwrap());
        let inv = z.bracket(&x).unwrap().invariant_form(&y).unwrap()
            + x.invariant_form(&z.bracket(&y).unwrap()).unwrap();
        prop_assert!(inv.is_zero());
        let killing = x.ad_matrix().mul(&y.ad_matrix()).trace();
        prop_assert_eq!(killing, form * Scalar::from(2 * n as i64));
    }

    #[test]
    fn jordan_chevalley_properties(n in 2usize..=4, c in coords(4)) {
        let g = LieAlgebraA::new(n).unwrap();
        let x = element(&g, &c[..n * n - 1]);
        let jd = x.jordan_chevalley();
        prop_assert_eq!(jd.semisimple.add(&jd.nilpotent).unwrap(), x.clone());
        prop_assert!(jd.semisimple.bracket(&jd.nilpotent).unwrap().is_zero());
        prop_assert!(jd.nilpotent.matrix().pow(n as u32).is_zero());
        prop_assert_eq!(x.matrix().eval_poly(&jd.witness), jd.semisimple.matrix().clone());
        let m = jd.semisimple.matrix().charpoly();
        let sf = m.squarefree_part();
        prop_assert!(sf.eval_matrix(jd.semisimple.matrix()).is_zero());
    }

    #[test]
    fn regularity_matches_minimal_polynomial(n in 2usize..=4, blocks in prop::collection::vec((1usize..=4, -1i64..=1), 1..=4), seed in any::<u64>()) {
        let m = jordan_matrix(n, &blocks);
        let mut r = rng(seed);
        let h = sampling::random_unimodular(&mut r, n);
        let x = GElement::new(h.mul(&m).mul(&h.inverse().unwrap())).unwrap();
        let cp = x.charpoly();
        let min = minimal_polynomial(x.matrix());
        prop_assert_eq!(x.is_regular(), min.degree() == cp.degree(), "x = {}", x);
    }
}

/// Block diagonal Jordan matrix filled to size n, made traceless.
fn jordan_matrix(n: usize, blocks: &[(usize, i64)]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    let mut at = 0;
    let mut it = blocks.iter().cycle();
    while at < n {
        let &(size, ev) = it.next().unwrap();
        let size = size.min(n - at);
        for i in 0..size {
            m.set(at + i, at + i, Scalar::from(ev));
            if i + 1 < size {
                m.set(at + i, at + i + 1, Scalar::from(1));
            }
        }
        at += size;
    }
    let tr = m.trace() / Scalar::from(n as i64);
    m.sub(&ExactMatrix::identity(n).scale(&tr))
}

/// `charpoly / gcd` of the (n-1)-minors of `tI - x`.
fn minimal_polynomial(x: &ExactMatrix) -> UniPoly {
    let n = x.rows();
    let entry = |i: usize, j: usize| {
        let c = UniPoly::constant(-x.get(i, j).clone());
        if i == j {
            &c + &UniPoly::t()
        } else {
            c
        }
    };
    let full: Vec<Vec<UniPoly>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    let mut g = UniPoly::zero();
    for skip_r in 0..n {
        for skip_c in 0..n {
            let minor: Vec<Vec<UniPoly>> = (0..n)
                .filter(|&i| i != skip_r)
                .map(|i| (0..n).filter(|&j| j != skip_c).map(|j| full[i][j].clone()).collect())
                .collect();
            g = g.gcd(&det(&minor));
        }
    }
    let (q, r) = det(&full).div_rem(&g);
    assert!(r.is_zero());
    q
}

fn det(m: &[Vec<UniPoly>]) -> UniPoly {
    match m.len() {
        0 => UniPoly::constant(Scalar::from(1)),
        1 => m[0][0].clone(),
        k => {
            let mut acc = UniPoly::zero();
            for c in 0..k {
                let sub: Vec<Vec<UniPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &m[0][c] * &det(&sub);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}
