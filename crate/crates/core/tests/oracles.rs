//! Independent oracles against the library's algebra: cofactor determinants,
//! brute-force minimal polynomials, fixed-point iteration and field laws.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weakper_core::companion::{companion_from_coeffs, decompose_wp2, enumerate_companions};
use weakper_core::mat::eval_at_matrix;
use weakper_core::{build_field, embed, sr_set, Element, Embedding, FieldSpec, Mat, Poly, Potency, DEFAULT_ENUM_CAP};

/// Determinant of a matrix of polynomials by Laplace expansion on row 0.
fn cofactor_det(rows: &[Vec<Poly>]) -> Poly {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let field = rows[0][0].field().clone();
    let mut acc = Poly::zero(&field);
    for j in 0..n {
        let minor: Vec<Vec<Poly>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = rows[0][j].mul(&cofactor_det(&minor)).unwrap();
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) }.unwrap();
    }
    acc
}

/// `det(XI - M)` by cofactor expansion.
fn char_poly_oracle(m: &Mat) -> Poly {
    let f = m.field();
    let n = m.n();
    let rows: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(f, f.neg(m.get(i, j)));
                    if i == j {
                        c.add(&Poly::x(f)).unwrap()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    cofactor_det(&rows)
}

/// Lowest-degree monic polynomial annihilating `m`, by enumeration.
fn min_poly_oracle(m: &Mat) -> Poly {
    let f = m.field();
    (1..=m.n())
        .find_map(|d| {
            weakper_core::poly::monic_polys(f, d).find(|g| eval_at_matrix(g, m).unwrap().is_zero())
        })
        .unwrap()
}

fn random_mat(rng: &mut ChaCha8Rng, f: &FieldSpec, n: usize) -> Mat {
    let e = (0..n * n).map(|_| Element(rng.gen_range(0..f.order()))).collect();
    Mat::new(f, n, e).unwrap()
}

#[test]
fn char_poly_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, l, n) in [(2, 1, 3), (3, 1, 3), (2, 2, 3), (5, 1, 4), (2, 3, 4), (7, 1, 2)] {
        let f = build_field(p, l).unwrap();
        for _ in 0..60 {
            let m = random_mat(&mut rng, &f, n);
            assert_eq!(m.char_poly(), char_poly_oracle(&m), "{m:?}");
            assert_eq!(m.determinant(), {
                let chi = char_poly_oracle(&m);
                let c0 = chi.coeff(0);
                if n % 2 == 0 { c0 } else { f.neg(c0) }
            });
        }
    }
}

#[test]
fn min_poly_is_the_least_annihilator() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, l, n) in [(2, 1, 3), (3, 1, 3), (2, 2, 2), (2, 1, 4)] {
        let f = build_field(p, l).unwrap();
        for _ in 0..40 {
            let m = random_mat(&mut rng, &f, n);
            assert_eq!(m.min_poly(), min_poly_oracle(&m), "{m:?}");
        }
    }
    let f = build_field(3, 1).unwrap();
    assert_eq!(Mat::identity(&f, 3).min_poly().degree(), Some(1));
    assert_eq!(Mat::zero(&f, 3).min_poly(), Poly::x(&f));
}

#[test]
fn potent_matrices_return_to_themselves() {
    // Direct search for the least k with M^(k+1) = M, bounded by |GL_3(2)| = 168.
    let f = build_field(2, 1).unwrap();
    for idx in 0u32..512 {
        let e = (0..9).map(|k| Element((idx >> k) & 1)).collect();
        let m = Mat::new(&f, 3, e).unwrap();
        let mut x = m.clone();
        let mut found = None;
        for k in 1..=168 {
            x = x.mul(&m).unwrap();
            if x == m {
                found = Some(k);
                break;
            }
        }
        assert_eq!(m.is_potent(), found.is_some(), "{m:?}");
        assert_eq!(m.potency_exponent().unwrap(), found.map(|k| k + 1), "{m:?}");
    }
}

#[test]
fn decomposable_trace_lies_in_sr() {
    for (p, l) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = build_field(p, l).unwrap();
        for n in 1..=3 {
            let sr = sr_set(n, &f, n).unwrap();
            for potency in Potency::ALL {
                for c in enumerate_companions(n, &f, DEFAULT_ENUM_CAP).unwrap() {
                    if let Some(w) = decompose_wp2(&c, potency, DEFAULT_ENUM_CAP).unwrap() {
                        assert!(sr.contains(w.potent.trace()));
                        assert_eq!(w.potent.trace(), c.trace());
                    }
                }
            }
        }
    }
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![(2u64, 1u32), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1), (7, 1), (2, 4)])
        .prop_map(|(p, l)| build_field(p, l).unwrap())
}

fn with_elements(k: usize) -> impl Strategy<Value = (FieldSpec, Vec<Element>)> {
    field_strategy().prop_flat_map(move |f| {
        let q = f.order();
        (Just(f), prop::collection::vec((0..q).prop_map(Element), k))
    })
}

proptest! {
    #[test]
    fn field_axioms((f, v) in with_elements(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Element(0));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Element(1));
        }
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
    }

    #[test]
    fn embeddings_are_homomorphisms(a in 0u32..4, b in 0u32..4, sup in prop::sample::select(vec![4u32, 6])) {
        let sub = build_field(2, 2).unwrap();
        let big = build_field(2, sup).unwrap();
        let e = Embedding::new(&sub, &big).unwrap();
        let (x, y) = (Element(a), Element(b));
        prop_assert_eq!(e.apply(sub.add(x, y)).unwrap(), big.add(e.apply(x).unwrap(), e.apply(y).unwrap()));
        prop_assert_eq!(e.apply(sub.mul(x, y)).unwrap(), big.mul(e.apply(x).unwrap(), e.apply(y).unwrap()));
        prop_assert_eq!(e.preimage(e.apply(x).unwrap()), Some(x));
        prop_assert_eq!(embed(x, &sub, &big).unwrap(), e.apply(x).unwrap());
    }

    #[test]
    fn division_with_remainder((f, v) in with_elements(9)) {
        let a = Poly::new(&f, v[..5].to_vec()).unwrap();
        let mut gc = v[5..].to_vec();
        gc.push(Element(1));
        let g = Poly::new(&f, gc).unwrap();
        let (quo, rem) = a.divmod(&g).unwrap();
        prop_assert_eq!(quo.mul(&g).unwrap().add(&rem).unwrap(), a);
        prop_assert!(rem.degree().is_none_or(|d| d < g.degree().unwrap()));
    }

    #[test]
    fn wp2_witnesses_verify((f, v) in with_elements(3), potency in prop::sample::select(Potency::ALL.to_vec())) {
        let c = companion_from_coeffs(&f, &v).unwrap();
        let w = decompose_wp2(&c, potency, DEFAULT_ENUM_CAP).unwrap();
        let w = w.expect("every companion decomposes");
        prop_assert!(w.verify().is_ok());
        prop_assert_eq!(w.potent.add(&w.nilpotent).unwrap(), c.matrix().clone());
        prop_assert!(w.nilpotent.mul(&w.nilpotent).unwrap().is_zero());
        prop_assert!(potency.holds(&w.potent));
    }

    #[test]
    fn cayley_hamilton((f, v) in with_elements(16)) {
        let m = Mat::new(&f, 4, v).unwrap();
        let chi = m.char_poly();
        let mu = m.min_poly();
        prop_assert!(eval_at_matrix(&chi, &m).unwrap().is_zero());
        prop_assert!(mu.divides(&chi).unwrap());
    }
}
