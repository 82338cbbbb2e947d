//! Property tests for the invariants the constructions promise.

use lensform::forms::{CyclicLinkingForm, GramPairing, Parity};
use lensform::intmatrix::{self, Definiteness, IntMatrix};
use lensform::numtheory;
use lensform::presentations::{
    definite_presentation, even_presentation, plumbing_presentation, rank1_presentation,
    rank2_constructive, rank2_feasible, rank2_presentation,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn coprime_pair(max_p: i64) -> impl Strategy<Value = (i64, i64)> {
    (2..=max_p)
        .prop_flat_map(|p| (Just(p), 1..p))
        .prop_filter("coprime", |(p, q)| q.gcd(p) == 1)
}

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn symmetric(n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |xs| {
        let mut m = IntMatrix::zeros(n, n);
        let mut it = xs.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = b(it.next().unwrap());
                m[(i, j)] = x.clone();
                m[(j, i)] = x;
            }
        }
        m
    })
}

fn nonsingular(max_n: usize, bound: i64) -> impl Strategy<Value = GramPairing> {
    (1..=max_n)
        .prop_flat_map(move |n| symmetric(n, bound))
        .prop_filter_map("singular", |m| GramPairing::new(m).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank2_certificates_verify((p, q) in coprime_pair(400)) {
        let c = rank2_presentation(&b(p), &b(q)).unwrap();
        prop_assert!(c.verified);
        prop_assert_eq!(c.rank(), 2);
        prop_assert_eq!(c.gram.parity(), Parity::Odd);
        prop_assert_eq!(c.gram.determinant().abs(), b(p));
        // the negative odd entry is there exactly when the shape is feasible
        let has = c.gram.gram().diagonal().iter().any(|d| d.is_negative() && d.is_odd());
        if rank2_feasible(&b(p), &b(q)) {
            prop_assert!(has);
        }
    }

    #[test]
    fn constructive_certificates_verify((p, q) in coprime_pair(300)) {
        let c = rank2_constructive(&b(p), &b(q)).unwrap();
        prop_assert!(c.verified);
        let qp = c.gram.gram()[(1, 1)].abs();
        prop_assert!(numtheory::is_prime(&qp));
        prop_assert_eq!(qp.mod_floor(&b(4)), b(3));
    }

    #[test]
    fn even_certificates_are_even((p, q) in coprime_pair(300)) {
        let c = even_presentation(&b(p), &b(q)).unwrap();
        prop_assert!(c.verified);
        prop_assert_eq!(c.gram.parity(), Parity::Even);
        prop_assert!(c.rank() <= 4);
    }

    #[test]
    fn definite_certificates_are_positive((p, q) in coprime_pair(300)) {
        let c = definite_presentation(&b(p), &b(q)).unwrap();
        prop_assert!(c.verified);
        prop_assert_eq!(c.gram.definiteness(), Definiteness::PositiveDefinite);
        prop_assert_eq!(c.gram.parity(), Parity::Odd);
        prop_assert!(c.rank() <= 6);
    }

    #[test]
    fn rank1_iff_residue((p, q) in coprime_pair(2000)) {
        let found = rank1_presentation(&b(p), &b(q)).unwrap();
        let squares: std::collections::HashSet<i64> =
            (1..p).filter(|x| x.gcd(&p) == 1).map(|x| x * x % p).collect();
        prop_assert_eq!(found.is_some(), squares.contains(&q) || squares.contains(&(p - q)));
    }

    #[test]
    fn plumbing_is_tridiagonal_and_verifies((p, q) in coprime_pair(150)) {
        let c = plumbing_presentation(&b(p), &b(q)).unwrap();
        prop_assert!(c.verified);
        let g = c.gram.gram();
        for i in 0..c.rank() {
            prop_assert!(g[(i, i)].abs() >= b(2));
            for j in 0..c.rank() {
                if i.abs_diff(j) > 1 {
                    prop_assert!(g[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn two_linking_routes_agree(g in nonsingular(4, 6)) {
        prop_assert_eq!(
            g.presented_linking_form().pairing().to_vec(),
            g.linking_matrix_from_transform()
        );
    }

    #[test]
    fn order_of_discriminant_is_det(g in nonsingular(4, 6)) {
        prop_assert_eq!(g.presented_linking_form().order(), g.determinant().abs());
    }

    #[test]
    fn smith_form_is_a_valid_decomposition(m in (1usize..=4).prop_flat_map(|n| symmetric(n, 9))) {
        let snf = intmatrix::smith_normal_form(&m);
        prop_assert_eq!(&(&snf.u * &m) * &snf.v, snf.d.clone());
        prop_assert_eq!(&snf.u * &snf.u_inv, IntMatrix::identity(m.rows()));
        let d = snf.invariant_factors();
        prop_assert_eq!(d.iter().product::<BigInt>(), intmatrix::determinant(&m).unwrap().abs());
        for w in d.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn negative_odd_vector_contract(g in nonsingular(3, 6)) {
        prop_assume!(g.parity() == Parity::Odd);
        prop_assume!(g.definiteness() != Definiteness::PositiveDefinite);
        let v = g.negative_odd_vector().unwrap();
        let s = g.square(&v);
        prop_assert!(s.is_negative() && s.is_odd());
    }

    #[test]
    fn characteristic_vector_is_characteristic(g in nonsingular(4, 6)) {
        let v = g.characteristic_vector();
        prop_assert!(g.is_characteristic(&v));
    }

    #[test]
    fn blow_up_then_down_preserves_form(g in nonsingular(3, 5), plus in any::<bool>()) {
        let eps = if plus { 1 } else { -1 };
        let up = g.direct_sum(&GramPairing::from_i64(&[[eps]]).unwrap());
        let mut e = vec![BigInt::zero(); up.rank()];
        e[up.rank() - 1] = BigInt::one();
        let (down, _) = up.blow_down(&e).unwrap();
        prop_assert_eq!(down.determinant().abs(), g.determinant().abs());
        if let Some(c) = g.presented_linking_form().as_cyclic() {
            prop_assert!(down.presents(&c));
        }
    }

    #[test]
    fn equivalence_under_unit_squares((p, q) in coprime_pair(500), u in 1i64..500) {
        prop_assume!(u.gcd(&p) == 1);
        let a = CyclicLinkingForm::new(b(p), b(q)).unwrap();
        let c = CyclicLinkingForm::new(b(p), b(u * u * q)).unwrap();
        prop_assert!(a.is_equivalent(&c));
        prop_assert_eq!(a.canonical_q(), c.canonical_q());
    }

    #[test]
    fn three_squares_sum(n in 0u64..10_000_000) {
        let big = BigInt::from(n);
        match numtheory::three_squares(&big) {
            Ok((x, y, z)) => prop_assert_eq!(&x * &x + &y * &y + &z * &z, big),
            Err(_) => prop_assert!(numtheory::is_three_square_excluded(&big)),
        }
    }

    #[test]
    fn sqrt_mod_squares_back(p in 2i64..5000, x in 1i64..5000) {
        prop_assume!(x.gcd(&p) == 1);
        let q = b(x * x % p);
        let r = numtheory::sqrt_mod(&q, &b(p)).unwrap();
        prop_assert_eq!((&r * &r).mod_floor(&b(p)), q);
        prop_assert!(r <= b(x % p));
    }
}
