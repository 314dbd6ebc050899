use mapspace_core::fixtures::cp_lie;
use mapspace_core::random::{random_minimal_model, RandomModelSpec};
use mapspace_core::{fmt_rational, frac, monomials_of_degree, parse_rational, q, GenId, LieElement, Polynomial};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DEGS: [i32; 5] = [1, 2, 3, 3, 4];

/// A homogeneous polynomial of degree `n` over generators with degrees `degs`.
fn poly(degs: &[i32], n: i32, coeffs: &[i64]) -> Polynomial {
    let ids: Vec<GenId> = (0..degs.len() as GenId).collect();
    let mut p = Polynomial::zero();
    for (m, c) in monomials_of_degree(&ids, degs, n).into_iter().zip(coeffs.iter().cycle()) {
        p.add_term(m, q(*c));
    }
    p
}

fn sign(e: i32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative_and_graded_commutative(
        (a, b, c) in (1i32..6, 1i32..6, 1i32..6),
        k in proptest::collection::vec(-3i64..4, 1..8),
    ) {
        let (x, y, z) = (poly(&DEGS, a, &k), poly(&DEGS, b, &k[1..]), poly(&DEGS, c, &k));
        prop_assert_eq!(x.mul(&y, &DEGS).mul(&z, &DEGS), x.mul(&y.mul(&z, &DEGS), &DEGS));
        prop_assert_eq!(x.mul(&y, &DEGS), y.mul(&x, &DEGS).scale(&q(sign(a * b))));
    }

    #[test]
    fn random_differentials_are_derivations(seed in any::<u64>(), (a, b) in (2i32..9, 2i32..9), k in proptest::collection::vec(-2i64..3, 1..6)) {
        let m = random_minimal_model(&mut ChaCha8Rng::seed_from_u64(seed), RandomModelSpec::default());
        let alg = m.cdga();
        let (x, y) = (poly(alg.degrees(), a, &k), poly(alg.degrees(), b, &k));
        let lhs = alg.d(&alg.mul(&x, &y));
        let rhs = alg.mul(&alg.d(&x), &y).add(&alg.mul(&x, &alg.d(&y)).scale(&q(sign(a))));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(alg.d(&alg.d(&x)).is_zero());
    }

    #[test]
    fn lie_brackets_are_antisymmetric_and_satisfy_jacobi(
        (a, b, c) in (1i32..5, 1i32..5, 1i32..4),
        k in proptest::collection::vec(-3i64..4, 1..6),
    ) {
        let x = cp_lie(4, &q(1)).with_cap(12).unwrap();
        let lie = x.lie();
        let el = |n: i32| {
            let mut e = LieElement::zero(n);
            for i in 0..lie.dim(n) {
                e = e.add_scaled(&q(k[i % k.len()]), &LieElement::basis(n, i));
            }
            e
        };
        let (u, v, w) = (el(a), el(b), el(c));
        let br = |s: &LieElement, t: &LieElement| lie.bracket(s, t);
        prop_assert_eq!(br(&u, &v), br(&v, &u).scale(&q(-sign(a * b))));
        let jac = br(&u, &br(&v, &w))
            .scale(&q(sign(a * c)))
            .add(&br(&v, &br(&w, &u)).scale(&q(sign(b * a))))
            .add(&br(&w, &br(&u, &v)).scale(&q(sign(c * b))));
        prop_assert!(jac.is_zero());
        let lhs = x.d(&br(&u, &v));
        let rhs = br(&x.d(&u), &v).add(&br(&u, &x.d(&v)).scale(&q(sign(a))));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = frac(n, d);
        prop_assert_eq!(parse_rational(&fmt_rational(&r)), Some(r));
    }
}
