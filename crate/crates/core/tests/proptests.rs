//! Property tests for the structural laws that hold on arbitrary inputs:
//! coefficient ring axioms, the involution, star and normal-form laws on
//! random catalog elements, and parser round trips.

use nqs_core::coeff::{rat, LaurentScalar};
use nqs_core::ncalg::catalog::{catalog, PRESENTATION_NAMES};
use nqs_core::parse::{eval, parse, print_element};
use proptest::prelude::*;

fn arb_scalar() -> impl Strategy<Value = LaurentScalar> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..4).prop_map(|terms| {
        let mut s = LaurentScalar::zero();
        for (e, c) in terms {
            s = &s + &LaurentScalar::monomial(e, rat(c, 1));
        }
        s
    })
}

proptest! {
    #[test]
    fn scalar_ring_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentScalar::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn involution_is_multiplicative_and_involutive(a in arb_scalar(), b in arb_scalar()) {
        prop_assert_eq!((&a * &b).involute(), &a.involute() * &b.involute());
        prop_assert_eq!(a.involute().involute(), a.clone());
    }

    #[test]
    fn evaluation_at_one_is_a_ring_map(a in arb_scalar(), b in arb_scalar()) {
        prop_assert_eq!((&a * &b).eval_q1(), a.eval_q1() * b.eval_q1());
        prop_assert_eq!((&a + &b).eval_q1(), a.eval_q1() + b.eval_q1());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_multiplicative(
        idx in 0usize..PRESENTATION_NAMES.len(),
        seed in 0u64..1u64 << 32,
    ) {
        let name = PRESENTATION_NAMES[idx];
        let p = catalog().presentation(name).unwrap();
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let raw = p.random_element(&mut rng, 5, 3);
        let y_raw = p.random_element(&mut rng, 3, 2);
        let nf = p.normal_form(&raw).unwrap();
        prop_assert_eq!(&p.normal_form(&nf).unwrap(), &nf);
        let y = p.normal_form(&y_raw).unwrap();
        prop_assert_eq!(p.mul(&raw, &y_raw).unwrap(), p.mul(&nf, &y).unwrap());
    }

    #[test]
    fn star_is_involutive_where_total(
        idx in 0usize..PRESENTATION_NAMES.len(),
        seed in 0u64..1u64 << 32,
    ) {
        let name = PRESENTATION_NAMES[idx];
        let p = catalog().presentation(name).unwrap();
        if p.gens().iter().any(|g| g.star.is_none()) {
            return Ok(()); // no total star on this presentation
        }
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = p.normal_form(&p.random_element(&mut rng, 4, 3)).unwrap();
        let y = p.normal_form(&p.random_element(&mut rng, 3, 2)).unwrap();
        prop_assert_eq!(&p.star(&p.star(&x).unwrap()).unwrap(), &x);
        // anti-multiplicativity
        let lhs = p.star(&p.mul(&x, &y).unwrap()).unwrap();
        let rhs = p.mul(&p.star(&y).unwrap(), &p.star(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_then_parse_is_identity(
        idx in 0usize..PRESENTATION_NAMES.len(),
        seed in 0u64..1u64 << 32,
    ) {
        let name = PRESENTATION_NAMES[idx];
        let p = catalog().presentation(name).unwrap();
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = p.normal_form(&p.random_element(&mut rng, 4, 3)).unwrap();
        let s = print_element(p, &x);
        let back = eval(&parse(&s).unwrap(), p, None).unwrap();
        prop_assert_eq!(back, x);
    }
}
