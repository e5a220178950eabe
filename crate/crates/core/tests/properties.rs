mod common;

use apery_core::congruence::{
    auxiliary_lemma_check, compute_m, gcd_profile, m_closed_form, theorem1_check,
};
use apery_core::exact_math::{binom, factorize, gcd_all, radical, squarefree_part};
use apery_core::operators::{operator_for, transformed_operator_for};
use apery_core::sequences::{canonical_table, Normalization, SequenceId, TermTable};
use apery_core::transforms::{inverse_values, transform_values, verify_gf_identity};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use std::sync::OnceLock;

fn tables() -> &'static [TermTable] {
    static TABLES: OnceLock<Vec<TermTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        SequenceId::ALL
            .iter()
            .map(|id| canonical_table(id.spec(), 200, Normalization::Formula).unwrap())
            .collect()
    })
}

fn any_id() -> impl Strategy<Value = SequenceId> {
    proptest::sample::select(SequenceId::ALL.to_vec())
}

proptest! {
    #[test]
    fn upper_negation(m in -80i64..80, r in 0i64..30) {
        let sign = if r % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(binom(&BigInt::from(-m), r), sign * common::gbinom(m + r - 1, r, false));
    }

    #[test]
    fn binom_matches_falling_factorial(m in -200i64..200, r in -3i64..40) {
        prop_assert_eq!(binom(&BigInt::from(m), r), common::gbinom(m, r, false));
    }

    #[test]
    fn inversion_round_trip(id in any_id(), x in -20i64..20, n in 0usize..=100) {
        let u = &tables()[id as usize].terms()[..=n];
        let x = BigInt::from(x);
        let v = transform_values(u, &x);
        prop_assert_eq!(&v[0], &BigInt::one());
        if n >= 1 {
            prop_assert_eq!(&v[1], &(&u[1] - &x));
        }
        prop_assert_eq!(inverse_values(&v, &x), u.to_vec());
    }

    #[test]
    fn transform_matches_direct_sum(id in any_id(), x in -8i64..8, n in 0usize..40) {
        let u = &tables()[id as usize].terms()[..=n];
        prop_assert_eq!(transform_values(u, &BigInt::from(x)), common::transform(u, x, n));
    }

    #[test]
    fn squarefree_part_is_coprime_to_cofactor(n in 1i64..5_000_000) {
        let n = BigInt::from(n);
        let s = squarefree_part(&n).unwrap();
        let r = radical(&n).unwrap();
        prop_assert!(n.is_multiple_of(&s));
        prop_assert!(s.gcd(&(&n / &s)).is_one());
        prop_assert!(n.is_multiple_of(&r) && r.is_multiple_of(&s));
        prop_assert_eq!(factorize(&n).unwrap().product(), n);
    }

    #[test]
    fn auxiliary_lemma(coeffs in proptest::collection::vec(-20i64..=20, 1..=7), c in -50i64..=50) {
        let f: Vec<BigInt> = coeffs.iter().map(|&a| BigInt::from(a)).collect();
        prop_assert!(auxiliary_lemma_check(&BigInt::from(c), &f, -50..=50).is_pass());
    }

    #[test]
    fn lemma_equivalence(id in any_id(), alpha in -6i64..12, m in 2i64..=30) {
        let u = tables()[id as usize].terms();
        let m = BigInt::from(m);
        let alpha_b = BigInt::from(alpha);
        let v = transform_values(u, &alpha_b);
        let mut p = BigInt::one();
        let mut powers = true;
        for t in u {
            powers &= (t - &p).is_multiple_of(&m);
            p *= &alpha_b;
        }
        let zeros = v[1..].iter().all(|x| x.is_multiple_of(&m));
        prop_assert_eq!(powers, zeros);
    }

    #[test]
    fn m_alpha_closed_form_and_divisibility(id in any_id(), alpha in -25i64..=25) {
        let t = &tables()[id as usize];
        let alpha = BigInt::from(alpha);
        let m = compute_m(t, &alpha).unwrap();
        let m_u1 = compute_m(t, t.u1()).unwrap();
        prop_assert_eq!(&m, &m_closed_form(t, &alpha).unwrap());
        prop_assert!(m_u1.is_multiple_of(&m));
    }

    #[test]
    fn radical_congruence_random_alpha(id in any_id(), alpha in -30i64..=30) {
        let r = theorem1_check(&tables()[id as usize], &BigInt::from(alpha), 200).unwrap();
        prop_assert!(r.verdict.is_pass(), "{:?}", r);
    }

    #[test]
    fn gcd_profile_non_increasing(id in any_id(), alpha in -10i64..=10) {
        let v = transform_values(tables()[id as usize].terms(), &BigInt::from(alpha));
        let profile = gcd_profile(&v);
        for w in profile.windows(2) {
            prop_assert!(w[0].is_zero() || w[0].is_multiple_of(&w[1]));
        }
        let depth = id.spec().kind().certificate_depth();
        prop_assert_eq!(&profile[depth - 1], &gcd_all(&v[1..=depth]));
    }

    #[test]
    fn gf_identity(id in any_id(), alpha in -6i64..=12) {
        prop_assert!(verify_gf_identity(&tables()[id as usize], &BigInt::from(alpha), 48).unwrap());
    }

    #[test]
    fn x_zero_reduction(a in -30i64..30, b in -30i64..30, c in -300i64..300, d in -30i64..30) {
        use apery_core::sequences::Params;
        for p in [Params::Second { a, b, lambda: c }, Params::First { a, b, c, d }] {
            prop_assert_eq!(transformed_operator_for(&p, &BigInt::zero()), operator_for(&p));
        }
    }

    #[test]
    fn radical_domain(n in -1000i64..1000) {
        let r = radical(&BigInt::from(n));
        if n >= 1 {
            prop_assert!(r.unwrap().is_positive());
        } else {
            prop_assert!(r.is_err());
        }
    }
}
