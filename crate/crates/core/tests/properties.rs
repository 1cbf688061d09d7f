mod common;

use num_bigint::BigUint;
use proptest::prelude::*;

use padic_dynamics::ball::pairwise_disjoint;
use padic_dynamics::theorems::{classify_case, predict};
use padic_dynamics::{decompose, IntPolynomial, Level, Prime, Residue};

fn residue() -> impl Strategy<Value = (Residue, Residue)> {
    (0usize..4, 1u32..=30, 0u32..=30, any::<u64>(), 0u32..=30, any::<u64>()).prop_map(
        |(pi, n, s1, u1, s2, u2)| {
            let prime = Prime::new(common::PRIMES[pi]).unwrap();
            let level = Level::new(n).unwrap();
            let mk = |s: u32, u: u64| Residue::from_biguint(prime, level, prime.pow(s.min(n)) * BigUint::from(u));
            (mk(s1, u1), mk(s2, u2))
        },
    )
}

fn instance() -> impl Strategy<Value = (u32, u32, u32)> {
    (0usize..4, 2u32..=50, 1u32..=5).prop_map(|(pi, m, l)| (common::PRIMES[pi], m, l))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn valuation_laws((x, y) in residue()) {
        prop_assert_eq!(common::check_valuation_laws(&x, &y), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lift_laws((p, m, l) in instance()) {
        prop_assert_eq!(common::check_lift_laws(p, m, l), Ok(()));
    }

    #[test]
    fn engine_matches_oracle((p, m, l) in instance()) {
        prop_assert_eq!(common::check_engine_oracle(p, m, l), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn decompositions_partition((p, m, n) in (0usize..4, 2u32..=30, 2u32..=4).prop_map(|(i, m, n)| (common::PRIMES[i], m, n))) {
        let d = decompose(&IntPolynomial::monomial(m), Prime::new(p).unwrap(), n).unwrap();
        prop_assert!(d.partition_holds());
        let mut all = d.claimed_balls();
        all.extend(d.unresolved.iter().cloned());
        prop_assert!(pairwise_disjoint(&all));
    }

    #[test]
    fn theorems_match_decomposer((pi, m) in (0usize..3, 2u64..=60)) {
        let p = [2u32, 3, 5][pi];
        let case = classify_case(p, m).unwrap();
        prop_assume!(!case.conjectural);
        let n = if p == 2 { 8 } else { 4 };
        let predicted = predict(&case, n).unwrap();
        let computed = decompose(&case.polynomial(), case.prime, n).unwrap();
        prop_assert_eq!(predicted.differences(&computed), Vec::<String>::new());
    }
}
