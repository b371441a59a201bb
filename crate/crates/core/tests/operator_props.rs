mod common;

use common::{monic_operator, operator, series};
use diffmod::{DiffOperator, Puiseux};
use proptest::prelude::*;

/// `D^i f` expanded by the binomial rule `D^i f = sum C(i,k) delta^k(f) D^(i-k)`,
/// independent of the library's iterated commutation.
fn d_pow_times(i: usize, f: &Puiseux) -> DiffOperator {
    let mut coeffs = vec![Puiseux::zero(); i + 1];
    let mut dk = f.clone();
    let mut binom = 1i64;
    for k in 0..=i {
        coeffs[i - k] = &coeffs[i - k] + &dk.scale(&diffmod::rat::int(binom));
        dk = dk.delta();
        binom = binom * (i - k) as i64 / (k + 1) as i64;
    }
    DiffOperator::new(coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn commutation_matches_binomial_expansion(i in 0usize..5, f in series(2, -4, 4, 3)) {
        let lhs = DiffOperator::d_pow(i).op_mul(&DiffOperator::from_series(f.clone())).unwrap();
        prop_assert_eq!(lhs, d_pow_times(i, &f));
    }

    #[test]
    fn associativity(p in operator(2, 2, -3, 3), q in operator(2, 2, -3, 3), r in operator(1, 2, -3, 3)) {
        let lhs = p.op_mul(&q).unwrap().op_mul(&r).unwrap();
        let rhs = p.op_mul(&q.op_mul(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_compatible(p in operator(2, 2, -3, 3), q in operator(2, 2, -3, 3), f in series(2, -3, 3, 3)) {
        let lhs = p.op_mul(&q).unwrap().apply(&f).unwrap();
        let rhs = p.apply(&q.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degrees_add(p in operator(3, 1, -3, 3), q in operator(3, 1, -3, 3)) {
        let pq = p.op_mul(&q).unwrap();
        prop_assert_eq!(pq.degree(), p.degree() + q.degree());
        prop_assert_eq!(
            pq.leading().unwrap(),
            &p.leading().unwrap().mul(q.leading().unwrap()).unwrap()
        );
    }

    #[test]
    fn companion_round_trip(p in (1usize..=4).prop_flat_map(|n| monic_operator(n, 1, -2, 2))) {
        let g = p.companion().unwrap();
        let cv = diffmod::cyclic_vector(&g, 30).unwrap();
        prop_assert_eq!(cv.attempts, 1);
        prop_assert_eq!(cv.operator, p);
    }

    #[test]
    fn ring_laws(p in operator(2, 1, -2, 2), q in operator(2, 1, -2, 2)) {
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert_eq!(DiffOperator::one().op_mul(&p).unwrap(), p.clone());
        prop_assert_eq!(p.op_mul(&DiffOperator::one()).unwrap(), p.clone());
        prop_assert!(p.op_mul(&DiffOperator::zero()).unwrap().is_zero());
    }
}
