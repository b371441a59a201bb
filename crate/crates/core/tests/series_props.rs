mod common;

use common::{delta_oracle, mul_oracle, nonzero_series, ram, series};
use diffmod::rat::{int, rat};
use diffmod::{Puiseux, Valuation};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delta_matches_termwise_oracle(m in ram(), f in (1u32..=3).prop_flat_map(|m| series(m, -6, 6, 5))) {
        let _ = m;
        prop_assert_eq!(f.delta(), delta_oracle(&f));
    }

    #[test]
    fn leibniz(f in series(2, -6, 6, 4), g in series(2, -6, 6, 4)) {
        let lhs = f.mul(&g).unwrap().delta();
        let rhs = &f.delta().mul(&g).unwrap() + &f.mul(&g.delta()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_matches_schoolbook(f in series(3, -5, 5, 4), g in series(1, -3, 3, 4)) {
        prop_assert_eq!(f.mul(&g).unwrap(), mul_oracle(&f, &g));
    }

    #[test]
    fn valuation_is_additive(f in nonzero_series(2, -6, 6, 4), g in nonzero_series(2, -6, 6, 4)) {
        let (Valuation::Finite(a), Valuation::Finite(b)) = (f.valuation(), g.valuation()) else {
            panic!("exact nonzero series have finite valuation");
        };
        prop_assert_eq!(f.mul(&g).unwrap().valuation(), Valuation::Finite(a + b));
    }

    #[test]
    fn inverse_round_trip(f in nonzero_series(2, -4, 6, 4), steps in 1u32..12) {
        let inv = f.invert(steps).unwrap();
        let prod = f.mul(&inv).unwrap();
        match prod.precision() {
            // exact to `steps` grid steps past the valuation of 1
            Some(prec) => {
                prop_assert!(prec >= rat(steps as i64, 2));
                prop_assert_eq!(prod.truncate(&prec), Puiseux::one().truncate(&prec));
            }
            None => prop_assert_eq!(prod, Puiseux::one()),
        }
    }

    #[test]
    fn gauge_unit_removes_the_tail(f in series(1, 0, 5, 4), target in 1i64..8) {
        let u = f.gauge_solve(&int(target)).unwrap();
        prop_assert_eq!(u.constant_term().unwrap(), int(1));
        let log_der = u.delta().mul(&u.invert(target as u32 + 2).unwrap()).unwrap();
        let moved = (&f - &log_der).truncate(&int(target));
        let expected = Puiseux::constant(f.constant_term().unwrap()).truncate(&int(target));
        prop_assert_eq!(moved, expected);
    }

    #[test]
    fn ramification_lift_is_invisible(f in series(2, -6, 6, 4), k in 1u32..4) {
        let lifted = f.lift(2 * k);
        prop_assert_eq!(lifted.reduce_ram(), f.reduce_ram());
        prop_assert_eq!(lifted.valuation(), f.valuation());
        prop_assert_eq!(&lifted, &f);
    }
}

#[test]
fn inverse_is_exact_for_monomials() {
    let f = Puiseux::monomial(rat(2, 3), &rat(-1, 2));
    let inv = f.invert(5).unwrap();
    assert!(inv.is_exact());
    assert_eq!(f.mul(&inv).unwrap(), Puiseux::one());
}

#[test]
fn zero_has_no_inverse() {
    assert!(Puiseux::zero().invert(5).is_err());
}
