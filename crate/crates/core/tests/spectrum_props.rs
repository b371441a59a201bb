mod common;

use common::{coeff, series};
use diffmod::diffop::block_diag;
use diffmod::exponents::{coset_eq, cosets_from_poly, normalize, translate_coset, ExponentCoset};
use diffmod::gen::Gen;
use diffmod::rat::{self, int, rat};
use diffmod::ramify::{check_eq22, Module};
use diffmod::spectrum::{
    spectrum_of_matrix, spectrum_of_operator, spectrum_rank1, translate_spectrum, union,
};
use diffmod::{DiffOperator, Puiseux, Rat, Spectrum, UniPoly, Valuation};
use proptest::prelude::*;

/// Spectrum of `D - f` read off by hand: a Gauss point at `-v(f)` when the
/// valuation is negative, else the coset of the constant term.
fn rank1_oracle(f: &Puiseux) -> Spectrum {
    match f.valuation() {
        Valuation::Finite(v) if v < int(0) => Spectrum::new(1, [-v], []).unwrap(),
        _ => Spectrum::new(
            1,
            [int(0)],
            [ExponentCoset::of_rational(&f.constant_term().unwrap(), 1)],
        )
        .unwrap(),
    }
}

fn coupling_holds(s: &Spectrum) -> bool {
    s.cosets().is_empty() != s.gammas().contains(&int(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_one_oracle(f in series(1, -3, 3, 3)) {
        let sp = spectrum_of_operator(&DiffOperator::monic(vec![-&f])).unwrap();
        prop_assert_eq!(&sp, &rank1_oracle(&f));
        prop_assert_eq!(&sp, &spectrum_rank1(&f).unwrap());
        prop_assert!(coupling_holds(&sp));
    }

    #[test]
    fn factor_union_consistency(seed in any::<u64>(), count in 2usize..=3) {
        let mut g = Gen::new(seed);
        let (p, factors) = g.rank_one_product(count, 3);
        let mut expected = spectrum_of_operator(&factors[0]).unwrap();
        for f in &factors[1..] {
            expected = union(&expected, &spectrum_of_operator(f).unwrap()).unwrap();
        }
        let sp = spectrum_of_operator(&p).unwrap();
        prop_assert_eq!(&sp, &expected, "P = {}", p);
        prop_assert!(coupling_holds(&sp));
    }

    #[test]
    fn direct_sum(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (d1, d2) = (g.range(1, 2) as usize, g.range(1, 2) as usize);
        let p1 = g.monic_operator(d1, 1, -2, 1);
        let p2 = g.monic_operator(d2, 1, -2, 1);
        let m = block_diag(&[p1.companion().unwrap(), p2.companion().unwrap()]).unwrap();
        let lhs = spectrum_of_matrix(&m, 40).unwrap();
        let rhs = union(&spectrum_of_operator(&p1).unwrap(), &spectrum_of_operator(&p2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs, "P1 = {}, P2 = {}", p1, p2);
    }

    #[test]
    fn gauge_by_powers_of_s(seed in any::<u64>(), exps in prop::collection::vec(-2i64..=2, 3)) {
        let mut g = Gen::new(seed);
        let deg = g.range(1, 3) as usize;
        let p = g.monic_operator(deg, 1, -2, 1);
        let exps: Vec<Rat> = exps[..deg].iter().map(|&e| int(e)).collect();
        let conj = p.companion().unwrap().gauge_diag(&exps).unwrap();
        prop_assert_eq!(spectrum_of_matrix(&conj, 40).unwrap(), spectrum_of_operator(&p).unwrap());
    }

    #[test]
    fn gauge_by_units(f in series(1, -2, 2, 3), tail in series(1, 1, 4, 3)) {
        let unit = &Puiseux::one() + &tail;
        let log_der = unit.delta().mul(&unit.invert(30).unwrap()).unwrap();
        let moved = &f + &log_der;
        prop_assert_eq!(spectrum_rank1(&moved).unwrap(), spectrum_rank1(&f).unwrap());
    }

    #[test]
    fn normalization_is_idempotent(a in coeff(), b in coeff(), m in 1u32..=3) {
        let p = UniPoly::new(vec![a, b, int(1)]);
        let n = normalize(&p, m);
        prop_assert_eq!(normalize(&n, m), n.clone());
        for c in cosets_from_poly(&p, m) {
            prop_assert_eq!(ExponentCoset::new(c.poly(), m), c.clone());
            let mean = c.root_mean();
            prop_assert!(mean >= int(0) && mean < rat(1, m as i64));
        }
    }

    #[test]
    fn shift_resultant_agreement(a in coeff(), b in coeff(), c in coeff(), k in -3i64..=3) {
        let p = UniPoly::new(vec![a, b.clone(), int(1)]);
        let shifted = p.shift(&int(k));
        let q = UniPoly::new(vec![c, b, int(1)]);
        for other in [shifted, q] {
            for x in cosets_from_poly(&p, 1) {
                for y in cosets_from_poly(&other, 1) {
                    let bound: i64 = (x.poly().cauchy_bound() + y.poly().cauchy_bound())
                        .ceil()
                        .to_integer()
                        .try_into()
                        .unwrap();
                    let oracle = x.degree() == y.degree()
                        && (-bound..=bound)
                            .any(|n| x.poly().resultant(&y.poly().shift(&int(n))) == int(0));
                    prop_assert_eq!(coset_eq(&x, &y).unwrap(), oracle, "{} vs {}", x, y);
                }
            }
        }
    }

    #[test]
    fn translations_compose(a in coeff(), s in coeff(), t in coeff(), m in 1u32..=3) {
        let c = ExponentCoset::of_rational(&a, m);
        let st = &s + &t;
        prop_assert_eq!(translate_coset(&translate_coset(&c, &s), &t), translate_coset(&c, &st));
        prop_assert_eq!(translate_coset(&c, &rat(5, m as i64)), c.clone());
        prop_assert_eq!(translate_coset(&c, &int(0)), c);
    }

    #[test]
    fn spectrum_translation_keeps_gauss_points(seed in any::<u64>(), t in coeff()) {
        let mut g = Gen::new(seed);
        let (p, _) = g.rank_one_product(2, 2);
        let sp = spectrum_of_operator(&p).unwrap();
        let moved = translate_spectrum(&sp, &t);
        prop_assert_eq!(moved.gauss(), sp.gauss());
        prop_assert_eq!(translate_spectrum(&moved, &-&t), sp);
    }

    #[test]
    fn ramification_translates(seed in any::<u64>(), m in 2u32..=3) {
        let mut g = Gen::new(seed);
        let deg = g.range(1, 2) as usize;
        let p = g.monic_operator(deg, 1, -2, 1);
        prop_assert!(check_eq22(&Module::Operator(p.clone()), m, 40).unwrap(), "P = {}", p);
    }
}

#[test]
fn union_and_equality_are_set_semantics() {
    let a = Spectrum::new(1, [int(1)], []).unwrap();
    let b = Spectrum::new(1, [int(0)], [ExponentCoset::of_rational(&int(2), 1)]).unwrap();
    let ab = union(&a, &b).unwrap();
    assert_eq!(ab, union(&b, &a).unwrap());
    assert_eq!(union(&ab, &ab).unwrap(), ab);
    assert_eq!(ab.gammas(), vec![int(0), int(1)]);
    let c = Spectrum::new(2, [int(1)], []).unwrap();
    assert!(union(&a, &c).is_err());
    assert_eq!(rat::format(&rat(-3, 6)), "-1/2");
}
