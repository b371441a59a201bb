#![allow(dead_code)]

use diffmod::rat::{int, rat};
use diffmod::{DiffOperator, Puiseux, Rat};
use proptest::prelude::*;

pub fn coeff() -> impl Strategy<Value = Rat> {
    prop_oneof![
        (-3i64..=3).prop_filter("nonzero", |n| *n != 0).prop_map(int),
        (-3i64..=3, 2i64..=4)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| rat(n, d)),
    ]
}

/// Exact series on the `(1/ram)Z` grid with indices in `[lo, hi]`.
pub fn series(ram: u32, lo: i64, hi: i64, max_terms: usize) -> impl Strategy<Value = Puiseux> {
    prop::collection::vec((lo..=hi, coeff()), 0..=max_terms)
        .prop_map(move |terms| Puiseux::from_terms(ram, terms, None))
}

pub fn nonzero_series(ram: u32, lo: i64, hi: i64, max_terms: usize) -> impl Strategy<Value = Puiseux> {
    series(ram, lo, hi, max_terms.max(1)).prop_filter("nonzero", |f| !f.is_zero())
}

pub fn ram() -> impl Strategy<Value = u32> {
    prop_oneof![3 => Just(1u32), 1 => Just(2u32), 1 => Just(3u32)]
}

pub fn monic_operator(degree: usize, ram: u32, lo: i64, hi: i64) -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec(series(ram, lo, hi, 2), degree)
        .prop_map(move |lower| DiffOperator::monic(lower).lift(ram))
}

pub fn operator(max_degree: usize, ram: u32, lo: i64, hi: i64) -> impl Strategy<Value = DiffOperator> {
    (
        prop::collection::vec(series(ram, lo, hi, 2), 0..=max_degree),
        nonzero_series(ram, lo, hi, 2),
    )
        .prop_map(move |(mut coeffs, lead)| {
            coeffs.push(lead);
            DiffOperator::with_ram(coeffs, ram)
        })
}

/// Independent evaluation of `delta` on an exact series: `q c S^q -> q c S^q`
/// term by term.
pub fn delta_oracle(f: &Puiseux) -> Puiseux {
    let terms: Vec<(Rat, Rat)> = f.terms().map(|(e, c)| (e.clone(), &e * c)).collect();
    Puiseux::from_rational_terms(&terms, None)
}

/// Schoolbook product of exact series, independent of the library's
/// multiplication.
pub fn mul_oracle(f: &Puiseux, g: &Puiseux) -> Puiseux {
    let mut terms = Vec::new();
    for (a, x) in f.terms() {
        for (b, y) in g.terms() {
            terms.push((&a + &b, x * y));
        }
    }
    Puiseux::from_rational_terms(&terms, None)
}
