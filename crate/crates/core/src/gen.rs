//! Seeded random instances for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diffop::DiffOperator;
use crate::rat::{self, Rat};
use crate::series::Puiseux;

/// Coefficients are drawn from this pool (numerator, denominator).
const POOL: &[(i64, i64)] = &[
    (1, 1),
    (-1, 1),
    (2, 1),
    (-2, 1),
    (3, 1),
    (1, 2),
    (-1, 2),
    (1, 3),
    (-2, 3),
    (5, 4),
];

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coeff(&mut self) -> Rat {
        let (p, q) = *POOL.choose(&mut self.rng).unwrap();
        rat::rat(p, q)
    }

    /// Exact series with up to `terms` terms at grid indices in `[lo, hi]`
    /// over `(1/ram)Z`; may be zero.
    pub fn series(&mut self, ram: u32, lo: i64, hi: i64, terms: usize) -> Puiseux {
        let count = self.rng.gen_range(0..=terms);
        let picks: Vec<(i64, Rat)> = (0..count)
            .map(|_| (self.rng.gen_range(lo..=hi), self.coeff()))
            .collect();
        Puiseux::from_terms(ram, picks, None)
    }

    /// Nonzero exact series.
    pub fn nonzero_series(&mut self, ram: u32, lo: i64, hi: i64, terms: usize) -> Puiseux {
        loop {
            let f = self.series(ram, lo, hi, terms.max(1));
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// Monic operator of the given degree with coefficients on grid
    /// indices `[lo, hi]`.
    pub fn monic_operator(&mut self, degree: usize, ram: u32, lo: i64, hi: i64) -> DiffOperator {
        let lower = (0..degree).map(|_| self.series(ram, lo, hi, 2)).collect();
        DiffOperator::monic(lower).lift(ram)
    }

    /// Operator, not necessarily monic, of degree at most `degree`.
    pub fn operator(&mut self, degree: usize, ram: u32, lo: i64, hi: i64) -> DiffOperator {
        let mut coeffs: Vec<Puiseux> = (0..degree).map(|_| self.series(ram, lo, hi, 2)).collect();
        coeffs.push(self.nonzero_series(ram, lo, hi, 2));
        DiffOperator::with_ram(coeffs, ram)
    }

    /// `D - f` with `f = c S^-k + a`, slope `k` (0 gives a regular factor).
    pub fn rank_one_factor(&mut self, k: i64) -> DiffOperator {
        let a = self.coeff();
        let f = if k == 0 {
            Puiseux::constant(a)
        } else {
            &Puiseux::monomial(self.coeff(), &rat::int(-k)) + &Puiseux::constant(a)
        };
        DiffOperator::monic(vec![-&f])
    }

    /// A product of rank-one factors with pairwise distinct slopes drawn
    /// from `0..=max_slope`, and the factors themselves in product order.
    pub fn rank_one_product(&mut self, count: usize, max_slope: i64) -> (DiffOperator, Vec<DiffOperator>) {
        let mut slopes: Vec<i64> = (0..=max_slope).collect();
        slopes.shuffle(&mut self.rng);
        let factors: Vec<DiffOperator> = slopes
            .into_iter()
            .take(count)
            .map(|k| self.rank_one_factor(k))
            .collect();
        let mut p = DiffOperator::one();
        for f in &factors {
            p = p.op_mul(f).expect("exact operators multiply");
        }
        (p, factors)
    }

    pub fn constant_matrix(&mut self, n: usize) -> Vec<Vec<Rat>> {
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if self.rng.gen_bool(0.5) {
                            Rat::from_integer(0.into())
                        } else {
                            self.coeff()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}
