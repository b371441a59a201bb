//! Exponent cosets `a + (1/m)Z` for algebraic `a`.
//!
//! A coset is stored as the monic irreducible polynomial of one of its
//! members, shifted so that the mean of its roots lies in `[0, 1/m)`. Two
//! shifts `p(x)` and `p(x + l)` of an irreducible polynomial with `l != 0`
//! cannot share a root, so the representative is unique and equality is
//! structural. Galois conjugate exponents share one coset object.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{factor_over_q, UniPoly};
use crate::rat::{self, Rat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentCoset {
    poly: UniPoly,
    lattice_den: u32,
}

impl ExponentCoset {
    /// The coset of the roots of `p`, which must be irreducible of degree
    /// at least one; `p` need not be monic or normalized.
    pub fn new(p: &UniPoly, lattice_den: u32) -> Self {
        assert!(lattice_den >= 1);
        assert!(p.degree().is_some_and(|d| d >= 1), "coset of a constant");
        ExponentCoset {
            poly: normalize(&p.monic(), lattice_den),
            lattice_den,
        }
    }

    /// The coset `a + (1/m)Z` of a rational `a`.
    pub fn of_rational(a: &Rat, lattice_den: u32) -> Self {
        Self::new(&UniPoly::from_roots(std::slice::from_ref(a)), lattice_den)
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn lattice_den(&self) -> u32 {
        self.lattice_den
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap()
    }

    /// Mean of the roots of the stored representative.
    pub fn root_mean(&self) -> Rat {
        root_mean(&self.poly)
    }

    /// The single rational member in `[0, 1/m)`, for degree-one cosets.
    pub fn rational_representative(&self) -> Option<Rat> {
        (self.degree() == 1).then(|| -self.poly.coeff(0))
    }

    /// Image in `a + (1/m')Z` for a multiple `m'` of the lattice
    /// denominator.
    pub fn widen_lattice(&self, m: u32) -> Result<Self> {
        if !m.is_multiple_of(self.lattice_den) {
            return Err(Error::precondition(format!(
                "lattice (1/{})Z does not contain (1/{})Z",
                m, self.lattice_den
            )));
        }
        Ok(Self::new(&self.poly, m))
    }

    /// `a + (1/m)Z` as the union of the `m` integer cosets
    /// `a + i/m + Z`, duplicates merged.
    pub fn expand_to_integer_cosets(&self) -> Vec<ExponentCoset> {
        let mut out: Vec<ExponentCoset> = (0..self.lattice_den)
            .map(|i| {
                let t = rat::rat(i as i64, self.lattice_den as i64);
                Self::new(&self.poly.shift(&-t), 1)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for ExponentCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lattice = if self.lattice_den == 1 {
            "Z".to_string()
        } else {
            format!("(1/{})Z", self.lattice_den)
        };
        match self.rational_representative() {
            Some(a) if a.is_zero() => write!(f, "{lattice}"),
            Some(a) => write!(f, "{} + {lattice}", rat::format(&a)),
            None => write!(f, "[{}] + {lattice}", self.poly),
        }
    }
}

fn root_mean(p: &UniPoly) -> Rat {
    let d = p.degree().unwrap();
    -p.coeff(d - 1) / rat::int(d as i64)
}

/// Shifts the monic `p` so the mean of its roots lies in `[0, 1/m)`.
pub fn normalize(p: &UniPoly, m: u32) -> UniPoly {
    let t = root_mean(p);
    let l = rat::floor_to_grid(&t, m);
    // Roots of p(x + l) are the roots of p minus l.
    p.shift(&l)
}

/// Exponent cosets of the roots of `p0` with the number of exponents
/// (counted with multiplicity) that each one collects.
pub fn cosets_with_multiplicity(p0: &UniPoly, m: u32) -> Vec<(ExponentCoset, usize)> {
    let mut out: Vec<(ExponentCoset, usize)> = Vec::new();
    for (f, mult) in factor_over_q(p0) {
        let c = ExponentCoset::new(&f, m);
        let count = mult * f.degree().unwrap();
        match out.iter_mut().find(|(d, _)| *d == c) {
            Some(entry) => entry.1 += count,
            None => out.push((c, count)),
        }
    }
    out.sort();
    out
}

/// Distinct exponent cosets of the roots of `p0`, sorted.
pub fn cosets_from_poly(p0: &UniPoly, m: u32) -> Vec<ExponentCoset> {
    cosets_with_multiplicity(p0, m)
        .into_iter()
        .map(|(c, _)| c)
        .collect()
}

/// Equality of cosets over the same lattice.
pub fn coset_eq(a: &ExponentCoset, b: &ExponentCoset) -> Result<bool> {
    if a.lattice_den != b.lattice_den {
        return Err(Error::precondition(format!(
            "cosets modulo (1/{})Z and (1/{})Z are not comparable",
            a.lattice_den, b.lattice_den
        )));
    }
    Ok(a == b)
}

/// The coset of `roots + t`.
pub fn translate_coset(c: &ExponentCoset, t: &Rat) -> ExponentCoset {
    ExponentCoset::new(&c.poly.shift(&-t), c.lattice_den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn roots(r: &[Rat]) -> UniPoly {
        UniPoly::from_roots(r)
    }

    #[test]
    fn cosets_of_rational_roots() {
        let p = roots(&[rat(1, 2), rat(1, 3)]);
        let cs = cosets_from_poly(&p, 1);
        assert_eq!(
            cs,
            vec![
                ExponentCoset::of_rational(&rat(1, 2), 1),
                ExponentCoset::of_rational(&rat(1, 3), 1)
            ]
        );
        let cs = cosets_with_multiplicity(&UniPoly::from_i64(&[0, -2, 1]), 1);
        assert_eq!(cs, vec![(ExponentCoset::of_rational(&int(0), 1), 2)]);
    }

    #[test]
    fn irrational_pair_is_normalized() {
        let cs = cosets_from_poly(&UniPoly::from_i64(&[-1, -2, 1]), 1);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].poly(), &UniPoly::from_i64(&[-2, 0, 1]));
        let other = ExponentCoset::new(&UniPoly::from_i64(&[7, -6, 1]), 1);
        assert!(coset_eq(&cs[0], &other).unwrap());
    }

    #[test]
    fn equality_and_lattices() {
        let half = ExponentCoset::of_rational(&rat(1, 2), 1);
        assert!(coset_eq(&half, &ExponentCoset::of_rational(&rat(3, 2), 1)).unwrap());
        assert!(!coset_eq(&half, &ExponentCoset::of_rational(&rat(1, 3), 1)).unwrap());
        assert!(coset_eq(&half, &ExponentCoset::of_rational(&rat(1, 2), 2)).is_err());
    }

    #[test]
    fn translation() {
        let half = ExponentCoset::of_rational(&rat(1, 2), 1);
        assert_eq!(translate_coset(&half, &int(1)), half);
        let third = ExponentCoset::of_rational(&rat(1, 3), 1);
        assert_eq!(
            translate_coset(&third, &rat(1, 2)),
            ExponentCoset::of_rational(&rat(5, 6), 1)
        );
        let zero2 = ExponentCoset::of_rational(&int(0), 2);
        assert_eq!(translate_coset(&zero2, &rat(1, 2)), zero2);
    }

    #[test]
    fn widening_and_expansion() {
        let third = ExponentCoset::of_rational(&rat(1, 3), 1);
        let w = third.widen_lattice(2).unwrap();
        assert_eq!(w.rational_representative(), Some(rat(1, 3)));
        let parts = w.expand_to_integer_cosets();
        assert_eq!(
            parts,
            vec![
                ExponentCoset::of_rational(&rat(5, 6), 1),
                ExponentCoset::of_rational(&rat(1, 3), 1)
            ]
        );
        assert!(third.widen_lattice(1).is_ok() && w.widen_lattice(3).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(ExponentCoset::of_rational(&int(0), 1).to_string(), "Z");
        assert_eq!(ExponentCoset::of_rational(&rat(1, 3), 2).to_string(), "1/3 + (1/2)Z");
        let sq = ExponentCoset::new(&UniPoly::from_i64(&[-2, 0, 1]), 1);
        assert_eq!(sq.to_string(), "[x^2 - 2] + Z");
    }
}
