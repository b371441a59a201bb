//! Dense univariate polynomials with rational coefficients.

mod factorize;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{self, Rat};

pub use factorize::{factor_over_q, factor_squarefree_integer};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UniPoly {
    /// Ascending; the last entry is nonzero.
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|c| rat::int(*c)).collect())
    }

    /// `prod (x - r)`.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Self::new(vec![-r.clone(), Rat::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat::int(i as i64))
                .collect(),
        )
    }

    /// `p(x + t)`.
    pub fn shift(&self, t: &Rat) -> Self {
        let lin = Self::new(vec![t.clone(), Rat::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &lin) + &Self::constant(c.clone())
        })
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = divisor.lead().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of `self` modulo `modulus`, if they are coprime.
    pub fn inverse_mod(&self, modulus: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (modulus.clone(), self.divrem(modulus).1);
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(s0.scale(&r0.lead().recip()).divrem(modulus).1)
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Yun's algorithm: `self = c * prod_i a_i^i` with squarefree, pairwise
    /// coprime monic `a_i`. Returns the nonconstant `(a_i, i)`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        let mut a = f.gcd(&d);
        let mut b = f.divrem(&a).0;
        let mut c = d.divrem(&a).0;
        let mut i = 1;
        loop {
            let bd = b.derivative();
            let dd = &c - &bd;
            if b.degree() == Some(0) {
                break;
            }
            a = b.gcd(&dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.monic(), i));
            }
            b = b.divrem(&a).0;
            c = dd.divrem(&a).0;
            i += 1;
        }
        out
    }

    /// Resultant over the rationals via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Self) -> Rat {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return Rat::zero();
        };
        if n == 0 {
            return rat::pow_i32(&other.lead(), m as i32);
        }
        if m < n {
            let sign = if (m * n) % 2 == 1 { -Rat::one() } else { Rat::one() };
            return sign * other.resultant(self);
        }
        let r = self.divrem(other).1;
        let Some(k) = r.degree() else {
            return Rat::zero();
        };
        // res(f, g) = (-1)^{mn} lc(g)^{m-k} res(g, r)
        let sign = if (m * n) % 2 == 1 { -Rat::one() } else { Rat::one() };
        sign * rat::pow_i32(&other.lead(), (m - k) as i32) * other.resultant(&r)
    }

    /// Cauchy bound: every complex root has modulus at most this.
    pub fn cauchy_bound(&self) -> Rat {
        let lead = self.lead().abs();
        let n = self.coeffs.len().saturating_sub(1);
        let max = self.coeffs[..n]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rat::zero);
        Rat::one() + max
    }

    /// Integer multiple with coprime coefficients and positive leading
    /// coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.lead().is_negative() { -1 } else { 1 };
        ints.into_iter()
            .map(|c| c / &g * BigInt::from(sign))
            .collect()
    }

    pub fn from_integer_coeffs(coeffs: &[BigInt]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for UniPoly {
    /// Decreasing powers of `x`, e.g. `x^2 - 5/6*x + 1/6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let pieces = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = crate::series::format_power("x", &rat::int(i as i64));
                if i == 0 {
                    rat::format(c)
                } else if c.is_one() {
                    mono
                } else if *c == -Rat::one() {
                    format!("-{mono}")
                } else {
                    format!("{}*{mono}", rat::format(c))
                }
            });
        write!(f, "{}", crate::series::join_signed(pieces))
    }
}

impl std::str::FromStr for UniPoly {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::cli::parse::parse_polynomial(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn arithmetic_and_division() {
        let p = UniPoly::from_i64(&[-1, 0, 1]);
        let q = UniPoly::from_i64(&[1, 1]);
        let (quot, rem) = p.divrem(&q);
        assert_eq!(quot, UniPoly::from_i64(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(p.gcd(&UniPoly::from_i64(&[-1, 1])), UniPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn shift_moves_roots() {
        // (x - 3)^2 - 2 shifted by 3 becomes x^2 - 2
        let p = UniPoly::from_i64(&[7, -6, 1]);
        assert_eq!(p.shift(&int(3)), UniPoly::from_i64(&[-2, 0, 1]));
    }

    #[test]
    fn resultant_detects_common_roots() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        let q = UniPoly::from_i64(&[7, -6, 1]);
        assert!(!p.resultant(&q).is_zero());
        assert!(p.resultant(&q.shift(&int(3))).is_zero());
        // res(x - a, x - b) = a - b... up to sign convention: b - a
        let r = UniPoly::from_i64(&[-2, 1]).resultant(&UniPoly::from_i64(&[-5, 1]));
        assert_eq!(r, int(-3));
    }

    #[test]
    fn inverse_modulo() {
        let m = UniPoly::from_i64(&[-2, 0, 1]);
        let a = UniPoly::from_i64(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!((&a * &inv).divrem(&m).1, UniPoly::one());
        assert!(UniPoly::from_i64(&[-1, 1])
            .inverse_mod(&UniPoly::from_i64(&[-1, 0, 1]))
            .is_none());
    }

    #[test]
    fn squarefree() {
        let p = &UniPoly::from_roots(&[int(1), int(1), int(2)]) * &UniPoly::from_i64(&[-2, 0, 1]);
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[1], (UniPoly::from_roots(&[int(1)]), 2));
        assert_eq!(
            p.squarefree_part(),
            &UniPoly::from_roots(&[int(1), int(2)]) * &UniPoly::from_i64(&[-2, 0, 1])
        );
    }

    #[test]
    fn display_order() {
        let p = UniPoly::from_roots(&[rat(1, 2), rat(1, 3)]);
        assert_eq!(p.to_string(), "x^2 - 5/6*x + 1/6");
        assert_eq!(UniPoly::x().to_string(), "x");
    }

    #[test]
    fn primitive_integer_form() {
        let p = UniPoly::from_roots(&[rat(1, 2), rat(1, 3)]);
        let ints = p.primitive_integer();
        assert_eq!(ints, vec![BigInt::from(1), BigInt::from(-5), BigInt::from(6)]);
    }
}
