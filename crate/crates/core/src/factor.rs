//! Factorization along the Newton polygon.
//!
//! For a monic `P` and one of its slopes `gamma`, [`slope_factor`] computes
//! `P = R Q` with `R` monic carrying only the slope `gamma` and `Q` monic
//! carrying the remaining slopes. Terms `S^a D^i` are graded by the weight
//! `a - gamma i`; the lowest-weight parts of the factors are read from the
//! edge, then the residue `P - R Q` is cleared one weight level at a time.
//!
//! For `gamma > 0` the lowest-weight parts multiply commutatively. At
//! `gamma = 0` they multiply through `D S^b = S^b (D + b)`, which is why the
//! two cases solve slightly different linear equations.

use num_traits::{Signed, Zero};

use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::newton::{newton_polygon, slopes};
use crate::poly::UniPoly;
use crate::rat::{self, Rat};
use crate::series::{Puiseux, Valuation};

#[derive(Clone, Debug)]
pub struct SlopeFactorization {
    /// `R`: monic, single slope `gamma` of width `width`.
    pub left: DiffOperator,
    /// `Q`: monic, the other slopes.
    pub right: DiffOperator,
    pub slope: Rat,
    pub width: usize,
    /// `P - R Q` vanishes below `S^precision` in every coefficient.
    pub precision: Rat,
    pub iterations: usize,
}

/// Smallest precision among the coefficients of `p`, if any is truncated.
pub fn operator_precision(p: &DiffOperator) -> Option<Rat> {
    p.coeffs().iter().filter_map(|c| c.precision()).min()
}

/// `2 * (0 - v_min) + 10` grid steps, where the grid also resolves `gamma`.
pub fn default_target(p: &DiffOperator, gamma: &Rat) -> Result<Rat> {
    let np = newton_polygon(p)?;
    let m = rat::lcm(p.ram(), rat::den_u32(gamma));
    Ok(-np.v_min * rat::int(2) + rat::rat(10, m as i64))
}

pub fn slope_factor(
    p: &DiffOperator,
    gamma: &Rat,
    target: Option<Rat>,
) -> Result<SlopeFactorization> {
    if !p.is_monic() {
        return Err(Error::precondition("slope factorization needs a monic operator"));
    }
    let np = newton_polygon(p)?;
    let edge = np.edge(gamma).cloned().ok_or_else(|| {
        Error::precondition(format!("{} is not a slope of {p}", rat::format(gamma)))
    })?;
    let n = p.degree();
    let (i0, nu) = (edge.start, edge.width);
    if nu == n {
        return Err(Error::precondition(format!(
            "{p} has the single slope {}; nothing to split",
            rat::format(gamma)
        )));
    }
    let target = match target {
        Some(t) => t,
        None => default_target(p, gamma)?,
    };
    if let Some(avail) = operator_precision(p) {
        if avail < target {
            return Err(Error::precision(format!(
                "operator known below S^({}) only; factorization target is S^({})",
                rat::format(&avail),
                rat::format(&target)
            )));
        }
    }

    let m = rat::lcm(p.ram(), rat::den_u32(gamma));
    let target = rat::from_grid(rat::ceil_grid_index(&target, m), m);
    let pl = p.lift(m);
    let start_height = np
        .vertices
        .iter()
        .find(|(i, _)| *i == i0)
        .map(|(_, v)| v.clone())
        .expect("edge starts at a vertex");
    let h = &start_height - gamma * rat::int(i0 as i64);
    let phi = UniPoly::new(
        (0..=nu)
            .map(|j| {
                let i = i0 + j;
                pl.coeff(i).coeff(&(&h + gamma * rat::int(i as i64)))
            })
            .collect::<Result<Vec<_>>>()?,
    );
    let c = phi.lead();
    let nu_r = rat::int(nu as i64);
    let w_r = -(gamma * &nu_r);
    let w_q = &h + gamma * &nu_r;
    let phi_hat = if gamma.is_zero() {
        phi.shift(&-&w_q).scale(&c.recip())
    } else {
        phi.scale(&c.recip())
    };

    let mono = |coef: &Rat, exp: &Rat| Puiseux::monomial(coef.clone(), exp).lift(m);
    let mut r = DiffOperator::with_ram(
        (0..=nu)
            .map(|j| mono(&phi_hat.coeff(j), &(gamma * rat::int(j as i64 - nu as i64))))
            .collect(),
        m,
    );
    let mut q_coeffs = vec![Puiseux::zero(); n - nu + 1];
    q_coeffs[n - nu] = Puiseux::one();
    if i0 != n - nu {
        q_coeffs[i0] = mono(&c, &(&w_q + gamma * rat::int(i0 as i64)));
    }
    let mut q = DiffOperator::with_ram(q_coeffs, m);

    // gamma > 0: A = E / (c y^i0) mod phi_hat, which exists since phi_hat(0) != 0.
    let psi = UniPoly::new(
        std::iter::repeat_n(Rat::zero(), i0)
            .chain(std::iter::once(c.clone()))
            .collect(),
    );
    let psi_inv = if gamma.is_zero() {
        None
    } else {
        Some(psi.inverse_mod(&phi_hat).ok_or_else(|| {
            Error::InternalMismatch("edge polynomial vanishes at 0 on a positive slope".into())
        })?)
    };

    let max_iter = ((&target - &h) * rat::int(m as i64)).ceil().to_integer();
    let max_iter: usize = max_iter.try_into().unwrap_or(usize::MAX).saturating_add(n + 4);
    let mut iterations = 0;
    let mut e = &pl - &mul_below(&r, &q, &target)?;
    loop {
        let mut w_e: Option<Rat> = None;
        for (i, ei) in e.coeffs().iter().enumerate() {
            if let Some((a, _)) = ei.terms().next() {
                if a < target {
                    let w = a - gamma * rat::int(i as i64);
                    if w_e.as_ref().is_none_or(|cur| w < *cur) {
                        w_e = Some(w);
                    }
                }
            }
        }
        let Some(w_e) = w_e else { break };
        if w_e <= h {
            return Err(Error::InternalMismatch(format!(
                "residue weight {} did not rise above the edge weight {}",
                rat::format(&w_e),
                rat::format(&h)
            )));
        }
        if iterations >= max_iter {
            return Err(Error::precision(format!(
                "slope factorization stalled at weight {} before S^({})",
                rat::format(&w_e),
                rat::format(&target)
            )));
        }
        iterations += 1;

        let big_e = UniPoly::new(
            (0..n)
                .map(|i| {
                    let a = &w_e + gamma * rat::int(i as i64);
                    if a < target {
                        e.coeff(i).coeff(&a)
                    } else {
                        Ok(Rat::zero())
                    }
                })
                .collect::<Result<Vec<_>>>()?,
        );
        let (a_poly, b_poly) = match &psi_inv {
            Some(inv) => {
                let a = (&big_e * inv).divrem(&phi_hat).1;
                let (b, rem) = (&big_e - &(&a * &psi)).divrem(&phi_hat);
                if !rem.is_zero() {
                    return Err(Error::InternalMismatch(
                        "graded correction equation has no solution".into(),
                    ));
                }
                (a, b)
            }
            None => {
                let (b, rem) = big_e.divrem(&phi_hat.shift(&w_e));
                (rem.shift(&-&w_q).scale(&c.recip()), b)
            }
        };
        let correction = |poly: &UniPoly, base: &Rat| {
            DiffOperator::with_ram(
                poly.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(j, cj)| mono(cj, &(base + gamma * rat::int(j as i64))))
                    .collect(),
                m,
            )
        };
        // (R + dR)(Q + dQ) - RQ = dR Q + (R + dR) dQ
        let dr = correction(&a_poly, &(&w_e - &w_q));
        let dq = correction(&b_poly, &(&w_e - &w_r));
        e = &e - &mul_below(&dr, &q, &target)?;
        r = &r + &dr;
        e = &e - &mul_below(&r, &dq, &target)?;
        q = &q + &dq;
    }

    let left = r.try_ram(p.ram()).unwrap_or(r);
    let right = q.try_ram(p.ram()).unwrap_or(q);
    let got = slopes(&left)?;
    if got != vec![(gamma.clone(), nu)] {
        return Err(Error::InternalMismatch(format!(
            "factor {left} has slopes {got:?}, expected only {}",
            rat::format(gamma)
        )));
    }
    Ok(SlopeFactorization {
        left,
        right,
        slope: gamma.clone(),
        width: nu,
        precision: target,
        iterations,
    })
}

/// Lowest known exponent over all coefficients (`delta` never lowers it).
fn lowest_exponent(a: &DiffOperator) -> Option<Rat> {
    a.coeffs()
        .iter()
        .filter_map(|c| c.terms().next().map(|(e, _)| e).or_else(|| c.precision()))
        .min()
}

/// The product `a b` with every coefficient known below `S^t` only. Operand
/// terms that cannot reach below `t` are dropped first.
fn mul_below(a: &DiffOperator, b: &DiffOperator, t: &Rat) -> Result<DiffOperator> {
    let (Some(va), Some(vb)) = (lowest_exponent(a), lowest_exponent(b)) else {
        return a.op_mul(b);
    };
    if &va + &vb >= *t {
        // everything lies at or above t; cutting both sides would leave
        // bounds below t
        return Ok(DiffOperator::zero().lift(a.ram().max(b.ram())));
    }
    let cut = |x: &DiffOperator, at: Rat| {
        DiffOperator::with_ram(x.coeffs().iter().map(|c| c.truncate(&at)).collect(), x.ram())
    };
    let prod = cut(a, t - &vb).op_mul(&cut(b, t - &va))?;
    Ok(cut(&prod, t.clone()))
}

/// `P_0(x) = sum g_i(0) x^i` for a monic operator with coefficients in
/// `k[[S]]`.
pub fn regular_reduce(p: &DiffOperator) -> Result<UniPoly> {
    if !p.is_monic() {
        return Err(Error::precondition("regular reduction needs a monic operator"));
    }
    let mut coeffs = Vec::with_capacity(p.degree() + 1);
    for (i, g) in p.coeffs().iter().enumerate() {
        match g.valuation() {
            Valuation::Finite(v) if v.is_negative() => {
                return Err(Error::precondition(format!(
                    "coefficient of D^{i} has negative valuation {}",
                    rat::format(&v)
                )))
            }
            Valuation::Unknown if g.precision().is_some_and(|p| !p.is_positive()) => {
                return Err(Error::precision(format!(
                    "constant term of the coefficient of D^{i} is unknown"
                )))
            }
            _ => {}
        }
        coeffs.push(g.constant_term()?);
    }
    Ok(UniPoly::new(coeffs))
}

/// Splits a monic `P` as `P_reg * P_irr`, the regular factor carrying the
/// slope-zero edge. The trivial factor is the unit operator.
pub fn decompose_reg_irr(
    p: &DiffOperator,
    target: Option<Rat>,
) -> Result<(DiffOperator, DiffOperator)> {
    if !p.is_monic() {
        return Err(Error::precondition("decomposition needs a monic operator"));
    }
    let sl = slopes(p)?;
    let one = DiffOperator::one().lift(p.ram());
    if !sl.iter().any(|(g, _)| g.is_zero()) {
        return Ok((one, p.clone()));
    }
    if sl.len() == 1 {
        return Ok((p.clone(), one));
    }
    let mut t = match target {
        Some(t) => t,
        None => default_target(p, &Rat::zero())?,
    };
    if let Some(avail) = operator_precision(p) {
        t = t.min(avail);
    }
    let f = slope_factor(p, &Rat::zero(), Some(t))?;
    Ok((f.left, f.right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::{cosets_from_poly, ExponentCoset};
    use crate::rat::{int, rat};

    fn s(c: i64, e: i64) -> Puiseux {
        Puiseux::monomial(int(c), &int(e))
    }

    fn k(c: Rat) -> Puiseux {
        Puiseux::constant(c)
    }

    fn mixed() -> DiffOperator {
        DiffOperator::monic(vec![s(-1, -1)])
            .op_mul(&DiffOperator::monic(vec![k(int(-2))]))
            .unwrap()
    }

    fn assert_reconstructs(p: &DiffOperator, f: &SlopeFactorization) {
        let e = p - &f.left.op_mul(&f.right).unwrap();
        for c in e.coeffs() {
            assert!(c.vanishes_below(&f.precision), "residue {c}");
        }
    }

    #[test]
    fn positive_slope_recovers_exact_factors() {
        let p = mixed();
        let f = slope_factor(&p, &int(1), None).unwrap();
        assert_eq!(f.left, DiffOperator::monic(vec![s(-1, -1)]));
        assert_eq!(f.right, DiffOperator::monic(vec![k(int(-2))]));
        assert_reconstructs(&p, &f);
    }

    #[test]
    fn slope_zero_factor_is_regular() {
        let p = mixed();
        let f = slope_factor(&p, &int(0), None).unwrap();
        assert_reconstructs(&p, &f);
        assert_eq!(f.left.degree(), 1);
        assert_eq!(slopes(&f.right).unwrap(), vec![(int(1), 1)]);
        let p0 = regular_reduce(&f.left).unwrap();
        // The left regular factor has indicial root 1, in the coset of 2.
        assert_eq!(p0, UniPoly::from_i64(&[-1, 1]));
        assert_eq!(
            cosets_from_poly(&p0, 1),
            vec![ExponentCoset::new(&UniPoly::from_i64(&[-2, 1]), 1)]
        );
    }

    #[test]
    fn fractional_slope_split() {
        // (D^2 - S^-1)(D - 1/2 - S)
        let a = DiffOperator::monic(vec![s(-1, -1), Puiseux::zero()]);
        let b = DiffOperator::monic(vec![&k(rat(-1, 2)) + &s(-1, 1)]);
        let p = a.op_mul(&b).unwrap();
        let f = slope_factor(&p, &rat(1, 2), None).unwrap();
        assert_reconstructs(&p, &f);
        assert_eq!(f.left.ram(), 1);
        assert_eq!(slopes(&f.right).unwrap(), vec![(int(0), 1)]);
    }

    #[test]
    fn single_slope_is_rejected() {
        let p = DiffOperator::monic(vec![s(-1, -1)]);
        assert!(matches!(slope_factor(&p, &int(1), None), Err(Error::Precondition(_))));
        assert!(slope_factor(&mixed(), &int(3), None).is_err());
    }

    #[test]
    fn regular_reduction() {
        let p = DiffOperator::monic(vec![&k(rat(-1, 2)) - &s(1, 1)]);
        assert_eq!(regular_reduce(&p).unwrap(), UniPoly::new(vec![rat(-1, 2), int(1)]));
        let p = DiffOperator::monic(vec![-&s(1, 1)]);
        assert_eq!(regular_reduce(&p).unwrap(), UniPoly::x());
        assert!(regular_reduce(&DiffOperator::monic(vec![s(1, -1)])).is_err());
    }

    #[test]
    fn decomposition_trivial_cases() {
        let reg = DiffOperator::monic(vec![k(rat(1, 6)), k(rat(-5, 6))]);
        let (a, b) = decompose_reg_irr(&reg, None).unwrap();
        assert_eq!((a, b.degree()), (reg.clone(), 0));
        let irr = DiffOperator::monic(vec![s(-1, -1)]);
        let (a, b) = decompose_reg_irr(&irr, None).unwrap();
        assert_eq!((a.degree(), b), (0, irr.clone()));
    }
}
