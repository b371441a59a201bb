//! Ramified base change along `S = Z^m`.
//!
//! With the valuation normalized by `v(S) = 1` and the derivation kept as
//! `S d/dS`, pulling back only reinterprets the coefficients on the finer
//! grid. Pushing forward restricts scalars: a module of rank `n` over
//! `k((S^(1/R)))` becomes a module of rank `n m` over `k((S^(1/(R/m))))`
//! with basis `T^i e_j`, `T = S^(1/R)`, ordered so that index `i n + j`
//! holds `T^i e_j`.

use num_integer::Integer;

use crate::diffop::{block_diag, DiffOperator, MatrixModule};
use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::series::Puiseux;
use crate::spectrum::{
    same_points, spectrum_eq, spectrum_of_matrix, spectrum_of_operator, translate_spectrum,
    union, Spectrum,
};

/// A module given either by a cyclic relation or by a connection matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Module {
    Operator(DiffOperator),
    Matrix(MatrixModule),
}

impl Module {
    pub fn ram(&self) -> u32 {
        match self {
            Module::Operator(p) => p.ram(),
            Module::Matrix(m) => m.ram(),
        }
    }

    pub fn spectrum(&self, rel_steps: u32) -> Result<Spectrum> {
        match self {
            Module::Operator(p) => spectrum_of_operator(p),
            Module::Matrix(m) => spectrum_of_matrix(m, rel_steps),
        }
    }

    /// A connection matrix for the module; operators go through their
    /// companion matrix after normalization.
    pub fn to_matrix(&self, rel_steps: u32) -> Result<MatrixModule> {
        match self {
            Module::Operator(p) => p.make_monic(rel_steps)?.companion(),
            Module::Matrix(m) => Ok(m.clone()),
        }
    }

    pub fn pullback(&self, m: u32) -> Module {
        match self {
            Module::Operator(p) => Module::Operator(pullback_operator(p, m)),
            Module::Matrix(g) => Module::Matrix(pullback_matrix(g, m)),
        }
    }
}

/// A module together with the ramification index of the extension it is
/// pulled back to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamifiedModule {
    pub base: Module,
    pub factor: u32,
}

impl RamifiedModule {
    pub fn new(base: Module, factor: u32) -> Result<Self> {
        if factor == 0 {
            return Err(Error::precondition("ramification factor must be positive"));
        }
        Ok(RamifiedModule { base, factor })
    }

    pub fn module(&self) -> Module {
        self.base.pullback(self.factor)
    }
}

pub fn pullback_operator(p: &DiffOperator, m: u32) -> DiffOperator {
    assert!(m >= 1);
    p.lift(p.ram() * m)
}

pub fn pullback_matrix(g: &MatrixModule, m: u32) -> MatrixModule {
    assert!(m >= 1);
    g.lift(g.ram() * m)
}

/// Restriction of scalars all the way down to `k((S))`.
pub fn pushforward(g: &MatrixModule) -> MatrixModule {
    pushforward_by(g, g.ram()).expect("full pushforward")
}

/// Restriction of scalars from `(1/R)Z` to `(1/(R/m))Z` exponents, where
/// `R` is the ramification index of `g`.
pub fn pushforward_by(g: &MatrixModule, m: u32) -> Result<MatrixModule> {
    let big = g.ram();
    if m == 0 || !big.is_multiple_of(m) {
        return Err(Error::precondition(format!(
            "cannot push a module over ramification {big} down by a factor {m}"
        )));
    }
    let small = big / m;
    let n = g.rank();
    let mu = m as usize;
    let mut out = vec![vec![Puiseux::zero().lift(small); n * mu]; n * mu];
    for i in 0..mu {
        for j in 0..n {
            let col = i * n + j;
            // nabla(T^i e_j) = (i/R) T^i e_j + sum_l T^i G_lj e_l
            out[col][col] = &out[col][col] + &Puiseux::constant(rat::rat(i as i64, big as i64));
            for l in 0..n {
                let entry = g.entry(l, j).grid_terms();
                let mut parts: Vec<Vec<(i64, Rat)>> = vec![Vec::new(); mu];
                for (k, c) in entry {
                    let k = k + i as i64;
                    let (q, r) = k.div_mod_floor(&(m as i64));
                    parts[r as usize].push((q, c.clone()));
                }
                let prec = g.entry(l, j).grid_prec().map(|p| p + i as i64);
                for (r, terms) in parts.into_iter().enumerate() {
                    // Exponents below the shifted precision p are known: the
                    // piece T^r S^(q/small) is known for q*m + r < p.
                    let piece_prec = prec.map(|p| Integer::div_ceil(&(p - r as i64), &(m as i64)));
                    let piece = Puiseux::from_terms(small, terms, piece_prec);
                    let row = r * n + l;
                    out[row][col] = &out[row][col] + &piece;
                }
            }
        }
    }
    MatrixModule::with_ram(out, small)
}

/// Checks that the spectrum of the pullback equals the union of the
/// translates of the spectrum by `i/R`, `i < m`, read modulo `(1/R)Z`.
pub fn check_eq22(module: &Module, m: u32, rel_steps: u32) -> Result<bool> {
    let base = module.spectrum(rel_steps)?;
    let lhs = module.pullback(m).spectrum(rel_steps)?;
    let big = module.ram() * m;
    let mut rhs: Option<Spectrum> = None;
    for i in 0..m {
        let shifted = translate_spectrum(&base, &rat::rat(i as i64, big as i64)).widen(big)?;
        rhs = Some(match rhs {
            None => shifted,
            Some(acc) => union(&acc, &shifted)?,
        });
    }
    spectrum_eq(&lhs, &rhs.unwrap())
}

/// Checks that pushing the pullback back down gives, entry by entry, the
/// block diagonal sum of `G + (i/R) I` for `i < m`.
pub fn check_block_decomposition(g: &MatrixModule, m: u32) -> Result<bool> {
    let pulled = pullback_matrix(g, m);
    let pushed = pushforward_by(&pulled, m)?;
    let big = pulled.ram();
    let blocks: Vec<MatrixModule> = (0..m)
        .map(|i| g.shift(&rat::rat(i as i64, big as i64)))
        .collect();
    Ok(pushed == block_diag(&blocks)?)
}

/// Checks that the pullback and its pushforward have the same spectrum as
/// sets of points, the latter computed through a cyclic vector.
pub fn check_pushforward_spectrum(module: &Module, m: u32, rel_steps: u32) -> Result<bool> {
    let pulled = module.pullback(m);
    let direct = pulled.spectrum(rel_steps)?;
    let matrix = pulled.to_matrix(rel_steps)?;
    let pushed = pushforward_by(&matrix, m)?;
    let via_matrix = spectrum_of_matrix(&pushed, rel_steps)?;
    Ok(same_points(&direct, &via_matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::ExponentCoset;
    use crate::rat::{int, rat};

    fn s(c: i64, e: i64) -> Puiseux {
        Puiseux::monomial(int(c), &int(e))
    }

    #[test]
    fn pullback_keeps_slopes_and_refines_lattice() {
        let p = DiffOperator::monic(vec![s(-1, -1)]);
        let sp = spectrum_of_operator(&pullback_operator(&p, 2)).unwrap();
        assert_eq!(sp.gammas(), vec![int(1)]);
        let sp = spectrum_of_operator(&pullback_operator(&DiffOperator::d(), 2)).unwrap();
        assert_eq!(sp.ram(), 2);
        assert_eq!(
            sp.cosets().iter().cloned().collect::<Vec<_>>(),
            vec![ExponentCoset::of_rational(&int(0), 2)]
        );
        assert_eq!(pullback_operator(&p, 1), p);
    }

    #[test]
    fn pushforward_of_trivial_rank_one() {
        let triv = MatrixModule::new(vec![vec![Puiseux::zero()]]).unwrap().lift(2);
        let pushed = pushforward(&triv);
        assert_eq!(pushed.ram(), 1);
        assert!(pushed.entry(0, 0).is_zero());
        assert_eq!(pushed.entry(1, 1), &Puiseux::constant(rat(1, 2)));
        assert!(pushed.entry(0, 1).is_zero() && pushed.entry(1, 0).is_zero());
    }

    #[test]
    fn pushforward_moves_half_integer_terms() {
        // G = (S^(1/2)) over ram 2: T e = S^(1/2) e maps basis e -> T e and
        // T e -> S e.
        let g = MatrixModule::new(vec![vec![Puiseux::monomial(int(1), &rat(1, 2))]]).unwrap();
        let pushed = pushforward(&g);
        assert_eq!(pushed.entry(1, 0), &Puiseux::one());
        assert_eq!(pushed.entry(0, 1), &s(1, 1));
        assert_eq!(pushed.entry(1, 1), &Puiseux::constant(rat(1, 2)));
    }

    #[test]
    fn eq22_examples() {
        for p in [
            DiffOperator::d(),
            DiffOperator::monic(vec![Puiseux::constant(rat(-1, 3))]),
            DiffOperator::monic(vec![s(-1, -1)]),
        ] {
            for m in [2, 3] {
                assert!(check_eq22(&Module::Operator(p.clone()), m, 50).unwrap(), "{p} m={m}");
            }
        }
    }

    #[test]
    fn blocks_and_pushforward_spectrum() {
        let p = DiffOperator::monic(vec![Puiseux::constant(rat(-1, 3))]);
        let g = p.companion().unwrap();
        assert!(check_block_decomposition(&g, 2).unwrap());
        assert!(check_pushforward_spectrum(&Module::Operator(p), 2, 50).unwrap());
        assert!(pushforward_by(&g, 2).is_err());
    }
}
