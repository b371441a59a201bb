//! Differential operators `sum g_i D^i` over Puiseux series, matrix
//! differential modules, and cyclic vectors.
//!
//! Multiplication follows `D f = delta(f) + f D`. A matrix module is given
//! by `G` whose column `j` is `nabla(e_j)`, so that on coordinate columns
//! `nabla(v) = delta(v) + G v`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::series::{format_monomial, format_power, join_signed, Puiseux, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    ram: u32,
    /// `coeffs[i]` multiplies `D^i`; the last entry is never exactly zero.
    coeffs: Vec<Puiseux>,
}

impl DiffOperator {
    /// Builds `sum coeffs[i] D^i`, lifting every coefficient to the common
    /// ramification index. Trailing exact zeros are dropped.
    pub fn new(coeffs: Vec<Puiseux>) -> Self {
        let ram = coeffs.iter().fold(1, |m, c| rat::lcm(m, c.ram()));
        Self::with_ram(coeffs, ram)
    }

    /// As [`DiffOperator::new`] on the grid `(1/ram)Z`, which must be at
    /// least as fine as every coefficient's.
    pub fn with_ram(coeffs: Vec<Puiseux>, ram: u32) -> Self {
        let mut coeffs: Vec<Puiseux> = coeffs.iter().map(|c| c.lift(ram)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOperator { ram, coeffs }
    }

    pub fn zero() -> Self {
        DiffOperator {
            ram: 1,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_series(Puiseux::one())
    }

    /// The operator `D`.
    pub fn d() -> Self {
        Self::new(vec![Puiseux::zero(), Puiseux::one()])
    }

    /// `D^k`.
    pub fn d_pow(k: usize) -> Self {
        let mut c = vec![Puiseux::zero(); k + 1];
        c[k] = Puiseux::one();
        Self::new(c)
    }

    /// Multiplication by a series, an operator of degree zero.
    pub fn from_series(f: Puiseux) -> Self {
        Self::new(vec![f])
    }

    /// Monic operator `D^n + sum_{i<n} lower[i] D^i`.
    pub fn monic(lower: Vec<Puiseux>) -> Self {
        let mut c = lower;
        c.push(Puiseux::one());
        Self::new(c)
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn coeffs(&self) -> &[Puiseux] {
        &self.coeffs
    }

    /// Coefficient of `D^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Puiseux {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Puiseux::zero().lift(self.ram))
    }

    /// Degree in `D`; zero for the zero operator.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Puiseux> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Restates all coefficients on `(1/ram)Z`.
    pub fn lift(&self, ram: u32) -> Self {
        Self::with_ram(self.coeffs.clone(), ram)
    }

    /// The coarsest common grid carrying every coefficient.
    pub fn reduce_ram(&self) -> Self {
        let reduced: Vec<Puiseux> = self.coeffs.iter().map(|c| c.reduce_ram()).collect();
        Self::new(reduced)
    }

    /// Tries to restate the operator on `(1/ram)Z`.
    pub fn try_ram(&self, ram: u32) -> Option<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.with_ram(ram))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::with_ram(coeffs, ram))
    }

    /// Left multiplication by a series: `f * sum g_i D^i`.
    pub fn scale_left(&self, f: &Puiseux) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|g| f.mul(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    /// Normalizes the leading coefficient to 1 by left multiplication with
    /// its inverse, carrying `rel_steps` grid steps of relative precision
    /// when that inverse is not exact.
    pub fn make_monic(&self, rel_steps: u32) -> Result<Self> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::precondition("the zero operator has no monic form"))?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        let inv = lead.invert(rel_steps)?;
        let mut out = self.scale_left(&inv)?;
        let n = out.coeffs.len() - 1;
        out.coeffs[n] = Puiseux::one().lift(out.ram);
        Ok(out)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let ram = rat::lcm(self.ram, other.ram);
        let coeffs = (0..n)
            .map(|i| {
                let (a, b) = (self.coeff(i), other.coeff(i));
                if negate {
                    &a - &b
                } else {
                    &a + &b
                }
            })
            .collect();
        Self::with_ram(coeffs, ram)
    }

    /// Operator product in the ring of differential polynomials.
    pub fn op_mul(&self, other: &Self) -> Result<Self> {
        self.op_mul_with(other, &Puiseux::delta)
    }

    /// Operator product using `derivation` in the commutation rule
    /// `D f = derivation(f) + f D`. Only useful for negative controls.
    pub fn op_mul_with(
        &self,
        other: &Self,
        derivation: &dyn Fn(&Puiseux) -> Puiseux,
    ) -> Result<Self> {
        let ram = rat::lcm(self.ram, other.ram);
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero().lift(ram));
        }
        let mut out = vec![Puiseux::zero().lift(ram); self.degree() + other.degree() + 1];
        for (j, h) in other.coeffs.iter().enumerate() {
            // D^i h = sum_k C(i,k) delta^k(h) D^(i-k)
            let mut derivs = vec![h.clone()];
            for _ in 0..self.degree() {
                let next = derivation(derivs.last().unwrap());
                derivs.push(next);
            }
            for (i, g) in self.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                for (k, dh) in derivs.iter().enumerate().take(i + 1) {
                    if dh.is_zero() {
                        continue;
                    }
                    let term = g.mul(dh)?.scale(&rat::binomial(i, k));
                    let slot = &mut out[i - k + j];
                    *slot = &*slot + &term;
                }
            }
        }
        Ok(Self::with_ram(out, ram))
    }

    /// `sum g_i delta^i(f)`.
    pub fn apply(&self, f: &Puiseux) -> Result<Puiseux> {
        let mut acc = Puiseux::zero();
        let mut cur = f.clone();
        for (i, g) in self.coeffs.iter().enumerate() {
            if i > 0 {
                cur = cur.delta();
            }
            acc = &acc + &g.mul(&cur)?;
        }
        Ok(acc)
    }

    /// Companion matrix: 1 on the subdiagonal and `-g_0, ..., -g_{n-1}` in
    /// the last column, so that `e_1` is cyclic with relation `self`.
    pub fn companion(&self) -> Result<MatrixModule> {
        if !self.is_monic() || self.degree() == 0 {
            return Err(Error::precondition(
                "companion matrix needs a monic operator of degree >= 1",
            ));
        }
        let n = self.degree();
        let zero = Puiseux::zero().lift(self.ram);
        let mut g = vec![vec![zero; n]; n];
        for i in 1..n {
            g[i][i - 1] = Puiseux::one().lift(self.ram);
        }
        for (i, row) in g.iter_mut().enumerate() {
            row[n - 1] = -&self.coeffs[i];
        }
        MatrixModule::with_ram(g, self.ram)
    }
}

impl std::ops::Add for &DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        self.combine(rhs, false)
    }
}

impl std::ops::Sub for &DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        self.combine(rhs, true)
    }
}

impl std::ops::Neg for &DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        DiffOperator::zero().combine(self, true)
    }
}

impl fmt::Display for DiffOperator {
    /// Canonical form, e.g. `2*S^(-1) + (-2 - S^(-1))*D + D^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces = Vec::new();
        for (i, g) in self.coeffs.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            if i == 0 {
                pieces.push(g.to_string());
                continue;
            }
            let d = format_power("D", &rat::int(i as i64));
            let piece = if g.is_monomial() {
                let (e, c) = g.leading_term().unwrap();
                if e.is_zero() && c.is_one() {
                    d
                } else if e.is_zero() && *c == -Rat::one() {
                    format!("-{d}")
                } else {
                    format!("{}*{d}", format_monomial(c, &e))
                }
            } else {
                format!("({g})*{d}")
            };
            pieces.push(piece);
        }
        if pieces.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", join_signed(pieces))
    }
}

/// A rank-`n` differential module with connection matrix `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixModule {
    ram: u32,
    /// Row-major; column `j` is `nabla(e_j)`.
    g: Vec<Vec<Puiseux>>,
}

impl MatrixModule {
    pub fn new(g: Vec<Vec<Puiseux>>) -> Result<Self> {
        let ram = g.iter().flatten().fold(1, |m, c| rat::lcm(m, c.ram()));
        Self::with_ram(g, ram)
    }

    pub fn with_ram(g: Vec<Vec<Puiseux>>, ram: u32) -> Result<Self> {
        let n = g.len();
        if n == 0 || g.iter().any(|row| row.len() != n) {
            return Err(Error::precondition("connection matrix must be square and nonempty"));
        }
        if g.iter().flatten().any(|c| !ram.is_multiple_of(c.ram())) {
            return Err(Error::precondition(format!(
                "matrix entries do not fit on the grid (1/{ram})Z"
            )));
        }
        let g = g
            .into_iter()
            .map(|row| row.into_iter().map(|c| c.lift(ram)).collect())
            .collect();
        Ok(MatrixModule { ram, g })
    }

    /// A matrix with rational constant entries.
    pub fn constant(g: &[Vec<Rat>]) -> Result<Self> {
        Self::new(
            g.iter()
                .map(|row| row.iter().cloned().map(Puiseux::constant).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn entry(&self, i: usize, j: usize) -> &Puiseux {
        &self.g[i][j]
    }

    pub fn rows(&self) -> &[Vec<Puiseux>] {
        &self.g
    }

    pub fn lift(&self, ram: u32) -> Self {
        Self::with_ram(self.g.clone(), ram).expect("lift to a finer grid")
    }

    /// `delta(v) + G v` on a coordinate column.
    pub fn nabla(&self, v: &[Puiseux]) -> Result<Vec<Puiseux>> {
        let mut out = Vec::with_capacity(self.rank());
        for (i, row) in self.g.iter().enumerate() {
            let mut acc = v[i].delta();
            for (gij, vj) in row.iter().zip(v) {
                if gij.is_zero() || vj.is_zero() {
                    continue;
                }
                acc = &acc + &gij.mul(vj)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Change of basis `e'_j = S^{n_j} e_j`; entry `(i,j)` becomes
    /// `S^{n_j - n_i} G_ij`, plus `n_j` on the diagonal.
    pub fn gauge_diag(&self, exps: &[Rat]) -> Result<Self> {
        if exps.len() != self.rank() {
            return Err(Error::precondition("gauge exponent count differs from rank"));
        }
        let g = self
            .g
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let shifted = c.mul_monomial(&Rat::one(), &(&exps[j] - &exps[i]));
                        if i == j {
                            &shifted + &Puiseux::constant(exps[j].clone())
                        } else {
                            shifted
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(g)
    }

    /// `G + c I`.
    pub fn shift(&self, c: &Rat) -> Self {
        let mut g = self.g.clone();
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = &row[i] + &Puiseux::constant(c.clone());
        }
        Self::with_ram(g, self.ram).unwrap()
    }
}

impl fmt::Display for MatrixModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.g.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Block diagonal sum of modules.
pub fn block_diag(blocks: &[MatrixModule]) -> Result<MatrixModule> {
    let ram = blocks.iter().fold(1, |m, b| rat::lcm(m, b.ram()));
    let n: usize = blocks.iter().map(|b| b.rank()).sum();
    let mut g = vec![vec![Puiseux::zero(); n]; n];
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rank() {
            for j in 0..b.rank() {
                g[off + i][off + j] = b.g[i][j].clone();
            }
        }
        off += b.rank();
    }
    MatrixModule::with_ram(g, ram)
}

/// Determinant of a square matrix of series given by columns.
///
/// Cofactor expansion along rows, memoized on the set of columns still in
/// play, so no division is ever needed.
pub fn det(columns: &[Vec<Puiseux>]) -> Result<Puiseux> {
    let n = columns.len();
    assert!(n < 31, "determinant size too large");
    let mut memo: HashMap<u32, Puiseux> = HashMap::new();
    det_rec(columns, (1u32 << n) - 1, &mut memo)
}

fn det_rec(cols: &[Vec<Puiseux>], mask: u32, memo: &mut HashMap<u32, Puiseux>) -> Result<Puiseux> {
    if mask == 0 {
        return Ok(Puiseux::one());
    }
    if let Some(d) = memo.get(&mask) {
        return Ok(d.clone());
    }
    let n = cols.len();
    let row = n - mask.count_ones() as usize;
    let mut acc = Puiseux::zero();
    let mut sign = true;
    for j in 0..n {
        if mask & (1 << j) == 0 {
            continue;
        }
        let a = &cols[j][row];
        if !a.is_zero() {
            let minor = det_rec(cols, mask & !(1 << j), memo)?;
            let term = a.mul(&minor)?;
            acc = if sign { &acc + &term } else { &acc - &term };
        }
        sign = !sign;
    }
    memo.insert(mask, acc.clone());
    Ok(acc)
}

/// Result of [`cyclic_vector`].
#[derive(Clone, Debug)]
pub struct CyclicVector {
    pub vector: Vec<Puiseux>,
    /// Monic `P` with `P(nabla) v = 0`.
    pub operator: DiffOperator,
    /// Candidates tried, including the successful one.
    pub attempts: usize,
}

const RANDOM_CANDIDATES: usize = 64;

/// Finds `v` such that `v, nabla v, ..., nabla^{n-1} v` is a basis and the
/// monic relation `nabla^n v = -sum g_i nabla^i v`.
///
/// Candidates are the basis vectors, `sum e_j`, `sum S^j e_j`, then
/// seeded pseudo-random combinations `sum c_j S^{k_j} e_j`. A candidate is
/// accepted when the determinant of its iterates has a known finite
/// valuation; `rel_steps` bounds the relative precision of the inverse
/// of that determinant.
pub fn cyclic_vector(m: &MatrixModule, rel_steps: u32) -> Result<CyclicVector> {
    let n = m.rank();
    let ram = m.ram();
    let unit = |j: usize, c: Puiseux| -> Vec<Puiseux> {
        (0..n)
            .map(|i| if i == j { c.clone() } else { Puiseux::zero() })
            .collect()
    };
    let mut candidates: Vec<Vec<Puiseux>> = (0..n).map(|j| unit(j, Puiseux::one())).collect();
    candidates.push(vec![Puiseux::one(); n]);
    candidates.push(
        (0..n)
            .map(|j| Puiseux::monomial(Rat::one(), &rat::int(j as i64)))
            .collect(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1c1_1c);
    for _ in 0..RANDOM_CANDIDATES {
        candidates.push(
            (0..n)
                .map(|_| {
                    let c = rng.gen_range(1..=3i64);
                    let k = rng.gen_range(0..=n as i64);
                    Puiseux::monomial(rat::int(c), &rat::int(k))
                })
                .collect(),
        );
    }

    let mut last_issue = String::from("no candidates");
    for (attempt, v) in candidates.into_iter().enumerate() {
        let v: Vec<Puiseux> = v.into_iter().map(|c| c.lift(ram)).collect();
        let mut iterates = vec![v.clone()];
        for _ in 0..n {
            let next = m.nabla(iterates.last().unwrap())?;
            iterates.push(next);
        }
        let basis = &iterates[..n];
        let d = det(basis)?;
        match d.valuation() {
            Valuation::Finite(_) => {}
            Valuation::Infinite => {
                last_issue = format!("candidate {attempt} is not cyclic");
                continue;
            }
            Valuation::Unknown => {
                last_issue = format!(
                    "candidate {attempt}: determinant vanishes to available precision"
                );
                continue;
            }
        }
        let inv = d.invert(rel_steps)?;
        let mut lower = Vec::with_capacity(n);
        for i in 0..n {
            let mut cols = basis.to_vec();
            cols[i] = iterates[n].clone();
            let di = det(&cols)?;
            // nabla^n v = sum c_i nabla^i v with c_i = det_i / det; g_i = -c_i.
            lower.push(-&di.mul(&inv)?);
        }
        let operator = DiffOperator::with_ram(
            {
                let mut c = lower;
                c.push(Puiseux::one());
                c
            },
            ram,
        );
        check_relation(&iterates, &operator)?;
        return Ok(CyclicVector {
            vector: v,
            operator,
            attempts: attempt + 1,
        });
    }
    Err(Error::precision(format!(
        "no cyclic vector found among the candidate set ({last_issue})"
    )))
}

fn check_relation(iterates: &[Vec<Puiseux>], p: &DiffOperator) -> Result<()> {
    let n = p.degree();
    for row in 0..iterates[0].len() {
        let mut acc = iterates[n][row].clone();
        for i in 0..n {
            acc = &acc + &p.coeff(i).mul(&iterates[i][row])?;
        }
        if acc.num_terms() != 0 {
            return Err(Error::InternalMismatch(format!(
                "cyclic relation leaves residue {acc} in coordinate {row}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn s(c: i64, e: i64) -> Puiseux {
        Puiseux::monomial(int(c), &int(e))
    }

    fn k(c: Rat) -> Puiseux {
        Puiseux::constant(c)
    }

    #[test]
    fn commutation_rule() {
        let p = DiffOperator::d().op_mul(&DiffOperator::from_series(s(1, 1))).unwrap();
        assert_eq!(p, DiffOperator::new(vec![s(1, 1), s(1, 1)]));
        assert_eq!(
            DiffOperator::d().op_mul(&DiffOperator::d()).unwrap(),
            DiffOperator::d_pow(2)
        );
    }

    #[test]
    fn product_of_rank_one_factors() {
        let a = DiffOperator::monic(vec![s(-1, -1)]);
        let b = DiffOperator::monic(vec![k(int(-2))]);
        let p = a.op_mul(&b).unwrap();
        let expected = DiffOperator::monic(vec![s(2, -1), &k(int(-2)) + &s(-1, -1)]);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "2*S^(-1) + (-2 - S^(-1))*D + D^2");
    }

    #[test]
    fn application() {
        let d = DiffOperator::d();
        assert_eq!(d.apply(&s(1, 3)).unwrap(), s(3, 3));
        let dm = DiffOperator::monic(vec![k(int(-3))]);
        assert!(dm.apply(&s(1, 3)).unwrap().is_zero());
        let p = DiffOperator::monic(vec![s(-1, -1), Puiseux::zero()]);
        assert_eq!(p.apply(&Puiseux::one()).unwrap(), s(-1, -1));
    }

    #[test]
    fn companion_layout() {
        let p = DiffOperator::monic(vec![k(rat(1, 6)), k(rat(-5, 6))]);
        let c = p.companion().unwrap();
        assert_eq!(c.entry(1, 0), &Puiseux::one());
        assert!(c.entry(0, 0).is_zero());
        assert_eq!(c.entry(0, 1), &k(rat(-1, 6)));
        assert_eq!(c.entry(1, 1), &k(rat(5, 6)));

        let d2 = DiffOperator::d_pow(2).companion().unwrap();
        assert_eq!(d2.entry(1, 0), &Puiseux::one());
        assert!(d2.entry(0, 0).is_zero() && d2.entry(0, 1).is_zero() && d2.entry(1, 1).is_zero());

        let r1 = DiffOperator::monic(vec![k(int(-5))]).companion().unwrap();
        assert_eq!(r1.entry(0, 0), &k(int(5)));
        assert!(DiffOperator::from_series(s(2, 0)).companion().is_err());
    }

    #[test]
    fn cyclic_vector_of_companion_returns_source() {
        let p = DiffOperator::monic(vec![s(2, -1), &k(int(-2)) + &s(-1, -1)]);
        let cv = cyclic_vector(&p.companion().unwrap(), 50).unwrap();
        assert_eq!(cv.operator, p);
        assert_eq!(cv.attempts, 1);
    }

    #[test]
    fn cyclic_vector_nilpotent() {
        let m = MatrixModule::constant(&[vec![int(0), int(1)], vec![int(0), int(0)]]).unwrap();
        let cv = cyclic_vector(&m, 50).unwrap();
        assert_eq!(cv.vector, vec![Puiseux::zero(), Puiseux::one()]);
        assert_eq!(cv.operator, DiffOperator::d_pow(2));
    }

    #[test]
    fn cyclic_vector_rank_one() {
        let f = &s(1, -2) + &k(rat(1, 3));
        let m = MatrixModule::new(vec![vec![f.clone()]]).unwrap();
        let cv = cyclic_vector(&m, 50).unwrap();
        assert_eq!(cv.operator, DiffOperator::monic(vec![-&f]));
    }

    #[test]
    fn determinant() {
        let cols = vec![vec![s(1, 0), s(2, 1)], vec![s(3, 0), s(4, 1)]];
        assert_eq!(det(&cols).unwrap(), s(-2, 1));
    }

    #[test]
    fn make_monic_exact_for_monomial_lead() {
        let p = DiffOperator::new(vec![s(1, -1), s(2, 1)]);
        let q = p.make_monic(10).unwrap();
        assert_eq!(q, DiffOperator::monic(vec![Puiseux::monomial(rat(1, 2), &int(-2))]));
    }
}
