//! Spectra of differential modules: Gauss points `x_{0, r^-gamma}` for the
//! slopes of the Newton polygon, and exponent cosets for the regular part.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::diffop::{cyclic_vector, DiffOperator, MatrixModule};
use crate::error::{Error, Result};
use crate::exponents::{cosets_from_poly, translate_coset, ExponentCoset};
use crate::factor::{decompose_reg_irr, regular_reduce};
use crate::newton::{edge_polynomial_slope0, newton_polygon, slopes};
use crate::poly::UniPoly;
use crate::rat::{self, Rat};
use crate::series::{Puiseux, Valuation};

/// The Gauss point of radius `r^-gamma` centred at 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussPoint {
    pub gamma: Rat,
}

impl fmt::Display for GaussPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gamma.is_zero() {
            write!(f, "x_{{0,1}}")
        } else if self.gamma.is_one() {
            write!(f, "x_{{0,r^-1}}")
        } else {
            write!(f, "x_{{0,r^(-{})}}", rat::format(&self.gamma))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    ram: u32,
    gauss: BTreeSet<GaussPoint>,
    cosets: BTreeSet<ExponentCoset>,
}

impl Spectrum {
    /// Checks that slopes are nonnegative, cosets live modulo `(1/ram)Z`,
    /// and that a regular part comes with the point `x_{0,1}`.
    pub fn new(
        ram: u32,
        gammas: impl IntoIterator<Item = Rat>,
        cosets: impl IntoIterator<Item = ExponentCoset>,
    ) -> Result<Self> {
        let gauss: BTreeSet<GaussPoint> = gammas.into_iter().map(|gamma| GaussPoint { gamma }).collect();
        let cosets: BTreeSet<ExponentCoset> = cosets.into_iter().collect();
        if ram == 0 {
            return Err(Error::precondition("ramification index must be positive"));
        }
        if gauss.iter().any(|g| g.gamma.is_negative()) {
            return Err(Error::precondition("Gauss point exponents must be >= 0"));
        }
        if let Some(c) = cosets.iter().find(|c| c.lattice_den() != ram) {
            return Err(Error::precondition(format!(
                "coset {c} does not live modulo (1/{ram})Z"
            )));
        }
        if !cosets.is_empty() && !gauss.contains(&GaussPoint { gamma: Rat::zero() }) {
            return Err(Error::precondition("exponent cosets require the point x_{0,1}"));
        }
        Ok(Spectrum { ram, gauss, cosets })
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn gauss(&self) -> &BTreeSet<GaussPoint> {
        &self.gauss
    }

    pub fn gammas(&self) -> Vec<Rat> {
        self.gauss.iter().map(|g| g.gamma.clone()).collect()
    }

    pub fn cosets(&self) -> &BTreeSet<ExponentCoset> {
        &self.cosets
    }

    pub fn has_regular_part(&self) -> bool {
        !self.cosets.is_empty()
    }

    /// Cosets restated modulo `Z`, for comparisons across ramification.
    pub fn integer_cosets(&self) -> BTreeSet<ExponentCoset> {
        self.cosets
            .iter()
            .flat_map(|c| c.expand_to_integer_cosets())
            .collect()
    }

    /// The same points described modulo `(1/m)Z`, for a multiple `m` of the
    /// current index.
    pub fn widen(&self, m: u32) -> Result<Self> {
        let cosets = self
            .cosets
            .iter()
            .map(|c| c.widen_lattice(m))
            .collect::<Result<Vec<_>>>()?;
        Spectrum::new(m, self.gammas(), cosets)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.cosets.iter().map(|c| format!("({c})")).collect();
        if !self.gauss.is_empty() {
            let g: Vec<String> = self.gauss.iter().map(|g| g.to_string()).collect();
            parts.push(format!("{{{}}}", g.join(", ")));
        }
        if parts.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{}", parts.join(" ∪ "))
    }
}

/// Spectrum read from the Newton polygon and the slope-zero edge.
pub fn spectrum_of_operator(p: &DiffOperator) -> Result<Spectrum> {
    let np = newton_polygon(p)?;
    let cosets = match edge_polynomial_slope0(p)? {
        Some(e) => cosets_from_poly(&e.poly.monic(), p.ram()),
        None => Vec::new(),
    };
    Spectrum::new(p.ram(), np.edges.iter().map(|e| e.slope.clone()), cosets)
}

/// Outcome of cross-checking the edge read-off against factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub regular_factor: DiffOperator,
    pub irregular_factor: DiffOperator,
    pub indicial: UniPoly,
    pub cosets: Vec<ExponentCoset>,
}

/// Recomputes the spectrum of `p` through the regular/irregular
/// factorization and fails with an internal mismatch if it differs from
/// `expected`.
pub fn verify_operator_spectrum(
    p: &DiffOperator,
    expected: &Spectrum,
    rel_steps: u32,
) -> Result<Verification> {
    let monic = p.make_monic(rel_steps)?;
    let (reg, irr) = decompose_reg_irr(&monic, None)?;
    let indicial = regular_reduce(&reg)?;
    let cosets = if reg.degree() > 0 {
        cosets_from_poly(&indicial, p.ram())
    } else {
        Vec::new()
    };
    let mut gammas: Vec<Rat> = if irr.degree() > 0 {
        slopes(&irr)?.into_iter().map(|(g, _)| g).collect()
    } else {
        Vec::new()
    };
    if reg.degree() > 0 {
        gammas.push(Rat::zero());
    }
    let via_factors = Spectrum::new(p.ram(), gammas, cosets.clone())?;
    if via_factors != *expected {
        return Err(Error::InternalMismatch(format!(
            "edge read-off gives {expected} but factorization gives {via_factors}"
        )));
    }
    Ok(Verification {
        regular_factor: reg,
        irregular_factor: irr,
        indicial,
        cosets,
    })
}

/// Spectrum of a matrix module through a cyclic vector.
pub fn spectrum_of_matrix(m: &MatrixModule, rel_steps: u32) -> Result<Spectrum> {
    let cv = cyclic_vector(m, rel_steps)?;
    spectrum_of_operator(&cv.operator)
}

/// Spectrum of the rank-one module `(F, delta + f)`.
pub fn spectrum_rank1(f: &Puiseux) -> Result<Spectrum> {
    let m = f.ram();
    match f.valuation() {
        Valuation::Unknown => Err(Error::precision(format!(
            "valuation of {f} is not determined"
        ))),
        Valuation::Finite(v) if v.is_negative() => Spectrum::new(m, [-v], []),
        _ => Spectrum::new(
            m,
            [Rat::zero()],
            [ExponentCoset::of_rational(&f.constant_term()?, m)],
        ),
    }
}

/// `det(x I - G)` by the Faddeev-LeVerrier recursion.
pub fn characteristic_polynomial(g: &[Vec<Rat>]) -> Result<UniPoly> {
    let n = g.len();
    if g.iter().any(|row| row.len() != n) {
        return Err(Error::precondition("matrix must be square"));
    }
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut mk = vec![vec![Rat::zero(); n]; n];
    for k in 1..=n {
        // M_k = G M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rat::zero();
                for l in 0..n {
                    acc += &g[i][l] * &mk[l][j];
                }
                if i == j {
                    acc += &coeffs[n - k + 1];
                }
                next[i][j] = acc;
            }
        }
        mk = next;
        let mut trace = Rat::zero();
        for i in 0..n {
            for l in 0..n {
                trace += &g[i][l] * &mk[l][i];
            }
        }
        coeffs[n - k] = -trace / rat::int(k as i64);
    }
    Ok(UniPoly::new(coeffs))
}

/// Spectrum of a module with constant connection matrix.
pub fn spectrum_constant_matrix(g: &[Vec<Rat>]) -> Result<Spectrum> {
    if g.is_empty() {
        return Err(Error::precondition("matrix must be nonempty"));
    }
    let chi = characteristic_polynomial(g)?;
    Spectrum::new(1, [Rat::zero()], cosets_from_poly(&chi, 1))
}

/// Translation by `c`: cosets move, Gauss points of radius at least 1
/// absorb the shift.
pub fn translate_spectrum(s: &Spectrum, c: &Rat) -> Spectrum {
    Spectrum {
        ram: s.ram,
        gauss: s.gauss.clone(),
        cosets: s.cosets.iter().map(|k| translate_coset(k, c)).collect(),
    }
}

fn same_ram(a: &Spectrum, b: &Spectrum) -> Result<()> {
    if a.ram != b.ram {
        return Err(Error::precondition(format!(
            "spectra over ramification {} and {} are not comparable",
            a.ram, b.ram
        )));
    }
    Ok(())
}

pub fn spectrum_eq(a: &Spectrum, b: &Spectrum) -> Result<bool> {
    same_ram(a, b)?;
    Ok(a == b)
}

pub fn union(a: &Spectrum, b: &Spectrum) -> Result<Spectrum> {
    same_ram(a, b)?;
    Ok(Spectrum {
        ram: a.ram,
        gauss: a.gauss.union(&b.gauss).cloned().collect(),
        cosets: a.cosets.union(&b.cosets).cloned().collect(),
    })
}

/// Equality as sets of points, whatever lattice each side uses.
pub fn same_points(a: &Spectrum, b: &Spectrum) -> bool {
    a.gauss == b.gauss && a.integer_cosets() == b.integer_cosets()
}

/// `r^-gamma` for one Gauss point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radius {
    pub gamma: Rat,
    /// Exact value when rational.
    pub value: Option<Rat>,
    pub display: String,
}

pub fn numeric_radii(s: &Spectrum, r: &Rat) -> Result<Vec<Radius>> {
    if !(r.is_positive() && *r < Rat::one()) {
        return Err(Error::precondition(format!(
            "radius must lie in (0,1), got {}",
            rat::format(r)
        )));
    }
    Ok(s.gauss
        .iter()
        .map(|g| {
            let value = rat::rational_power(r, &-&g.gamma);
            let display = match &value {
                Some(v) => rat::format(v),
                None => format!("({})^(-{})", rat::format(r), rat::format(&g.gamma)),
            };
            Radius {
                gamma: g.gamma.clone(),
                value,
                display,
            }
        })
        .collect())
}
