//! Truncated Puiseux series over the rationals.
//!
//! A [`Puiseux`] value stores finitely many nonzero coefficients on the grid
//! `(1/m)Z` together with a precision marker: either the series is an exact
//! Laurent polynomial in `S^(1/m)`, or every coefficient strictly below some
//! exponent `P` is known and everything from `P` on is unknown.
//!
//! The valuation is normalized so that `v(S) = 1` whatever the ramification
//! index, and the derivation is `delta = S d/dS`, acting on monomials by
//! `delta(S^q) = q S^q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

/// Outcome of [`Puiseux::valuation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(Rat),
    /// The series is exactly zero.
    Infinite,
    /// Every known coefficient vanishes but the tail is unknown.
    Unknown,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }
}

/// `|f| = r^v` kept symbolic in the radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbsValue {
    Zero,
    Power { radius: Rat, exponent: Rat },
}

impl AbsValue {
    /// The rational value of `r^v`, when there is one.
    pub fn to_rational(&self) -> Option<Rat> {
        match self {
            AbsValue::Zero => Some(Rat::zero()),
            AbsValue::Power { radius, exponent } => rat::rational_power(radius, exponent),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Puiseux {
    ram: u32,
    /// Keyed by `exponent * ram`; never holds a zero.
    terms: BTreeMap<i64, Rat>,
    /// Grid index of the first unknown exponent; `None` for exact series.
    prec: Option<i64>,
}

impl Puiseux {
    pub fn zero() -> Self {
        Puiseux {
            ram: 1,
            terms: BTreeMap::new(),
            prec: None,
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_terms(1, [(0, c)], None)
    }

    /// The variable `S`.
    pub fn s() -> Self {
        Self::monomial(Rat::one(), &Rat::one())
    }

    /// `c * S^exp`, with ramification index the denominator of `exp`.
    pub fn monomial(c: Rat, exp: &Rat) -> Self {
        let m = rat::den_u32(exp);
        let k = rat::to_grid(exp, m).expect("exponent out of range");
        Self::from_terms(m, [(k, c)], None)
    }

    /// The pure error term `O(S^exp)`.
    pub fn big_o(exp: &Rat) -> Self {
        let m = rat::den_u32(exp);
        let k = rat::to_grid(exp, m).expect("exponent out of range");
        Puiseux {
            ram: m,
            terms: BTreeMap::new(),
            prec: Some(k),
        }
    }

    /// Builds a series from `(grid index, coefficient)` pairs on `(1/ram)Z`.
    /// Repeated indices are summed; terms at or past `prec` are dropped.
    pub fn from_terms(
        ram: u32,
        terms: impl IntoIterator<Item = (i64, Rat)>,
        prec: Option<i64>,
    ) -> Self {
        assert!(ram >= 1, "ramification index must be positive");
        let mut map: BTreeMap<i64, Rat> = BTreeMap::new();
        for (k, c) in terms {
            if prec.is_some_and(|p| k >= p) {
                continue;
            }
            *map.entry(k).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Puiseux {
            ram,
            terms: map,
            prec,
        }
    }

    /// Same as [`Puiseux::from_terms`] but with rational exponents; the grid is
    /// the least common denominator.
    pub fn from_rational_terms(terms: &[(Rat, Rat)], prec: Option<Rat>) -> Self {
        let mut m = 1;
        for (e, _) in terms {
            m = rat::lcm(m, rat::den_u32(e));
        }
        if let Some(p) = &prec {
            m = rat::lcm(m, rat::den_u32(p));
        }
        Self::from_terms(
            m,
            terms
                .iter()
                .map(|(e, c)| (rat::to_grid(e, m).unwrap(), c.clone())),
            prec.map(|p| rat::to_grid(&p, m).unwrap()),
        )
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn precision(&self) -> Option<Rat> {
        self.prec.map(|p| rat::from_grid(p, self.ram))
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Exactly zero (as opposed to zero up to precision).
    pub fn is_zero(&self) -> bool {
        self.prec.is_none() && self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.prec.is_none()
            && self.terms.len() == 1
            && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Exact series with a single term.
    pub fn is_monomial(&self) -> bool {
        self.prec.is_none() && self.terms.len() == 1
    }

    /// Known nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Rat, &Rat)> + '_ {
        self.terms
            .iter()
            .map(move |(k, c)| (rat::from_grid(*k, self.ram), c))
    }

    pub(crate) fn grid_terms(&self) -> &BTreeMap<i64, Rat> {
        &self.terms
    }

    pub(crate) fn grid_prec(&self) -> Option<i64> {
        self.prec
    }

    /// Coefficient of `S^exp`; an error if that coefficient lies in the
    /// unknown tail.
    pub fn coeff(&self, exp: &Rat) -> Result<Rat> {
        if let Some(p) = self.precision() {
            if *exp >= p {
                return Err(Error::precision(format!(
                    "coefficient of S^({}) requested but series is only known below S^({})",
                    rat::format(exp),
                    rat::format(&p)
                )));
            }
        }
        Ok(match rat::to_grid(exp, self.ram) {
            Some(k) => self.terms.get(&k).cloned().unwrap_or_else(Rat::zero),
            None => Rat::zero(),
        })
    }

    /// `f(0)`, the coefficient of `S^0`.
    pub fn constant_term(&self) -> Result<Rat> {
        self.coeff(&Rat::zero())
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(k) => Valuation::Finite(rat::from_grid(*k, self.ram)),
            None if self.prec.is_none() => Valuation::Infinite,
            None => Valuation::Unknown,
        }
    }

    /// Lowest known term.
    pub fn leading_term(&self) -> Option<(Rat, &Rat)> {
        self.terms().next()
    }

    /// Restates the series on the finer grid `(1/ram)Z`.
    ///
    /// # Panics
    /// If `ram` is not a multiple of the current index.
    pub fn lift(&self, ram: u32) -> Self {
        assert!(
            ram.is_multiple_of(self.ram),
            "cannot lift ramification {} to {}",
            self.ram,
            ram
        );
        let f = (ram / self.ram) as i64;
        Puiseux {
            ram,
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
            prec: self.prec.map(|p| p * f),
        }
    }

    /// The same series on the coarsest grid that carries it.
    pub fn reduce_ram(&self) -> Self {
        let mut g = self.ram as i64;
        for k in self.terms.keys().chain(self.prec.iter()) {
            g = num_integer::gcd(g, *k);
        }
        let g = g.max(1);
        Puiseux {
            ram: self.ram / g as u32,
            terms: self.terms.iter().map(|(k, c)| (k / g, c.clone())).collect(),
            prec: self.prec.map(|p| p / g),
        }
    }

    /// Restates the series on `(1/ram)Z` if every exponent lies there.
    pub fn with_ram(&self, ram: u32) -> Option<Self> {
        let reduced = self.reduce_ram();
        ram.is_multiple_of(reduced.ram).then(|| reduced.lift(ram))
    }

    /// Forgets every coefficient at or above `exp`.
    pub fn truncate(&self, exp: &Rat) -> Self {
        let m = rat::lcm(self.ram, rat::den_u32(exp));
        let lifted = self.lift(m);
        let k = rat::to_grid(exp, m).unwrap();
        let prec = Some(lifted.prec.map_or(k, |p| p.min(k)));
        Self::from_terms(m, lifted.terms, prec)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Puiseux {
                ram: self.ram,
                terms: BTreeMap::new(),
                prec: self.prec,
            };
        }
        Puiseux {
            ram: self.ram,
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
            prec: self.prec,
        }
    }

    /// Multiplication by `c * S^exp`, which is exact and shifts the precision.
    pub fn mul_monomial(&self, c: &Rat, exp: &Rat) -> Self {
        let m = rat::lcm(self.ram, rat::den_u32(exp));
        if c.is_zero() {
            return Self::zero().lift(m);
        }
        let lifted = self.lift(m);
        let shift = rat::to_grid(exp, m).unwrap();
        Puiseux {
            ram: m,
            terms: lifted
                .terms
                .into_iter()
                .map(|(k, a)| (k + shift, a * c))
                .collect(),
            prec: lifted.prec.map(|p| p + shift),
        }
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let m = rat::lcm(self.ram, other.ram);
        let (fa, fb) = ((m / self.ram) as i64, (m / other.ram) as i64);
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (Some(p), None) => Some(p * fa),
            (None, Some(q)) => Some(q * fb),
            (Some(p), Some(q)) => Some((p * fa).min(q * fb)),
        };
        let a = self.terms.iter().map(|(k, c)| (k * fa, c.clone()));
        let b = other.terms.iter().map(|(k, c)| {
            (k * fb, if negate_other { -c.clone() } else { c.clone() })
        });
        Self::from_terms(m, a.chain(b), prec)
    }

    /// Cauchy product.
    ///
    /// The result is known below `min(P_f + v(g), P_g + v(f))`, where a
    /// valuation hidden in the unknown tail is bounded below by the precision.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let m = rat::lcm(self.ram, other.ram);
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero().lift(m));
        }
        let (fa, fb) = ((m / self.ram) as i64, (m / other.ram) as i64);
        // nonzero, so each side has a first term or a precision
        let lower = |s: &Self, f: i64| s.terms.keys().next().copied().or(s.prec).unwrap() * f;
        let (la, lb) = (lower(self, fa), lower(other, fb));
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (Some(p), None) => Some(p * fa + lb),
            (None, Some(q)) => Some(q * fb + la),
            (Some(p), Some(q)) => Some((p * fa + lb).min(q * fb + la)),
        };
        let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                let k = ka * fa + kb * fb;
                if prec.is_some_and(|p| k >= p) {
                    break;
                }
                *out.entry(k).or_insert_with(Rat::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Puiseux {
            ram: m,
            terms: out,
            prec,
        })
    }

    /// Multiplicative inverse.
    ///
    /// Monomials invert exactly. Otherwise the result carries `rel_steps` grid
    /// steps of relative precision, or fewer if `self` itself is truncated
    /// more tightly.
    pub fn invert(&self, rel_steps: u32) -> Result<Self> {
        let (v, lead) = match self.terms.iter().next() {
            Some((k, c)) => (*k, c.clone()),
            None if self.is_zero() => {
                return Err(Error::precondition("inverse of the zero series"))
            }
            None => {
                return Err(Error::precision(
                    "inverse of a series whose valuation is unknown",
                ))
            }
        };
        if self.is_monomial() {
            return Ok(Self::from_terms(self.ram, [(-v, lead.recip())], None));
        }
        let mut n = rel_steps.max(1) as i64;
        if let Some(p) = self.prec {
            n = n.min(p - v);
        }
        // f = lead * S^v * (1 + h); walk the coefficient recursion of 1/(1+h).
        let inv_lead = lead.recip();
        let h: Vec<(i64, Rat)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(k, c)| (k - v, c * &inv_lead))
            .take_while(|(j, _)| *j < n)
            .collect();
        let mut b: Vec<Rat> = Vec::with_capacity(n as usize);
        b.push(Rat::one());
        for k in 1..n {
            let mut acc = Rat::zero();
            for (j, a) in &h {
                if *j > k {
                    break;
                }
                let prev = &b[(k - j) as usize];
                if !prev.is_zero() {
                    acc -= a * prev;
                }
            }
            b.push(acc);
        }
        Ok(Self::from_terms(
            self.ram,
            b.into_iter()
                .enumerate()
                .map(|(k, c)| (k as i64 - v, c * &inv_lead)),
            Some(n - v),
        ))
    }

    /// `delta(f) = S df/dS`.
    pub fn delta(&self) -> Self {
        let m = rat::int(self.ram as i64);
        Self::from_terms(
            self.ram,
            self.terms
                .iter()
                .map(|(k, c)| (*k, c * rat::int(*k) / &m)),
            self.prec,
        )
    }

    /// `|f| = r^{v(f)}` for the `S`-adic absolute value with `|S| = r`.
    pub fn abs_value(&self, r: &Rat) -> Result<AbsValue> {
        if !(r.is_positive() && *r < Rat::one()) {
            return Err(Error::precondition(format!(
                "radius must lie in (0,1), got {}",
                rat::format(r)
            )));
        }
        match self.valuation() {
            Valuation::Finite(v) => Ok(AbsValue::Power {
                radius: r.clone(),
                exponent: v,
            }),
            Valuation::Infinite => Ok(AbsValue::Zero),
            Valuation::Unknown => Err(Error::precision(
                "absolute value of a series whose valuation is unknown",
            )),
        }
    }

    /// Gauge unit for a rank-one connection.
    ///
    /// For `f` with no negative exponents, returns `g` with `g(0) = 1` and
    /// `f - delta(g)/g = f(0)` modulo `S^target`. The coefficients solve
    /// `q c_q = sum_{0<l<=q} f_l c_{q-l}` on the exponent grid.
    pub fn gauge_solve(&self, target: &Rat) -> Result<Self> {
        if let Valuation::Finite(v) = self.valuation() {
            if v.is_negative() {
                return Err(Error::precondition(format!(
                    "gauge reduction needs v(f) >= 0, got {}",
                    rat::format(&v)
                )));
            }
        }
        let m = self.ram;
        let mut limit = rat::ceil_grid_index(target, m).max(1);
        if let Some(p) = self.prec {
            if p <= 0 {
                return Err(Error::precision("constant term of f is unknown"));
            }
            limit = limit.min(p);
        }
        let tail: Vec<(i64, &Rat)> = self
            .terms
            .range(1..limit)
            .map(|(k, c)| (*k, c))
            .collect();
        let mut c: Vec<Rat> = vec![Rat::one()];
        for q in 1..limit {
            let mut acc = Rat::zero();
            for (l, fl) in &tail {
                if *l > q {
                    break;
                }
                let prev = &c[(q - l) as usize];
                if !prev.is_zero() {
                    acc += *fl * prev;
                }
            }
            c.push(acc * rat::rat(m as i64, q));
        }
        Ok(Self::from_terms(
            m,
            c.into_iter().enumerate().map(|(k, v)| (k as i64, v)),
            Some(limit),
        ))
    }

    /// True when every known coefficient below `exp` vanishes, i.e. the series
    /// is `O(S^exp)` as far as can be told.
    pub fn vanishes_below(&self, exp: &Rat) -> bool {
        match self.valuation() {
            Valuation::Finite(v) => v >= *exp,
            Valuation::Infinite => true,
            Valuation::Unknown => self.precision().is_some_and(|p| p >= *exp),
        }
    }
}

impl PartialEq for Puiseux {
    fn eq(&self, other: &Self) -> bool {
        let m = rat::lcm(self.ram, other.ram);
        let (a, b) = (self.lift(m), other.lift(m));
        a.prec == b.prec && a.terms == b.terms
    }
}

impl Eq for Puiseux {}

impl Add for &Puiseux {
    type Output = Puiseux;
    fn add(self, other: &Puiseux) -> Puiseux {
        self.combine(other, false)
    }
}

impl Sub for &Puiseux {
    type Output = Puiseux;
    fn sub(self, other: &Puiseux) -> Puiseux {
        self.combine(other, true)
    }
}

impl Neg for &Puiseux {
    type Output = Puiseux;
    fn neg(self) -> Puiseux {
        self.scale(&-Rat::one())
    }
}

impl From<Rat> for Puiseux {
    fn from(c: Rat) -> Self {
        Puiseux::constant(c)
    }
}

pub(crate) fn format_power(base: &str, exp: &Rat) -> String {
    if exp.is_one() {
        base.to_string()
    } else if exp.is_integer() && exp.is_positive() {
        format!("{base}^{}", exp.numer())
    } else {
        format!("{base}^({})", rat::format(exp))
    }
}

/// `c*S^q` as written by the canonical printer.
pub(crate) fn format_monomial(c: &Rat, exp: &Rat) -> String {
    if exp.is_zero() {
        return rat::format(c);
    }
    let mono = format_power("S", exp);
    if c.is_one() {
        mono
    } else if *c == -Rat::one() {
        format!("-{mono}")
    } else {
        format!("{}*{mono}", rat::format(c))
    }
}

/// Joins signed pieces as `a + b - c`.
pub(crate) fn join_signed(pieces: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for (i, p) in pieces.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

impl fmt::Display for Puiseux {
    /// Terms in decreasing exponent order, then the `O(...)` tail if any.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = self
            .terms()
            .rev()
            .map(|(e, c)| format_monomial(c, &e))
            .collect();
        if let Some(p) = self.precision() {
            pieces.push(format!("O({})", format_power("S", &p)));
        }
        if pieces.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", join_signed(pieces))
    }
}
