//! Randomized property checks over the whole pipeline.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diffop::{block_diag, DiffOperator};
use crate::error::Result;
use crate::exponents::{cosets_from_poly, ExponentCoset};
use crate::gen::Gen;
use crate::newton::newton_polygon;
use crate::poly::UniPoly;
use crate::ramify::{check_eq22, Module};
use crate::rat::{self, Rat};
use crate::series::Puiseux;
use crate::spectrum::{
    spectrum_of_matrix, spectrum_of_operator, spectrum_rank1, union, verify_operator_spectrum,
};

const REL_STEPS: u32 = 50;

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Cases per property; zero runs nothing.
    pub count: usize,
    /// Replace the derivation in the commutation rule by `f -> delta(f) + f`,
    /// which breaks the Leibniz rule. A negative control.
    pub corrupt_derivation: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// The first failing case.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub count: usize,
    pub properties: Vec<PropertyResult>,
    pub passed: bool,
}

pub fn selftest(seed: u64, count: usize) -> SelftestReport {
    selftest_with(&SelftestOptions {
        seed,
        count,
        corrupt_derivation: false,
    })
}

type Derivation = dyn Fn(&Puiseux) -> Puiseux;

/// A check returns `Ok(None)` on success and `Ok(Some(witness))` on
/// failure; errors count as failures too.
type Check = fn(&mut Gen, &Derivation) -> Result<Option<String>>;

pub fn selftest_with(opts: &SelftestOptions) -> SelftestReport {
    let honest = |f: &Puiseux| f.delta();
    let corrupt = |f: &Puiseux| &f.delta() + f;
    let derivation: &Derivation = if opts.corrupt_derivation { &corrupt } else { &honest };

    let checks: [(&str, Check); 9] = [
        ("leibniz", leibniz),
        ("associativity", associativity),
        ("action_compatibility", action_compatibility),
        ("polygon_additivity", polygon_additivity),
        ("direct_sum", direct_sum),
        ("ramification_translates", ramification),
        ("factor_vs_edge", factor_vs_edge),
        ("gauge_invariance", gauge_invariance),
        ("coset_normalization", coset_normalization),
    ];
    let mut properties = Vec::new();
    if opts.count > 0 {
        for (k, (name, check)) in checks.iter().enumerate() {
            let mut gen = Gen::new(opts.seed.wrapping_mul(31).wrapping_add(k as u64));
            let mut result = PropertyResult {
                name: name.to_string(),
                cases: opts.count,
                failures: 0,
                witness: None,
            };
            for case in 0..opts.count {
                let outcome = match check(&mut gen, derivation) {
                    Ok(None) => None,
                    Ok(Some(w)) => Some(w),
                    Err(e) => Some(format!("error {}: {e}", e.code())),
                };
                if let Some(w) = outcome {
                    result.failures += 1;
                    result.witness.get_or_insert(format!("case {case}: {w}"));
                }
            }
            properties.push(result);
        }
    }
    let passed = properties.iter().all(|p| p.failures == 0);
    SelftestReport {
        seed: opts.seed,
        count: opts.count,
        properties,
        passed,
    }
}

fn small_ram(g: &mut Gen) -> u32 {
    if g.range(0, 3) == 0 {
        2
    } else {
        1
    }
}

fn leibniz(g: &mut Gen, delta: &Derivation) -> Result<Option<String>> {
    let ram = small_ram(g);
    let f = g.series(ram, -3, 3, 3);
    let h = g.series(ram, -3, 3, 3);
    let fh = f.mul(&h)?;
    let direct = delta(&fh);
    let split = &delta(&f).mul(&h)? + &f.mul(&delta(&h))?;
    let d = DiffOperator::d();
    let (fo, ho) = (DiffOperator::from_series(f.clone()), DiffOperator::from_series(h.clone()));
    let lhs = d.op_mul_with(&fo, delta)?.op_mul_with(&ho, delta)?;
    let rhs = d.op_mul_with(&DiffOperator::from_series(fh), delta)?;
    Ok((direct != split || lhs != rhs).then(|| format!("f = {f}, g = {h}")))
}

fn associativity(g: &mut Gen, delta: &Derivation) -> Result<Option<String>> {
    let ram = small_ram(g);
    let ops: Vec<DiffOperator> = (0..3)
        .map(|_| {
            let deg = g.range(0, 2) as usize;
            g.operator(deg, ram, -2, 2)
        })
        .collect();
    let (p, q, r) = (&ops[0], &ops[1], &ops[2]);
    let lhs = p.op_mul_with(q, delta)?.op_mul_with(r, delta)?;
    let rhs = p.op_mul_with(&q.op_mul_with(r, delta)?, delta)?;
    Ok((lhs != rhs).then(|| format!("P = {p}, Q = {q}, R = {r}")))
}

fn action_compatibility(g: &mut Gen, _: &Derivation) -> Result<Option<String>> {
    let ram = small_ram(g);
    let p = g.operator(2, ram, -2, 2);
    let q = g.operator(2, ram, -2, 2);
    let f = g.series(ram, -2, 2, 3);
    let lhs = p.op_mul(&q)?.apply(&f)?;
    let rhs = p.apply(&q.apply(&f)?)?;
    Ok((lhs != rhs).then(|| format!("P = {p}, Q = {q}, f = {f}")))
}

fn edge_widths(p: &DiffOperator) -> Result<BTreeMap<Rat, usize>> {
    let mut out = BTreeMap::new();
    for e in newton_polygon(p)?.edges {
        *out.entry(e.slope).or_insert(0) += e.width;
    }
    Ok(out)
}

fn polygon_additivity(g: &mut Gen, _: &Derivation) -> Result<Option<String>> {
    let ram = small_ram(g);
    let (da, db) = (g.range(1, 2) as usize, g.range(1, 2) as usize);
    let p = g.monic_operator(da, ram, -3, 2);
    let q = g.monic_operator(db, ram, -3, 2);
    let pq = p.op_mul(&q)?;
    let mut expected = edge_widths(&p)?;
    for (s, w) in edge_widths(&q)? {
        *expected.entry(s).or_insert(0) += w;
    }
    let got = edge_widths(&pq)?;
    Ok((got != expected).then(|| format!("P = {p}, Q = {q}")))
}

fn direct_sum(g: &mut Gen, _: &Derivation) -> Result<Option<String>> {
    let d1 = g.range(1, 2) as usize;
    let p1 = g.monic_operator(d1, 1, -2, 1);
    let p2 = g.monic_operator(1, 1, -2, 1);
    let m = block_diag(&[p1.companion()?, p2.companion()?])?;
    let lhs = spectrum_of_matrix(&m, REL_STEPS)?;
    let rhs = union(&spectrum_of_operator(&p1)?, &spectrum_of_operator(&p2)?)?;
    Ok((lhs != rhs).then(|| format!("P1 = {p1}, P2 = {p2}: {lhs} vs {rhs}")))
}

fn ramification(g: &mut Gen, _: &Derivation) -> Result<Option<String>> {
    let (deg, ram) = (g.range(1, 2) as usize, small_ram(g));
    let p = g.monic_operator(deg, ram, -2, 1);
    let m = g.range(2, 3) as u32;
    let ok = check_eq22(&Module::Operator(p.clone()), m, REL_STEPS)?;
    Ok((!ok).then(|| format!("P = {p}, m = {m}")))
}

fn factor_vs_edge(g: &mut Gen, _: &Derivation) -> Result<Option<String>> {
    let deg = g.range(2, 3) as usize;
    let p = if g.range(0, 1) == 0 {
        g.rank_one_product(deg, 2).0
    } else {
        g.monic_operator(deg, 1, -2, 1)
    };
    let sp = spectrum_of_operator(&p)?;
    match verify_operator_spectrum(&p, &sp, REL_STEPS) {
        Ok(_) => Ok(None),
        Err(e) => Ok(Some(format!("P = {p}: {e}"))),
    }
}

fn gauge_invariance(g: &mut Gen, _: &Derivation) -> Result<Option<String>> {
    let deg = g.range(1, 3) as usize;
    let p = g.monic_operator(deg, 1, -2, 1);
    let exps: Vec<Rat> = (0..p.degree()).map(|_| rat::int(g.range(-2, 2))).collect();
    let conj = p.companion()?.gauge_diag(&exps)?;
    let a = spectrum_of_matrix(&conj, REL_STEPS)?;
    let b = spectrum_of_operator(&p)?;
    if a != b {
        return Ok(Some(format!("P = {p}, gauge exponents {exps:?}: {a} vs {b}")));
    }
    let f = g.series(1, -2, 2, 3);
    let unit = &Puiseux::one() + &g.series(1, 1, 3, 2);
    let log_der = unit.delta().mul(&unit.invert(REL_STEPS)?)?;
    let moved = &f + &log_der;
    let r1 = spectrum_rank1(&f)?;
    let r2 = spectrum_rank1(&moved)?;
    let via_operator = spectrum_of_operator(&DiffOperator::monic(vec![-&moved]))?;
    Ok((r1 != r2 || r1 != via_operator).then(|| format!("f = {f}, unit = {unit}")))
}

fn random_poly(g: &mut Gen) -> UniPoly {
    if g.range(0, 1) == 0 {
        let root = &g.coeff() + &rat::int(g.range(-3, 3));
        UniPoly::from_roots(&[root])
    } else {
        UniPoly::new(vec![g.coeff(), g.coeff(), rat::int(1)])
    }
}

fn shares_shifted_root(a: &UniPoly, b: &UniPoly) -> bool {
    let bound = (a.cauchy_bound() + b.cauchy_bound()).ceil().to_integer();
    let bound: i64 = bound.try_into().unwrap_or(i64::MAX);
    (-bound..=bound).any(|n| a.resultant(&b.shift(&rat::int(n))) == Rat::from_integer(0.into()))
}

fn coset_normalization(g: &mut Gen, _: &Derivation) -> Result<Option<String>> {
    let m = small_ram(g);
    let p = random_poly(g);
    let cs = cosets_from_poly(&p, m);
    for c in &cs {
        let again = ExponentCoset::new(c.poly(), m);
        let mean = c.root_mean();
        if again != *c || mean < rat::int(0) || mean >= rat::rat(1, m as i64) {
            return Ok(Some(format!("normalization of {p} gives {c}")));
        }
    }
    let a = cosets_from_poly(&p, 1)[0].clone();
    let q = if g.range(0, 1) == 0 {
        a.poly().shift(&rat::int(g.range(-3, 3)))
    } else {
        random_poly(g)
    };
    let b = cosets_from_poly(&q, 1)[0].clone();
    let structural = a == b;
    let oracle = a.degree() == b.degree() && shares_shifted_root(a.poly(), b.poly());
    Ok((structural != oracle).then(|| format!("{a} vs {b}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_run_passes() {
        let r = selftest(7, 0);
        assert!(r.passed && r.properties.is_empty());
    }

    #[test]
    fn short_run_passes() {
        let r = selftest(0, 3);
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn corrupted_derivation_is_caught() {
        let r = selftest_with(&SelftestOptions {
            seed: 1,
            count: 5,
            corrupt_derivation: true,
        });
        assert!(!r.passed);
        let leib = r.properties.iter().find(|p| p.name == "leibniz").unwrap();
        assert!(leib.failures > 0 && leib.witness.is_some());
    }
}
