//! Factorization over the rationals.
//!
//! A squarefree primitive integer polynomial is factored modulo a single
//! prime larger than twice the Mignotte-style coefficient bound (scaled by the
//! leading coefficient), so no Hensel lifting is needed; true factors are then
//! recovered by recombining subsets of the modular factors.

use num_bigint::{BigInt, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::UniPoly;

/// Monic irreducible factors of `p` over the rationals with multiplicities,
/// sorted by degree then coefficients.
pub fn factor_over_q(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in factor_squarefree_integer(&part.primitive_integer()) {
            out.push((UniPoly::from_integer_coeffs(&f).monic(), mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.cmp(&b.0))
    });
    out
}

/// Irreducible factors of a squarefree, primitive integer polynomial (given
/// in ascending coefficient order, positive leading coefficient).
pub fn factor_squarefree_integer(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let f = trim(f.to_vec());
    let deg = f.len().saturating_sub(1);
    if deg <= 1 {
        return if deg == 1 { vec![f] } else { Vec::new() };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let lc = f[deg].abs();
    // Any integer factor g of f has |g_i| <= 2^deg * ||f||_1; we recover
    // lc * g in the symmetric range, so twice lc times that suffices.
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << deg) * norm1 * &lc * 2u32 + 1u32;
    let mut p = next_prime(&bound, &mut rng);
    loop {
        if !(&lc % &p).is_zero() {
            let fp = reduce(&f, &p);
            let dfp = derivative_mod(&fp, &p);
            if degree(&gcd_mod(&fp, &dfp, &p)) == Some(0) {
                break;
            }
        }
        p = next_prime(&(p + 1u32), &mut rng);
    }
    let monic = make_monic(&reduce(&f, &p), &p);
    let mut modular = Vec::new();
    for (g, d) in distinct_degree(&monic, &p) {
        equal_degree(&g, d, &p, &mut rng, &mut modular);
    }
    recombine(f, modular, &p)
}

fn recombine(mut f: Vec<BigInt>, mut modular: Vec<Vec<BigInt>>, p: &BigInt) -> Vec<Vec<BigInt>> {
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= modular.len() {
        let n = modular.len();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.last().unwrap().clone();
            let mut cand = vec![lc.clone()];
            for &i in &subset {
                cand = mul_mod(&cand, &modular[i], p);
            }
            let cand = primitive(symmetric(&cand, p));
            if let Some(q) = exact_div_integer(&f, &cand) {
                found.push(cand);
                f = q;
                for &i in subset.iter().rev() {
                    modular.remove(i);
                }
                continue 'outer;
            }
            if !next_subset(&mut subset, n) {
                break;
            }
        }
        size += 1;
    }
    if f.len() > 1 {
        found.push(primitive(f));
    }
    found
}

fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn degree(v: &[BigInt]) -> Option<usize> {
    v.len().checked_sub(1)
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = trim(v);
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    let sign = if v.last().unwrap().is_negative() { -1 } else { 1 };
    v.into_iter().map(|c| c / &g * BigInt::from(sign)).collect()
}

fn symmetric(v: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let half = p >> 1;
    v.iter()
        .map(|c| {
            let c = c.mod_floor(p);
            if c > half {
                c - p
            } else {
                c
            }
        })
        .collect()
}

/// `f / g` over the integers, if it divides exactly.
fn exact_div_integer(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = degree(g)?;
    if dg == 0 || f.len() <= dg {
        return None;
    }
    let mut rem = f.to_vec();
    let mut quot = vec![BigInt::zero(); f.len() - dg];
    let lg = &g[dg];
    for i in (0..quot.len()).rev() {
        let (q, r) = rem[i + dg].div_rem(lg);
        if !r.is_zero() {
            return None;
        }
        for (j, d) in g.iter().enumerate() {
            rem[i + j] -= &q * d;
        }
        quot[i] = q;
    }
    rem.iter().all(|c| c.is_zero()).then_some(quot)
}

// --- arithmetic in F_p[x] ---------------------------------------------------

fn reduce(v: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    trim(v.iter().map(|c| c.mod_floor(p)).collect())
}

fn inv_mod(a: &BigInt, p: &BigInt) -> BigInt {
    a.modpow(&(p - 2u32), p)
}

fn make_monic(v: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let inv = inv_mod(v.last().unwrap(), p);
    reduce(&v.iter().map(|c| c * &inv).collect::<Vec<_>>(), p)
}

fn derivative_mod(v: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    reduce(
        &v.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect::<Vec<_>>(),
        p,
    )
}

fn sub_mod(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect::<Vec<_>>(),
        p,
    )
}

fn mul_mod(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, p)
}

fn divrem_mod(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = inv_mod(&b[db], p);
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), reduce(&rem, p));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = (&rem[i + db] * &inv).mod_floor(p);
        if c.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            rem[i + j] = (&rem[i + j] - &c * d).mod_floor(p);
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (reduce(&quot, p), reduce(&rem, p))
}

fn gcd_mod(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let (mut a, mut b) = (reduce(a, p), reduce(b, p));
    while !b.is_empty() {
        let r = divrem_mod(&a, &b, p).1;
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        make_monic(&a, p)
    }
}

fn powmod(base: &[BigInt], exp: &BigInt, modulus: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut result = vec![BigInt::one()];
    let mut b = divrem_mod(base, modulus, p).1;
    let bits = exp.bits();
    for i in 0..bits {
        if exp.bit(i) {
            result = divrem_mod(&mul_mod(&result, &b, p), modulus, p).1;
        }
        if i + 1 < bits {
            b = divrem_mod(&mul_mod(&b, &b, p), modulus, p).1;
        }
    }
    result
}

/// Splits a monic squarefree `f` into products of irreducibles of equal
/// degree: `(product, degree)`.
fn distinct_degree(f: &[BigInt], p: &BigInt) -> Vec<(Vec<BigInt>, usize)> {
    let mut out = Vec::new();
    let x = vec![BigInt::zero(), BigInt::one()];
    let mut rest = f.to_vec();
    let mut h = x.clone();
    let mut d = 1;
    while degree(&rest).unwrap_or(0) >= 2 * d {
        h = powmod(&h, p, &rest, p);
        let g = gcd_mod(&rest, &sub_mod(&h, &x, p), p);
        if degree(&g).unwrap_or(0) > 0 {
            rest = divrem_mod(&rest, &g, p).0;
            h = divrem_mod(&h, &rest, p).1;
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(dr) = degree(&rest) {
        if dr > 0 {
            out.push((rest, dr));
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree(
    f: &[BigInt],
    d: usize,
    p: &BigInt,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Vec<BigInt>>,
) {
    let n = degree(f).unwrap();
    if n == d {
        out.push(f.to_vec());
        return;
    }
    let exp = (p.pow(d as u32) - 1u32) >> 1;
    loop {
        let a: Vec<BigInt> = (0..n).map(|_| rng.gen_bigint_range(&BigInt::zero(), p)).collect();
        let a = reduce(&a, p);
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = sub_mod(&powmod(&a, &exp, f, p), &[BigInt::one()], p);
        let g = gcd_mod(f, &b, p);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let other = divrem_mod(f, &g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&make_monic(&other, p), d, p, rng, out);
            return;
        }
    }
}

// --- primes -------------------------------------------------------------------

fn next_prime(start: &BigInt, rng: &mut ChaCha8Rng) -> BigInt {
    let mut n = start.clone();
    if n.is_even() {
        n += 1u32;
    }
    while !is_probable_prime(&n, rng) {
        n += 2u32;
    }
    n
}

fn is_probable_prime(n: &BigInt, rng: &mut ChaCha8Rng) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigInt::from(small);
        if *n == s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let mut d = n1.clone();
    let mut r = 0;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'witness: for _ in 0..32 {
        let a = rng.gen_bigint_range(&two, &n1);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..r {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    debug_assert!(n.sign() == Sign::Plus);
    true
}
