//! Exact rationals and the small amount of number theory the rest of the
//! crate leans on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p`, `p/q` (surrounding whitespace allowed).
pub fn parse(text: &str) -> Result<Rat> {
    let t = text.trim();
    let bad = || Error::parse(0, format!("not a rational number: {t:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::parse(0, "zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// `p` for integers, `p/q` otherwise.
pub fn format(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn den_u32(q: &Rat) -> u32 {
    q.denom()
        .to_u32()
        .expect("exponent denominator exceeds u32")
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// `q * m` as an integer, or `None` when `q` is not on the `(1/m)Z` grid.
pub fn to_grid(q: &Rat, m: u32) -> Option<i64> {
    let scaled = q * int(m as i64);
    if scaled.is_integer() {
        scaled.numer().to_i64()
    } else {
        None
    }
}

pub fn from_grid(k: i64, m: u32) -> Rat {
    rat(k, m as i64)
}

/// Largest element of `(1/m)Z` that is `<= q`.
pub fn floor_to_grid(q: &Rat, m: u32) -> Rat {
    let scaled = (q * int(m as i64)).floor();
    scaled / int(m as i64)
}

/// Smallest grid index `k` with `k/m >= q`.
pub fn ceil_grid_index(q: &Rat, m: u32) -> i64 {
    (q * int(m as i64))
        .ceil()
        .to_integer()
        .to_i64()
        .expect("grid index overflow")
}

/// Exact value of `base^exp` when it is rational.
pub fn rational_power(base: &Rat, exp: &Rat) -> Option<Rat> {
    if base.is_zero() {
        return if exp.is_positive() { Some(Rat::zero()) } else { None };
    }
    let k = exp.denom().to_u32()?;
    let a = exp.numer().to_i32()?;
    let root = |n: &BigInt| -> Option<BigInt> {
        if n.is_negative() {
            return None;
        }
        let r = n.nth_root(k);
        (r.pow(k) == *n).then_some(r)
    };
    if base.is_negative() && k > 1 {
        return None;
    }
    let (n, d) = (base.numer().abs(), base.denom().clone());
    let sign = if base.is_negative() { -Rat::one() } else { Rat::one() };
    let r = Rat::new(root(&n)?, root(&d)?) * sign;
    Some(pow_i32(&r, a))
}

pub fn pow_i32(q: &Rat, e: i32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e.unsigned_abs() {
        out *= q;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

pub fn binomial(n: usize, k: usize) -> Rat {
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(out)
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod as_string {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(format(&rat(4, 2)), "2");
        assert_eq!(format(&rat(-5, 6)), "-5/6");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn exact_powers() {
        assert_eq!(rational_power(&rat(1, 4), &rat(-1, 2)), Some(int(2)));
        assert_eq!(rational_power(&rat(1, 2), &int(-1)), Some(int(2)));
        assert_eq!(rational_power(&rat(1, 2), &rat(1, 2)), None);
        assert_eq!(rational_power(&rat(8, 27), &rat(2, 3)), Some(rat(4, 9)));
    }

    #[test]
    fn grid_helpers() {
        assert_eq!(to_grid(&rat(3, 2), 4), Some(6));
        assert_eq!(to_grid(&rat(1, 3), 2), None);
        assert_eq!(floor_to_grid(&rat(-1, 3), 2), rat(-1, 2));
        assert_eq!(ceil_grid_index(&rat(1, 3), 2), 1);
        assert_eq!(binomial(5, 2), int(10));
    }
}
