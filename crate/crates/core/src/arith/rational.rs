use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` from machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ratio(n: BigInt, d: BigInt) -> Rational {
    Rational::new(n, d)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` (whitespace tolerated).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Always `p/q` form, even for integers.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serializes a rational as the string `"p/q"`.
pub fn serialize_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

/// Naive height `max(|p|, q)`.
pub fn height(r: &Rational) -> BigInt {
    let n = r.numer().abs();
    if &n > r.denom() {
        n
    } else {
        r.denom().clone()
    }
}

/// Exact integer square root, if `n` is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Nonnegative rational square root, if one exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = int_sqrt_exact(r.numer())?;
    let d = int_sqrt_exact(r.denom())?;
    Some(Rational::new(n, d))
}

/// `p`-adic valuation of a nonzero rational. Returns `None` for zero.
pub fn v_p(r: &Rational, p: &BigInt) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(int_val(r.numer(), p) as i64 - int_val(r.denom(), p) as i64)
}

pub(crate) fn int_val(n: &BigInt, p: &BigInt) -> u64 {
    let mut n = n.clone();
    let mut k = 0;
    if n.is_zero() {
        return u64::MAX;
    }
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}
