//! Finite-field checks on the sextic and quintic curve models: root sets
//! mod p, the density of primes with no root, homogenized congruences,
//! local solubility witnesses, point counts and genus 2 Jacobians.

mod jacobian;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime_u64, prime_sieve, FpElement, Rational};
use crate::curves::{model, Equation};
use crate::error::{domain, Error, Result};
use crate::poly::UniPoly;

pub use jacobian::{
    d0_mod7, eight_three_odd_model_mod7, jacobian_group_order, jacobian_order_mod7, point_counts,
    Jacobian, MumfordDivisor,
};

/// Labels accepted by [`named_polynomial`].
pub const NAMED_POLYNOMIALS: [&str; 4] = ["10(3,1,1)", "10(3,2)", "8(4)", "8(3)"];

/// The right-hand side `f` of the model `y² = f(x)` for `label`.
pub fn named_polynomial(label: &str) -> Result<UniPoly<Rational>> {
    if !NAMED_POLYNOMIALS.contains(&label) {
        return domain(format!(
            "no named polynomial {label:?}; expected one of {NAMED_POLYNOMIALS:?}"
        ));
    }
    match model(label)?.equation {
        Equation::Hyper(f) => Ok(f),
        _ => Err(Error::Internal(format!(
            "{label} is not stored as y² = f(x)"
        ))),
    }
}

fn int_coeffs(f: &UniPoly<Rational>) -> Result<Vec<BigInt>> {
    f.coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                domain(format!("{f} has a non-integral coefficient"))
            }
        })
        .collect()
}

/// `f mod p`; may be the zero polynomial.
pub fn reduce(f: &UniPoly<Rational>, p: u64) -> Result<UniPoly<FpElement>> {
    Ok(UniPoly::from_ints_mod(&int_coeffs(f)?, p))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        domain(format!("{p} is not prime"))
    }
}

/// Whether `f` has a root in `F_p`, via `deg gcd(x^p − x, f) > 0`.
pub fn has_root_mod_p(f: &UniPoly<Rational>, p: u64) -> Result<bool> {
    check_prime(p)?;
    let fp = reduce(f, p)?;
    if fp.is_zero() {
        return domain(format!("{f} vanishes mod {p}"));
    }
    Ok(root_gcd_degree(&fp) > 0)
}

fn root_gcd_degree(fp: &UniPoly<FpElement>) -> usize {
    if fp.degree() == Some(0) {
        return 0;
    }
    let p = fp.lead().expect("nonzero").p();
    let x = UniPoly::x(&FpElement::from_u64(p, 0));
    let xp = x.pow_mod(p, fp).sub(&x);
    fp.gcd(&xp).degree().unwrap_or(0)
}

/// Natural-density proxy for the Dirichlet density of `π_f`, the primes
/// modulo which `f` has no root.
#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub limit: u64,
    pub primes: u64,
    pub without_root: u64,
    #[serde(serialize_with = "crate::arith::serialize_rational")]
    pub density: Rational,
    pub kind: &'static str,
}

/// `#{p ≤ limit : p ∈ π_f} / #{p ≤ limit}`.
pub fn density_pi_f(f: &UniPoly<Rational>, limit: u64) -> Result<Rational> {
    Ok(density_report(f, limit)?.density)
}

pub fn density_report(f: &UniPoly<Rational>, limit: u64) -> Result<DensityReport> {
    if limit < 100 {
        return domain(format!("density limit {limit} below 100"));
    }
    let cs = int_coeffs(f)?;
    let primes = prime_sieve(limit);
    let without_root = primes
        .par_iter()
        .filter(|&&p| {
            let fp = UniPoly::from_ints_mod(&cs, p);
            // a prime dividing every coefficient has every residue as a root
            !fp.is_zero() && root_gcd_degree(&fp) == 0
        })
        .count() as u64;
    let n = primes.len() as u64;
    Ok(DensityReport {
        limit,
        primes: n,
        without_root,
        density: Rational::new(without_root.into(), n.into()),
        kind: "natural density proxy",
    })
}

/// `d^k f(n/d)` with `k = deg f`.
pub fn homog_eval_g(f: &UniPoly<Rational>, n: &BigInt, d: &BigInt) -> Result<BigInt> {
    let cs = int_coeffs(f)?;
    let k = cs.len().saturating_sub(1);
    let mut acc = BigInt::zero();
    for (i, a) in cs.iter().enumerate() {
        acc += a * num_traits::pow(n.clone(), i) * num_traits::pow(d.clone(), k - i);
    }
    Ok(acc)
}

/// `g(n, d) ≡ 1 (mod 8)` whenever `n, d` are not both even.
pub fn congruence_mod8_exhaustive(f: &UniPoly<Rational>) -> Result<bool> {
    let eight = BigInt::from(8);
    for n in 0..8i64 {
        for d in 0..8i64 {
            if n % 2 == 0 && d % 2 == 0 {
                continue;
            }
            if homog_eval_g(f, &n.into(), &d.into())?.mod_floor(&eight) != BigInt::one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `9 | g(n, d)` forces `3 | n` and `3 | d`.
pub fn congruence_mod9_exhaustive(f: &UniPoly<Rational>) -> Result<bool> {
    let nine = BigInt::from(9);
    for n in 0..9i64 {
        for d in 0..9i64 {
            let g = homog_eval_g(f, &n.into(), &d.into())?;
            if g.mod_floor(&nine).is_zero() && (n % 3 != 0 || d % 3 != 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest integer dividing every integer value of `f`: the gcd of
/// `f(0), …, f(deg f)`.
pub fn value_content(f: &UniPoly<Rational>) -> Result<BigInt> {
    let cs = int_coeffs(f)?;
    let mut g = BigInt::zero();
    for x in 0..cs.len() as i64 {
        let x = BigInt::from(x);
        let v = cs.iter().rev().fold(BigInt::zero(), |acc, a| acc * &x + a);
        g = g.gcd(&v);
    }
    Ok(g)
}

fn ord_p(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    Some(k)
}

/// A local solubility witness: `h y0² ≡ f(x0) (mod p^(2(v+ε)+1))` with
/// `ord_p(y0) = v + ε`, where `ε` is the parity of `ord_p(D)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaWitness {
    pub p: u64,
    pub h: i64,
    pub x0: i64,
    pub y0: i64,
    pub v: u32,
    pub epsilon: u32,
}

impl SigmaWitness {
    /// Fills in `ε` from `f`.
    pub fn new(f: &UniPoly<Rational>, p: u64, h: i64, x0: i64, y0: i64, v: u32) -> Result<Self> {
        check_prime(p)?;
        let d = value_content(f)?;
        let epsilon =
            ord_p(&d, p).ok_or_else(|| Error::Domain(format!("{f} vanishes identically")))? % 2;
        Ok(SigmaWitness {
            p,
            h,
            x0,
            y0,
            v,
            epsilon,
        })
    }
}

/// Checks both witness conditions and that `ε` matches `f`.
pub fn sigma_check(f: &UniPoly<Rational>, w: &SigmaWitness) -> Result<bool> {
    let expect = SigmaWitness::new(f, w.p, w.h, w.x0, w.y0, w.v)?;
    if expect.epsilon != w.epsilon {
        return Ok(false);
    }
    let e = w.v + w.epsilon;
    let modulus = num_traits::pow(BigInt::from(w.p), (2 * e + 1) as usize);
    let cs = int_coeffs(f)?;
    let x0 = BigInt::from(w.x0);
    let fx = cs.iter().rev().fold(BigInt::zero(), |acc, a| acc * &x0 + a);
    let y0 = BigInt::from(w.y0);
    let lhs = BigInt::from(w.h) * &y0 * &y0;
    Ok((lhs - fx).mod_floor(&modulus).is_zero() && ord_p(&y0, w.p) == Some(e))
}

/// The seven `(p, h, x0, y0)` witnesses on the 8(4) model, each with `v = 1`.
pub const EIGHT_FOUR_WITNESSES: [(u64, i64, i64, i64); 7] = [
    (2, 1, 16, 4),
    (3, 1, 9, 3),
    (3, 2, 18, 3),
    (5, 1, 25, 5),
    (5, 2, 18, 5),
    (5, 3, 75, 5),
    (5, 4, 7, 5),
];

pub fn eight_four_witnesses() -> Result<Vec<SigmaWitness>> {
    let f = named_polynomial("8(4)")?;
    EIGHT_FOUR_WITNESSES
        .iter()
        .map(|&(p, h, x0, y0)| SigmaWitness::new(&f, p, h, x0, y0, 1))
        .collect()
}

/// `#{(x, y) ∈ F_p² : r y² = f(x), y ≠ 0}`.
pub fn count_nontrivial_points(f: &UniPoly<Rational>, p: u64, r: i64) -> Result<u64> {
    check_prime(p)?;
    if p == 2 {
        return domain("nontrivial points are counted for odd p only");
    }
    let r = FpElement::new(p, r);
    let rinv = r
        .inv()
        .ok_or_else(|| Error::Domain(format!("r ≡ 0 mod {p}")))?;
    let fp = reduce(f, p)?;
    // quadratic character table
    let mut square = vec![false; p as usize];
    for y in 1..p {
        square[((y * y) % p) as usize] = true;
    }
    let mut count = 0;
    for x in 0..p {
        let w = fp.eval(&FpElement::from_u64(p, x)) * rinv;
        if square[w.value() as usize] {
            count += 2;
        }
    }
    Ok(count)
}

/// `⌊p + 1 − 4√p⌋`, computed as `p + 1 − ⌈√(16p)⌉`.
pub fn hasse_weil_floor(p: u64) -> Result<i64> {
    check_prime(p)?;
    let m = 16 * p;
    let s = m.isqrt();
    let ceil = if s * s == m { s } else { s + 1 };
    Ok(p as i64 + 1 - ceil as i64)
}

/// Certificate that `p + 1 − 4√p ≥ 7` for every real `p ≥ 29`. For
/// `p ≥ 6` the claim is `(p − 6)² ≥ 16p`, i.e. `q(p) = p² − 28p + 36 ≥ 0`.
/// `q` increases for `p ≥ 14`, so `q(29) ≥ 0` settles it.
pub fn hasse_weil_certificate() -> bool {
    let q = |p: i64| p * p - 28 * p + 36;
    let increasing_from = 14;
    29 >= increasing_from && 29 >= 6 && q(29) >= 0
}

/// The smallest prime `p` from which the Hasse–Weil floor stays `≥ bound`.
pub fn hasse_weil_threshold(bound: i64, search_to: u64) -> Result<Option<u64>> {
    let mut last_bad = None;
    for p in prime_sieve(search_to) {
        if hasse_weil_floor(p)? < bound {
            last_bad = Some(p);
        }
    }
    Ok(prime_sieve(search_to)
        .into_iter()
        .find(|&p| last_bad.is_none_or(|b| p > b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ten311() -> UniPoly<Rational> {
        named_polynomial("10(3,1,1)").unwrap()
    }

    #[test]
    fn root_examples() {
        let f = ten311();
        assert!(!has_root_mod_p(&f, 5).unwrap());
        assert!(!has_root_mod_p(&f, 7).unwrap());
        assert!(has_root_mod_p(&f, 3).unwrap());
        assert!(!has_root_mod_p(&f, 2).unwrap());
        assert!(has_root_mod_p(&f, 9).is_err());
        let zero_mod_3 = UniPoly::from_ints(&[3, 6]);
        assert!(has_root_mod_p(&zero_mod_3, 3).is_err());
    }

    #[test]
    fn homogenized_values() {
        let f = ten311();
        let g = |n: i64, d: i64| homog_eval_g(&f, &n.into(), &d.into()).unwrap();
        assert_eq!(g(1, 1), 33.into());
        assert_eq!(g(1, 0), 1.into());
        assert_eq!(g(0, 1), 1.into());
    }

    #[test]
    fn congruences_and_controls() {
        for l in ["10(3,1,1)", "10(3,2)"] {
            let f = named_polynomial(l).unwrap();
            assert!(congruence_mod8_exhaustive(&f).unwrap(), "{l}");
            assert!(congruence_mod9_exhaustive(&f).unwrap(), "{l}");
        }
        // g(0, 1) = 7 and g(1, 1) = 9
        let control = UniPoly::from_ints(&[7, 1, 0, 0, 0, 0, 1]);
        assert!(!congruence_mod8_exhaustive(&control).unwrap());
        assert!(!congruence_mod9_exhaustive(&UniPoly::from_ints(&[8, 0, 0, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn witnesses_verify() {
        let f = named_polynomial("8(4)").unwrap();
        assert_eq!(value_content(&f).unwrap(), 2.into());
        let ws = eight_four_witnesses().unwrap();
        assert_eq!(ws[0].epsilon, 1);
        assert!(ws[1..].iter().all(|w| w.epsilon == 0));
        for w in &ws {
            assert!(sigma_check(&f, w).unwrap(), "{w:?}");
        }
        let mut bad = ws[3].clone();
        bad.h = 2;
        assert!(!sigma_check(&f, &bad).unwrap());
        let mut wrong_eps = ws[0].clone();
        wrong_eps.epsilon = 0;
        assert!(!sigma_check(&f, &wrong_eps).unwrap());
    }

    #[test]
    fn nontrivial_counts() {
        let f = named_polynomial("8(4)").unwrap();
        assert!(count_nontrivial_points(&f, 7, 1).unwrap() >= 1);
        // x³ − x + 2 ≡ 2 on F_3, a nonsquare
        let g = UniPoly::from_ints(&[2, -1, 0, 1]);
        assert_eq!(count_nontrivial_points(&g, 3, 1).unwrap(), 0);
        assert!(count_nontrivial_points(&f, 7, 0).is_err());
    }

    #[test]
    fn hasse_weil_examples() {
        assert_eq!(hasse_weil_floor(29).unwrap(), 8);
        assert_eq!(hasse_weil_floor(23).unwrap(), 4);
        assert!(hasse_weil_floor(4).is_err());
        assert!(hasse_weil_certificate());
        assert_eq!(hasse_weil_threshold(7, 200).unwrap(), Some(29));
    }

    #[test]
    fn density_of_the_identity() {
        assert_eq!(
            density_pi_f(&UniPoly::from_ints(&[0, 1]), 1000).unwrap(),
            Rational::zero()
        );
        assert!(density_pi_f(&UniPoly::from_ints(&[0, 1]), 10).is_err());
    }
}
