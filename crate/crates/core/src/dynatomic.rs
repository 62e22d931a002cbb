//! Dynatomic polynomials of `f_c(z) = z^2 + c` and the counting functions
//! `D(n)`, `R(n)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{factor_u64, mobius_u64};
use crate::error::{domain, Result};
use crate::poly::BiPoly;

pub fn mobius(n: i64) -> Result<i32> {
    if n < 1 {
        return domain(format!("mobius({n}) undefined"));
    }
    Ok(mobius_u64(n as u64))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor_u64(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// `D(n) = sum_{d | n} mu(n/d) 2^d`, the `z`-degree of `Phi_n`.
pub fn degree_d(n: u32) -> Result<u128> {
    if n == 0 || n > 120 {
        return domain(format!("degree_D({n}) outside 1..=120"));
    }
    let mut s: i128 = 0;
    for d in divisors(n as u64) {
        s += mobius_u64(n as u64 / d) as i128 * (1i128 << d);
    }
    Ok(s as u128)
}

/// `R(n) = D(n)/n`, the maximal number of `n`-cycles.
pub fn cycle_bound_r(n: u32) -> Result<u128> {
    Ok(degree_d(n)? / n as u128)
}

/// `f_c^k(z)` in `Z[c, z]`.
pub fn iterate_poly(k: u32) -> BiPoly {
    let mut p = BiPoly::z();
    for _ in 0..k {
        p = p.square().add(&BiPoly::c());
    }
    p
}

type Cache = Mutex<HashMap<(u32, u32), Arc<BiPoly>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: (u32, u32), build: impl FnOnce() -> Result<BiPoly>) -> Result<Arc<BiPoly>> {
    if let Some(p) = cache().lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    // Built outside the lock; a racing thread computes the same value.
    let p = Arc::new(build()?);
    cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| p.clone());
    Ok(p)
}

/// `Phi_n = prod_{d | n} (f^d(z) - z)^{mu(n/d)}`, each negative exponent
/// realised by a checked exact division. Memoised.
pub fn dynatomic(n: u32) -> Result<Arc<BiPoly>> {
    if n == 0 {
        return domain("dynatomic(0) undefined");
    }
    cached((0, n), || {
        let mut num = BiPoly::one();
        let mut den = Vec::new();
        for d in divisors(n as u64) {
            let factor = iterate_poly(d as u32).sub(&BiPoly::z());
            match mobius_u64(n as u64 / d) {
                1 => num = num.mul(&factor),
                -1 => den.push(factor),
                _ => {}
            }
        }
        for d in den {
            num = num.div_exact(&d)?;
        }
        Ok(num)
    })
}

/// `Phi_{m,n} = Phi_n(f^m(z)) / Phi_n(f^{m-1}(z))`.
pub fn gen_dynatomic(m: u32, n: u32) -> Result<Arc<BiPoly>> {
    if m == 0 || n == 0 {
        return domain(format!("gen_dynatomic({m},{n}) needs m, n >= 1"));
    }
    cached((m, n), || {
        let mut prev = (*dynatomic(n)?).clone();
        for _ in 1..m {
            prev = prev.compose_f();
        }
        prev.compose_f().div_exact(&prev)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn small_values() {
        let ds: Vec<u128> = (1..=6).map(|n| degree_d(n).unwrap()).collect();
        assert_eq!(ds, vec![2, 2, 6, 12, 30, 54]);
        assert_eq!(cycle_bound_r(6).unwrap(), 9);
        assert_eq!(cycle_bound_r(18).unwrap(), 14532);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn printed_forms() {
        assert_eq!(dynatomic(1).unwrap().to_string(), "z^2 - z + c");
        assert_eq!(dynatomic(2).unwrap().to_string(), "z^2 + z + c + 1");
        assert_eq!(gen_dynatomic(1, 1).unwrap().to_string(), "z^2 + z + c");
        assert_eq!(gen_dynatomic(1, 2).unwrap().to_string(), "z^2 - z + c + 1");
        assert_eq!(iterate_poly(0).to_string(), "z");
    }

    #[test]
    fn phi3_at_zero_is_cyclotomic() {
        let p = dynatomic(3).unwrap().specialize_c(&rat(0, 1));
        assert_eq!(p, crate::poly::UniPoly::from_ints(&[1, 1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn preperiod_two_vs_one() {
        let p = gen_dynatomic(2, 1).unwrap();
        assert_ne!(p.eval_rational(&rat(0, 1), &rat(-1, 1)), rat(0, 1));
    }
}
