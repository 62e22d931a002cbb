use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::uni::{Coeff, UniPoly};
use crate::arith::{FpElement, Rational};
use crate::error::{Error, Result};

type CPoly = Vec<BigInt>;

fn trim(p: &mut CPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn cp_add_into(acc: &mut CPoly, o: &[BigInt]) {
    if acc.len() < o.len() {
        acc.resize(o.len(), BigInt::zero());
    }
    for (a, b) in acc.iter_mut().zip(o) {
        *a += b;
    }
    trim(acc);
}

fn cp_sub_mul_into(acc: &mut CPoly, a: &[BigInt], b: &[BigInt]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let need = a.len() + b.len() - 1;
    if acc.len() < need {
        acc.resize(need, BigInt::zero());
    }
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            acc[i + j] -= x * y;
        }
    }
    trim(acc);
}

fn cp_mul(a: &[BigInt], b: &[BigInt]) -> CPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Polynomial in `Z[c, z]`, dense in `z`; `coeffs[i][j]` multiplies `c^j z^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    coeffs: Vec<CPoly>,
}

impl BiPoly {
    fn normalize(mut coeffs: Vec<CPoly>) -> Self {
        for c in coeffs.iter_mut() {
            trim(c);
        }
        while coeffs.last().is_some_and(Vec::is_empty) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    /// From `(deg_c, deg_z, coefficient)` triples.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let mut coeffs: Vec<CPoly> = Vec::new();
        for &(j, i, k) in terms {
            if coeffs.len() <= i {
                coeffs.resize(i + 1, Vec::new());
            }
            if coeffs[i].len() <= j {
                coeffs[i].resize(j + 1, BigInt::zero());
            }
            coeffs[i][j] += k;
        }
        Self::normalize(coeffs)
    }

    /// The polynomial in `c` alone with the given ascending coefficients.
    pub fn from_c_coeffs(cs: &[BigInt]) -> Self {
        Self::normalize(vec![cs.to_vec()])
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_terms(&[(0, 0, 1)])
    }

    pub fn z() -> Self {
        Self::from_terms(&[(0, 1, 1)])
    }

    pub fn c() -> Self {
        Self::from_terms(&[(1, 0, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_z(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_c(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .filter_map(|c| c.len().checked_sub(1))
            .max()
    }

    /// Coefficient of `c^j z^i`.
    pub fn coeff(&self, j: usize, i: usize) -> BigInt {
        self.coeffs
            .get(i)
            .and_then(|c| c.get(j))
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient of `z^i` as a polynomial in `c` (ascending).
    pub fn z_coeff(&self, i: usize) -> &[BigInt] {
        self.coeffs.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.coeffs.clone();
        if out.len() < o.coeffs.len() {
            out.resize(o.coeffs.len(), Vec::new());
        }
        for (a, b) in out.iter_mut().zip(&o.coeffs) {
            cp_add_into(a, b);
        }
        Self::normalize(out)
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Vec::new(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_empty() {
                    continue;
                }
                let prod = cp_mul(a, b);
                cp_add_into(&mut out[i + j], &prod);
            }
        }
        Self::normalize(out)
    }

    pub fn square(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![Vec::new(); 2 * n - 1];
        for i in 0..n {
            if self.coeffs[i].is_empty() {
                continue;
            }
            let sq = cp_mul(&self.coeffs[i], &self.coeffs[i]);
            cp_add_into(&mut out[2 * i], &sq);
            for j in i + 1..n {
                if self.coeffs[j].is_empty() {
                    continue;
                }
                let mut prod = cp_mul(&self.coeffs[i], &self.coeffs[j]);
                for x in prod.iter_mut() {
                    *x <<= 1;
                }
                cp_add_into(&mut out[i + j], &prod);
            }
        }
        Self::normalize(out)
    }

    /// `self(c, z^2 + c)`, by Horner's rule in `f = z^2 + c`.
    pub fn compose_f(&self) -> Self {
        let mut acc = BiPoly::zero();
        for a in self.coeffs.iter().rev() {
            // acc * (z^2 + c) + a
            let mut next: Vec<CPoly> = vec![Vec::new(); acc.coeffs.len() + 2];
            for (i, ci) in acc.coeffs.iter().enumerate() {
                cp_add_into(&mut next[i + 2], ci);
                let mut shifted = vec![BigInt::zero()];
                shifted.extend(ci.iter().cloned());
                cp_add_into(&mut next[i], &shifted);
            }
            if next.is_empty() {
                next.push(Vec::new());
            }
            cp_add_into(&mut next[0], a);
            acc = Self::normalize(next);
        }
        acc
    }

    /// Exact quotient by a divisor whose leading `z`-coefficient is `+-1`.
    /// A nonzero remainder is reported as an internal error.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let dd = d
            .deg_z()
            .ok_or_else(|| Error::Internal("division by zero".into()))?;
        let lead = &d.coeffs[dd];
        let sign = match lead.as_slice() {
            [x] if x.is_one() => BigInt::one(),
            [x] if (-x).is_one() => -BigInt::one(),
            _ => return Err(Error::Internal("divisor is not monic in z".into())),
        };
        let Some(n) = self.deg_z() else {
            return Ok(Self::zero());
        };
        if n < dd {
            return Err(Error::Internal(
                "nonzero remainder in exact division".into(),
            ));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![Vec::new(); n - dd + 1];
        for i in (dd..=n).rev() {
            if r[i].is_empty() {
                continue;
            }
            let t: CPoly = r[i].iter().map(|x| x * &sign).collect();
            for (j, dc) in d.coeffs.iter().enumerate() {
                cp_sub_mul_into(&mut r[i - dd + j], &t, dc);
            }
            q[i - dd] = t;
        }
        if r.iter().any(|c| !c.is_empty()) {
            return Err(Error::Internal(
                "nonzero remainder in exact division".into(),
            ));
        }
        Ok(Self::normalize(q))
    }

    /// Substitutes `c` and returns a polynomial in `z` over the domain of `c`.
    pub fn specialize_c<T: Coeff>(&self, c: &T) -> UniPoly<T> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|cp| {
                let mut acc = c.zero_like();
                for k in cp.iter().rev() {
                    acc = acc.c_mul(c).c_add(&c.int_like(k));
                }
                acc
            })
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn eval_rational(&self, c: &Rational, z: &Rational) -> Rational {
        self.specialize_c(c).eval(z)
    }

    pub fn specialize_mod_p(&self, c: u64, p: u64) -> UniPoly<FpElement> {
        self.specialize_c(&FpElement::from_u64(p, c))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, cp) in self.coeffs.iter().enumerate().rev() {
            for (j, k) in cp.iter().enumerate().rev() {
                if k.is_zero() {
                    continue;
                }
                let mut mono = Vec::new();
                if j == 1 {
                    mono.push("c".to_string());
                } else if j > 1 {
                    mono.push(format!("c^{j}"));
                }
                if i == 1 {
                    mono.push("z".to_string());
                } else if i > 1 {
                    mono.push(format!("z^{i}"));
                }
                let mag = k.abs();
                let body = if mono.is_empty() {
                    mag.to_string()
                } else if mag.is_one() {
                    mono.join("*")
                } else {
                    format!("{mag}*{}", mono.join("*"))
                };
                let neg = k.is_negative();
                if first {
                    write!(f, "{}{body}", if neg { "-" } else { "" })?;
                    first = false;
                } else {
                    write!(f, " {} {body}", if neg { "-" } else { "+" })?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_f_once() {
        let f = BiPoly::z().compose_f();
        assert_eq!(f, BiPoly::from_terms(&[(0, 2, 1), (1, 0, 1)]));
        assert_eq!(f.to_string(), "z^2 + c");
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = BiPoly::from_terms(&[(0, 2, 1), (0, 1, 1), (1, 0, 1), (0, 0, 1)]);
        let b = BiPoly::from_terms(&[(0, 3, 1), (2, 1, -3), (1, 0, 5)]);
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(matches!(
            p.add(&BiPoly::one()).div_exact(&a),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn square_matches_mul() {
        let a = BiPoly::from_terms(&[(0, 3, 2), (2, 1, -3), (1, 0, 5), (4, 2, 1)]);
        assert_eq!(a.square(), a.mul(&a));
    }
}
