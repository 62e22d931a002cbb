use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::factor::is_prime_u64;
use crate::error::{domain, Result};

/// Element of the prime field `F_p`, `p < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElement {
    p: u64,
    value: u64,
}

impl FpElement {
    pub fn new(p: u64, value: i64) -> Self {
        let v = value.rem_euclid(p as i64) as u64;
        FpElement { p, value: v }
    }

    pub fn from_u64(p: u64, value: u64) -> Self {
        FpElement {
            p,
            value: value % p,
        }
    }

    pub fn from_bigint(p: u64, value: &BigInt) -> Self {
        let v = value
            .mod_floor(&BigInt::from(p))
            .to_u64()
            .expect("residue fits");
        FpElement { p, value: v }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut b = *self;
        let mut r = FpElement {
            p: self.p,
            value: 1 % self.p,
        };
        while e > 0 {
            if e & 1 == 1 {
                r = r * b;
            }
            b = b * b;
            e >>= 1;
        }
        r
    }

    pub fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        Some(self.pow(self.p - 2))
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(&self) -> bool {
        self.p == 2 || self.value == 0 || self.pow((self.p - 1) / 2).value == 1
    }

    /// Tonelli-Shanks square root.
    pub fn sqrt(&self) -> Option<Self> {
        let p = self.p;
        if self.value == 0 || p == 2 {
            return Some(*self);
        }
        if !self.is_square() {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = FpElement::from_u64(p, 2);
        while z.is_square() {
            z = FpElement::from_u64(p, z.value + 1);
        }
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow(q.div_ceil(2));
        while t.value != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt.value != 1 {
                tt = tt * tt;
                i += 1;
            }
            let b = c.pow(1 << (m - i - 1));
            m = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
        Some(r)
    }
}

impl fmt::Debug for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let s = self.value + o.value;
        FpElement {
            p: self.p,
            value: if s >= self.p { s - self.p } else { s },
        }
    }
}

impl Sub for FpElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let v = if self.value >= o.value {
            self.value - o.value
        } else {
            self.value + self.p - o.value
        };
        FpElement {
            p: self.p,
            value: v,
        }
    }
}

impl Mul for FpElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FpElement {
            p: self.p,
            value: ((self.value as u128 * o.value as u128) % self.p as u128) as u64,
        }
    }
}

impl Div for FpElement {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in F_p")
    }
}

impl Neg for FpElement {
    type Output = Self;
    fn neg(self) -> Self {
        FpElement {
            p: self.p,
            value: if self.value == 0 {
                0
            } else {
                self.p - self.value
            },
        }
    }
}

/// Euler criterion for `a` modulo an odd prime; `0` counts as a square.
pub fn is_square_mod_p(a: &BigInt, p: u64) -> Result<bool> {
    if p == 2 || !is_prime_u64(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    Ok(FpElement::from_bigint(p, a).is_square())
}

/// Element `a + b i` of `F_{p^2} = F_p[i]/(i^2 - n)` for a fixed nonsquare `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp2Element {
    pub a: FpElement,
    pub b: FpElement,
    nonres: FpElement,
}

impl Fp2Element {
    /// Smallest nonsquare modulo the odd prime `p`.
    pub fn nonresidue(p: u64) -> FpElement {
        (2..p)
            .map(|v| FpElement::from_u64(p, v))
            .find(|x| !x.is_square())
            .expect("odd prime")
    }

    pub fn new(a: FpElement, b: FpElement, nonres: FpElement) -> Self {
        Fp2Element { a, b, nonres }
    }

    pub fn from_base(a: FpElement, nonres: FpElement) -> Self {
        Fp2Element {
            a,
            b: FpElement::from_u64(a.p(), 0),
            nonres,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> FpElement {
        self.a * self.a - self.nonres * self.b * self.b
    }

    /// Squares of `F_{p^2}^*` are exactly the elements of square norm.
    pub fn is_square(&self) -> bool {
        self.is_zero() || self.norm().pow((self.a.p() - 1) / 2).value() == 1
    }

    /// Every element of `F_{p^2}`.
    pub fn all(p: u64) -> Vec<Self> {
        let n = Self::nonresidue(p);
        let mut out = Vec::with_capacity((p * p) as usize);
        for a in 0..p {
            for b in 0..p {
                out.push(Fp2Element::new(
                    FpElement::from_u64(p, a),
                    FpElement::from_u64(p, b),
                    n,
                ));
            }
        }
        out
    }
}

impl Add for Fp2Element {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp2Element {
            a: self.a + o.a,
            b: self.b + o.b,
            nonres: self.nonres,
        }
    }
}

impl Sub for Fp2Element {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp2Element {
            a: self.a - o.a,
            b: self.b - o.b,
            nonres: self.nonres,
        }
    }
}

impl Mul for Fp2Element {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp2Element {
            a: self.a * o.a + self.nonres * self.b * o.b,
            b: self.a * o.b + self.b * o.a,
            nonres: self.nonres,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_examples() {
        assert!(!is_square_mod_p(&BigInt::from(6), 7).unwrap());
        assert!(is_square_mod_p(&BigInt::from(2), 7).unwrap());
        assert!(is_square_mod_p(&BigInt::from(0), 11).unwrap());
        assert!(!is_square_mod_p(&BigInt::from(-15), 7).unwrap());
        assert!(is_square_mod_p(&BigInt::from(3), 9).is_err());
    }

    #[test]
    fn tonelli_shanks_roundtrip() {
        for p in [3u64, 5, 7, 13, 17, 97, 1_000_003] {
            for v in 0..50.min(p) {
                let x = FpElement::from_u64(p, v);
                if let Some(r) = x.sqrt() {
                    assert_eq!(r * r, x);
                } else {
                    assert!(!x.is_square());
                }
            }
        }
    }

    #[test]
    fn fp2_squares_are_half() {
        let p = 7;
        let all = Fp2Element::all(p);
        let sq = all.iter().filter(|x| !x.is_zero() && x.is_square()).count();
        assert_eq!(sq as u64, (p * p - 1) / 2);
        for x in &all {
            assert!((*x * *x).is_square());
        }
    }
}
