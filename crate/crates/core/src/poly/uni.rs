use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{FpElement, QuadElem, Rational};

/// Coefficient domain for [`UniPoly`]. Elements carry their own context
/// (field discriminant, prime), so constants are built "like" an existing
/// element.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: &BigInt) -> Self;
    fn is_zero_c(&self) -> bool;
    fn c_add(&self, o: &Self) -> Self;
    fn c_sub(&self, o: &Self) -> Self;
    fn c_mul(&self, o: &Self) -> Self;
    fn c_neg(&self) -> Self;
    fn c_inv(&self) -> Option<Self>;
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn int_like(&self, n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn c_add(&self, o: &Self) -> Self {
        self + o
    }
    fn c_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn c_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn c_neg(&self) -> Self {
        -self
    }
    fn c_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Coeff for QuadElem {
    fn zero_like(&self) -> Self {
        QuadElem::zero_in(self.field())
    }
    fn one_like(&self) -> Self {
        QuadElem::one_in(self.field())
    }
    fn int_like(&self, n: &BigInt) -> Self {
        self.field()
            .from_rational(Rational::from_integer(n.clone()))
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn c_add(&self, o: &Self) -> Self {
        self + o
    }
    fn c_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn c_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn c_neg(&self) -> Self {
        -self
    }
    fn c_inv(&self) -> Option<Self> {
        self.inv()
    }
}

impl Coeff for FpElement {
    fn zero_like(&self) -> Self {
        FpElement::from_u64(self.p(), 0)
    }
    fn one_like(&self) -> Self {
        FpElement::from_u64(self.p(), 1)
    }
    fn int_like(&self, n: &BigInt) -> Self {
        FpElement::from_bigint(self.p(), n)
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn c_add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn c_sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn c_mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn c_neg(&self) -> Self {
        -*self
    }
    fn c_inv(&self) -> Option<Self> {
        self.inv()
    }
}

/// Dense univariate polynomial, coefficients in ascending degree.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_c()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `x` with coefficients built like `like`.
    pub fn x(like: &T) -> Self {
        Self::new(vec![like.zero_like(), like.one_like()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut it = self.coeffs.iter().rev();
        let Some(first) = it.next() else {
            return x.zero_like();
        };
        let mut acc = first.clone();
        for c in it {
            acc = acc.c_mul(x).c_add(c);
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.c_add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(Coeff::c_neg).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut out = vec![z; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_c() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].c_add(&a.c_mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.c_mul(k)).collect())
    }

    /// Quotient and remainder; the divisor's leading coefficient must be a unit.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d
            .lead()
            .unwrap()
            .c_inv()
            .expect("leading coefficient not invertible");
        let mut r = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if n < dd {
            return (Self::zero(), self.clone());
        }
        let z = d.coeffs[0].zero_like();
        let mut q = vec![z; n - dd + 1];
        for i in (dd..=n).rev() {
            if r[i].is_zero_c() {
                continue;
            }
            let t = r[i].c_mul(&inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = r[i - dd + j].c_sub(&t.c_mul(dc));
            }
            q[i - dd] = t;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.c_inv().expect("leading coefficient not invertible")),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g` monic and `s·self + t·o = g`.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let like = match self.lead().or(o.lead()) {
            Some(l) => l.clone(),
            None => return (Self::zero(), Self::zero(), Self::zero()),
        };
        let one = Self::constant(like.one_like());
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (one.clone(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        let k = r0
            .lead()
            .expect("nonzero")
            .c_inv()
            .expect("leading coefficient not invertible");
        (r0.scale(&k), s0.scale(&k), t0.scale(&k))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.c_mul(&c.int_like(&BigInt::from(i))))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let one = m.lead().expect("nonzero modulus").one_like();
        let mut acc = Self::constant(one).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl UniPoly<Rational> {
    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(
            cs.iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }
}

impl UniPoly<FpElement> {
    pub fn from_ints_mod(cs: &[BigInt], p: u64) -> Self {
        Self::new(cs.iter().map(|c| FpElement::from_bigint(p, c)).collect())
    }
}

fn write_terms<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[T],
    var: &str,
    is_one: impl Fn(&T) -> bool,
    is_neg_one: impl Fn(&T) -> bool,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        let s = c.to_string();
        if s == "0" {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let (neg, body) = if i > 0 && is_one(c) {
            (false, mono)
        } else if i > 0 && is_neg_one(c) {
            (true, mono)
        } else {
            let needs_paren = s.contains(' ');
            let cs = if needs_paren { format!("({s})") } else { s };
            let (neg, cs) = match cs.strip_prefix('-') {
                Some(rest) if !needs_paren => (true, rest.to_string()),
                _ => (false, cs),
            };
            if mono.is_empty() {
                (neg, cs)
            } else {
                (neg, format!("{cs}*{mono}"))
            }
        };
        if first {
            write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
            first = false;
        } else {
            write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for UniPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "x", |c| c.is_one(), |c| (-c).is_one())
    }
}

impl fmt::Display for UniPoly<QuadElem> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "x", |c| c.is_one(), |c| (-c).is_one())
    }
}

impl fmt::Display for UniPoly<FpElement> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "x", |c| c.value() == 1, |_| false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn division_identity() {
        let a = UniPoly::from_ints(&[1, 0, 3, 5, -2, 7]);
        let b = UniPoly::from_ints(&[2, -1, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn xgcd_bezout() {
        let a = UniPoly::from_ints(&[-1, 0, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, UniPoly::from_ints(&[-1, 1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn gcd_monic() {
        let f = UniPoly::from_ints(&[-1, 0, 1]);
        let g = UniPoly::from_ints(&[1, 2, 1]);
        assert_eq!(f.gcd(&g), UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn display() {
        let f = UniPoly::new(vec![rat(1, 2), rat(-1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(f.to_string(), "x^3 - x + 1/2");
        let g = UniPoly::from_ints(&[0, -3, 2]);
        assert_eq!(g.to_string(), "2*x^2 - 3*x");
    }
}
