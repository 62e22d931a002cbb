use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::factor::{is_prime, squarefree_part};
use super::rational::{fmt_rational, height, int_val, parse_rational, rational_sqrt, Rational};
use crate::error::{domain, Error, Result};

/// The field `Q(sqrt d)`; `d = 1` is `Q` itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 {
            return domain("d = 0 does not define a field");
        }
        if squarefree_part(&BigInt::from(d)) != BigInt::from(d) {
            return domain(format!("{d} is not squarefree"));
        }
        Ok(QuadField { d })
    }

    pub fn from_bigint(d: &BigInt) -> Result<Self> {
        let d = d
            .to_i64()
            .ok_or_else(|| Error::Domain(format!("field discriminant {d} too large")))?;
        Self::new(d)
    }

    pub fn rationals() -> Self {
        QuadField { d: 1 }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    pub fn elem(&self, a: Rational, b: Rational) -> QuadElem {
        QuadElem::new(*self, a, b)
    }

    pub fn from_rational(&self, a: Rational) -> QuadElem {
        QuadElem::new(*self, a, Rational::zero())
    }

    /// The generator `sqrt d`.
    pub fn sqrt_d(&self) -> QuadElem {
        QuadElem::new(*self, Rational::zero(), Rational::one())
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            write!(f, "Q")
        } else {
            write!(f, "Q(sqrt({}))", self.d)
        }
    }
}

/// `a + b sqrt d`, exact. Rational values compare equal whatever field they
/// were computed in.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "QuadJson", into = "QuadJson")]
pub struct QuadElem {
    d: i64,
    a: Rational,
    b: Rational,
}

impl PartialEq for QuadElem {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Eq for QuadElem {}

impl std::hash::Hash for QuadElem {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.a.hash(h);
        if !self.b.is_zero() {
            self.d.hash(h);
            self.b.hash(h);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadJson {
    d: i64,
    a: String,
    b: String,
}

impl From<QuadElem> for QuadJson {
    fn from(x: QuadElem) -> Self {
        QuadJson {
            d: x.d,
            a: fmt_rational(&x.a),
            b: fmt_rational(&x.b),
        }
    }
}

impl TryFrom<QuadJson> for QuadElem {
    type Error = Error;
    fn try_from(j: QuadJson) -> Result<Self> {
        let field = QuadField::new(j.d)?;
        Ok(QuadElem::new(
            field,
            parse_rational(&j.a)?,
            parse_rational(&j.b)?,
        ))
    }
}

impl QuadElem {
    /// Over `Q` the `b` part is folded into `a`.
    pub fn new(field: QuadField, a: Rational, b: Rational) -> Self {
        if field.d == 1 {
            QuadElem {
                d: 1,
                a: a + b,
                b: Rational::zero(),
            }
        } else {
            QuadElem { d: field.d, a, b }
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadElem {
            d: 1,
            a,
            b: Rational::zero(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    pub fn field(&self) -> QuadField {
        QuadField { d: self.d }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Same value, viewed in `field` (must contain it).
    pub fn in_field(&self, field: QuadField) -> Self {
        assert!(
            self.d == field.d || self.is_rational(),
            "{self:?} does not lie in {field}"
        );
        QuadElem::new(field, self.a.clone(), self.b.clone())
    }

    pub fn zero_in(field: QuadField) -> Self {
        field.from_rational(Rational::zero())
    }

    pub fn one_in(field: QuadField) -> Self {
        field.from_rational(Rational::one())
    }

    /// Conjugation `a + b sqrt d -> a - b sqrt d`.
    pub fn conj(&self) -> Self {
        QuadElem {
            d: self.d,
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadElem {
            d: self.d,
            a: &self.a / &n,
            b: -&self.b / &n,
        })
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadElem::one_in(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Least common denominator of `a` and `b`.
    pub fn denominator(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// Whether the value is an algebraic integer of the field.
    pub fn is_algebraic_integer(&self) -> bool {
        let t = self.trace();
        let n = self.norm();
        t.is_integer() && n.is_integer()
    }

    /// `max(H(a), H(b))`, used for vertex ordering.
    pub fn height(&self) -> BigInt {
        let ha = height(&self.a);
        let hb = height(&self.b);
        if ha > hb {
            ha
        } else {
            hb
        }
    }

    /// Largest absolute value over the archimedean embeddings.
    pub fn max_abs_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::INFINITY);
        let b = self.b.to_f64().unwrap_or(f64::INFINITY);
        if self.d == 1 {
            a.abs()
        } else if self.d > 0 {
            let s = (self.d as f64).sqrt() * b.abs();
            a.abs() + s
        } else {
            (a * a + (-self.d) as f64 * b * b).sqrt()
        }
    }

    /// Deterministic total order: height, then `a`, then `b`.
    pub fn cmp_height(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.b.cmp(&other.b))
    }

    fn combine_field(&self, other: &Self) -> i64 {
        if self.d == other.d {
            self.d
        } else if self.is_rational() {
            other.d
        } else if other.is_rational() {
            self.d
        } else {
            panic!("mixing Q(sqrt({})) and Q(sqrt({}))", self.d, other.d)
        }
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sq = format!("sqrt({})", self.d);
        let bpart = if self.b.is_one() {
            sq
        } else if (-&self.b).is_one() {
            format!("-{sq}")
        } else {
            format!("{}*{sq}", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{bpart}")
        } else if let Some(rest) = bpart.strip_prefix('-') {
            write!(f, "{} - {}", self.a, rest)
        } else {
            write!(f, "{} + {}", self.a, bpart)
        }
    }
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        let d = self.combine_field(o);
        QuadElem {
            d,
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        let d = self.combine_field(o);
        QuadElem {
            d,
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl<'a> Mul<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        let d = self.combine_field(o);
        if self.b.is_zero() {
            return QuadElem {
                d,
                a: &self.a * &o.a,
                b: &self.a * &o.b,
            };
        }
        if o.b.is_zero() {
            return QuadElem {
                d,
                a: &self.a * &o.a,
                b: &self.b * &o.a,
            };
        }
        let dd = Rational::from_integer(d.into());
        QuadElem {
            d,
            a: &self.a * &o.a + dd * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl<'a> Div<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QuadElem) -> QuadElem {
        self * &o.inv().expect("division by zero in quadratic field")
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            d: self.d,
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $f(self, o: QuadElem) -> QuadElem { (&self).$f(&o) }
        }
        impl<'a> $tr<&'a QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $f(self, o: &QuadElem) -> QuadElem { (&self).$f(o) }
        }
        impl<'a> $tr<QuadElem> for &'a QuadElem {
            type Output = QuadElem;
            fn $f(self, o: QuadElem) -> QuadElem { self.$f(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

/// A square root of `x` inside its own field, if one exists.
pub fn sqrt_in_field(x: &QuadElem) -> Option<QuadElem> {
    let field = x.field();
    if x.b.is_zero() {
        if let Some(s) = rational_sqrt(&x.a) {
            return Some(field.from_rational(s));
        }
        if field.d == 1 {
            return None;
        }
        // a = d v^2 gives sqrt(a) = v sqrt(d)
        let q = &x.a / Rational::from_integer(field.d.into());
        return rational_sqrt(&q).map(|v| field.elem(Rational::zero(), v));
    }
    let s = rational_sqrt(&x.norm())?;
    let two = Rational::from_integer(2.into());
    for cand in [(&x.a + &s) / &two, (&x.a - &s) / &two] {
        if let Some(u) = rational_sqrt(&cand) {
            if u.is_zero() {
                continue;
            }
            let v = &x.b / (&two * &u);
            return Some(field.elem(u, v));
        }
    }
    None
}

fn check_prime(p: &BigInt) -> Result<()> {
    if p.is_positive() && is_prime(p.magnitude()) {
        Ok(())
    } else {
        domain(format!("{p} is not prime"))
    }
}

/// Valuations `v_P(x)` (normalised so `v_P(p) = 1`) at the primes above `p`,
/// read off the Newton polygon of the minimal polynomial of `x`. A rational
/// `x` yields a single value. `None` entries stand for `x = 0`.
pub fn valuations_above(x: &QuadElem, p: &BigInt) -> Result<Vec<Option<Rational>>> {
    check_prime(p)?;
    let v = |r: &Rational| -> Option<i64> {
        if r.is_zero() {
            None
        } else {
            Some(int_val(r.numer(), p) as i64 - int_val(r.denom(), p) as i64)
        }
    };
    if x.b.is_zero() {
        return Ok(vec![v(&x.a).map(|k| Rational::from_integer(k.into()))]);
    }
    // z^2 - 2a z + N; N != 0 because d is not a square.
    let v0 = v(&x.norm()).expect("nonzero norm");
    let half = Rational::new(v0.into(), 2.into());
    match v(&x.trace()) {
        Some(v1) if Rational::from_integer(v1.into()) < half => Ok(vec![
            Some(Rational::from_integer((v0 - v1).into())),
            Some(Rational::from_integer(v1.into())),
        ]),
        _ => Ok(vec![Some(half.clone()), Some(half)]),
    }
}

/// True iff some prime above `p` gives `x` nonnegative valuation.
pub fn is_p_integral(x: &QuadElem, p: &BigInt) -> Result<bool> {
    let vals = valuations_above(x, p)?;
    Ok(vals.iter().any(|v| match v {
        None => true,
        Some(v) => !v.is_negative(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(d: i64, a: Rational, b: Rational) -> QuadElem {
        QuadField::new(d).unwrap().elem(a, b)
    }

    #[test]
    fn field_validation() {
        assert!(QuadField::new(0).is_err());
        assert!(QuadField::new(12).is_err());
        assert!(QuadField::new(-15).is_ok());
    }

    #[test]
    fn sqrt_examples() {
        let four = q(5, rat(4, 1), rat(0, 1));
        assert_eq!(sqrt_in_field(&four).unwrap(), q(5, rat(2, 1), rat(0, 1)));
        let x = q(2, rat(3, 1), rat(2, 1));
        let y = sqrt_in_field(&x).unwrap();
        assert_eq!(y.square(), x);
        assert_eq!(y, q(2, rat(1, 1), rat(1, 1)));
        let two = q(2, rat(2, 1), rat(0, 1));
        assert_eq!(sqrt_in_field(&two).unwrap(), q(2, rat(0, 1), rat(1, 1)));
        assert!(sqrt_in_field(&q(1, rat(2, 1), rat(0, 1))).is_none());
        assert!(sqrt_in_field(&q(2, rat(0, 1), rat(1, 1))).is_none());
    }

    #[test]
    fn integrality_examples() {
        let seven = BigInt::from(7);
        assert!(!is_p_integral(&q(1, rat(1, 7), rat(0, 1)), &seven).unwrap());
        assert!(is_p_integral(&q(2, rat(0, 1), rat(1, 1)), &BigInt::from(3)).unwrap());
        let golden = q(5, rat(1, 2), rat(1, 2));
        assert!(is_p_integral(&golden, &BigInt::from(2)).unwrap());
        assert!(is_p_integral(&golden, &BigInt::from(4)).is_err());
    }

    #[test]
    fn split_prime_separates_valuations() {
        // (3 + sqrt 2)/7: norm 1/7, 7 splits in Q(sqrt 2)
        let x = q(2, rat(3, 7), rat(1, 7));
        let vals = valuations_above(&x, &BigInt::from(7)).unwrap();
        let mut vs: Vec<Rational> = vals.into_iter().map(Option::unwrap).collect();
        vs.sort();
        assert_eq!(vs, vec![rat(-1, 1), rat(0, 1)]);
        assert!(is_p_integral(&x, &BigInt::from(7)).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let x = q(-15, rat(7, 48), rat(1, 6));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"d":-15,"a":"7/48","b":"1/6"}"#);
        let y: QuadElem = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
