//! Genus 1 and 2 Jacobians over prime fields: orders from point counts,
//! and Cantor arithmetic on imaginary (odd degree) models.

use super::{named_polynomial, reduce};
use crate::arith::{is_prime_u64, Fp2Element, FpElement, Rational};
use crate::curves::eight_three_base_point;
use crate::error::{domain, Error, Result};
use crate::poly::UniPoly;

fn genus_of(f: &UniPoly<FpElement>) -> Result<u64> {
    match f.degree() {
        Some(3 | 4) => Ok(1),
        Some(5 | 6) => Ok(2),
        d => domain(format!("y² = f(x) with deg f = {d:?} is not genus 1 or 2")),
    }
}

fn good_reduction(f: &UniPoly<Rational>, p: u64) -> Result<UniPoly<FpElement>> {
    if p == 2 || !is_prime_u64(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    let fp = reduce(f, p)?;
    if fp.degree() != f.degree() || fp.gcd(&fp.derivative()).degree() != Some(0) {
        return domain(format!("{f} has bad reduction at {p}"));
    }
    Ok(fp)
}

/// `(#C(F_p), #C(F_{p²}))` for the smooth projective model of `y² = f(x)`.
pub fn point_counts(f: &UniPoly<Rational>, p: u64) -> Result<(u64, u64)> {
    let fp = good_reduction(f, p)?;
    genus_of(&fp)?;
    let deg = fp.degree().expect("nonzero");
    let lead = *fp.lead().expect("nonzero");
    let (inf1, inf2) = if deg % 2 == 1 {
        (1, 1)
    } else if lead.is_square() {
        (2, 2)
    } else {
        (0, 2)
    };
    let mut n1 = inf1;
    for x in 0..p {
        let w = fp.eval(&FpElement::from_u64(p, x));
        n1 += if w.is_zero() {
            1
        } else if w.is_square() {
            2
        } else {
            0
        };
    }
    let nonres = Fp2Element::nonresidue(p);
    let coeffs: Vec<Fp2Element> = fp
        .coeffs()
        .iter()
        .map(|&c| Fp2Element::from_base(c, nonres))
        .collect();
    let mut n2 = inf2;
    for x in Fp2Element::all(p) {
        let w = coeffs.iter().rev().fold(
            Fp2Element::from_base(FpElement::from_u64(p, 0), nonres),
            |acc, &c| acc * x + c,
        );
        n2 += if w.is_zero() {
            1
        } else if w.is_square() {
            2
        } else {
            0
        };
    }
    Ok((n1, n2))
}

/// `#J(F_p) = L(1)` with the L-polynomial recovered from point counts.
pub fn jacobian_group_order(f: &UniPoly<Rational>, p: u64) -> Result<u64> {
    let g = genus_of(&good_reduction(f, p)?)?;
    let (n1, n2) = point_counts(f, p)?;
    let (p, n1, n2) = (p as i128, n1 as i128, n2 as i128);
    let s1 = p + 1 - n1;
    let order = if g == 1 {
        n1
    } else {
        let s2 = p * p + 1 - n2;
        let c1 = -s1;
        let c2 = (s1 * s1 - s2) / 2;
        1 + c1 + c2 + p * c1 + p * p
    };
    u64::try_from(order).map_err(|_| Error::Internal(format!("negative group order {order}")))
}

/// Reduced divisor class `[u, v]` with `u` monic, `deg v < deg u`, `u | v² − f`.
#[derive(Clone, Debug, PartialEq)]
pub struct MumfordDivisor {
    pub u: UniPoly<FpElement>,
    pub v: UniPoly<FpElement>,
}

/// Jacobian of `y² = f(x)` over `F_p` with `deg f = 2g + 1`.
#[derive(Clone, Debug)]
pub struct Jacobian {
    pub f: UniPoly<FpElement>,
    pub genus: usize,
    p: u64,
}

impl Jacobian {
    pub fn new(f: UniPoly<FpElement>) -> Result<Self> {
        let deg = f.degree().unwrap_or(0);
        if deg.is_multiple_of(2) {
            return domain("Cantor arithmetic needs an odd degree model");
        }
        let p = f.lead().expect("nonzero").p();
        Ok(Jacobian {
            genus: (deg - 1) / 2,
            p,
            f,
        })
    }

    fn c(&self, n: u64) -> FpElement {
        FpElement::from_u64(self.p, n)
    }

    pub fn identity(&self) -> MumfordDivisor {
        MumfordDivisor {
            u: UniPoly::constant(self.c(1)),
            v: UniPoly::zero(),
        }
    }

    pub fn is_valid(&self, d: &MumfordDivisor) -> bool {
        let monic = d.u.lead().is_some_and(|l| l.value() == 1);
        let small = d.v.degree().is_none_or(|dv| dv < d.u.degree().unwrap_or(0));
        monic
            && small
            && d.u.degree().unwrap_or(0) <= self.genus
            && d.v.mul(&d.v).sub(&self.f).rem(&d.u).is_zero()
    }

    pub fn neg(&self, d: &MumfordDivisor) -> MumfordDivisor {
        MumfordDivisor {
            u: d.u.clone(),
            v: d.v.neg(),
        }
    }

    pub fn add(&self, a: &MumfordDivisor, b: &MumfordDivisor) -> MumfordDivisor {
        let (d0, e1, e2) = a.u.xgcd(&b.u);
        let (d, c1, c2) = d0.xgcd(&a.v.add(&b.v));
        let (s1, s2, s3) = (c1.mul(&e1), c1.mul(&e2), c2);
        let (u, r) = a.u.mul(&b.u).div_rem(&d.mul(&d));
        debug_assert!(r.is_zero());
        let num = s1
            .mul(&a.u)
            .mul(&b.v)
            .add(&s2.mul(&b.u).mul(&a.v))
            .add(&s3.mul(&a.v.mul(&b.v).add(&self.f)));
        let (v, r) = num.div_rem(&d);
        debug_assert!(r.is_zero());
        let v = v.rem(&u);
        self.reduce(u, v)
    }

    fn reduce(&self, mut u: UniPoly<FpElement>, mut v: UniPoly<FpElement>) -> MumfordDivisor {
        while u.degree().unwrap_or(0) > self.genus {
            let (u2, r) = self.f.sub(&v.mul(&v)).div_rem(&u);
            debug_assert!(r.is_zero());
            v = v.neg().rem(&u2);
            u = u2;
        }
        let u = u.monic();
        let v = v.rem(&u);
        MumfordDivisor { u, v }
    }

    pub fn mul(&self, d: &MumfordDivisor, mut n: u64) -> MumfordDivisor {
        let mut acc = self.identity();
        let mut base = d.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Order of `d`, searching up to `bound`.
    pub fn order(&self, d: &MumfordDivisor, bound: u64) -> Option<u64> {
        let id = self.identity();
        let mut acc = d.clone();
        for k in 1..=bound {
            if acc == id {
                return Some(k);
            }
            acc = self.add(&acc, d);
        }
        None
    }
}

const SEVEN: u64 = 7;
const WEIERSTRASS_X: u64 = 4;

/// `(1 + 4X)^i X^(k−i)`-weighted sum: `X^k f(4 + 1/X)` for `deg f ≤ k`.
fn invert_at(f: &UniPoly<FpElement>, k: usize) -> UniPoly<FpElement> {
    let p = SEVEN;
    let lin = UniPoly::new(vec![
        FpElement::from_u64(p, 1),
        FpElement::from_u64(p, WEIERSTRASS_X),
    ]);
    let x = UniPoly::x(&FpElement::from_u64(p, 0));
    let mut acc = UniPoly::zero();
    for (i, a) in f.coeffs().iter().enumerate() {
        let mut term = UniPoly::constant(*a);
        for _ in 0..i {
            term = term.mul(&lin);
        }
        for _ in 0..(k - i) {
            term = term.mul(&x);
        }
        acc = acc.add(&term);
    }
    acc
}

/// The 8(3) model mod 7 with the Weierstrass point `x = 4` sent to
/// infinity by `X = 1/(x − 4)`, `Y = y/(x − 4)³`.
pub fn eight_three_odd_model_mod7() -> Result<Jacobian> {
    let f = reduce(&named_polynomial("8(3)")?, SEVEN)?;
    if !f.eval(&FpElement::from_u64(SEVEN, WEIERSTRASS_X)).is_zero() {
        return Err(Error::Internal("x = 4 is not a root mod 7".into()));
    }
    let h = invert_at(&f, 6);
    if h.degree() != Some(5) {
        return Err(Error::Internal(format!(
            "odd model has degree {:?}",
            h.degree()
        )));
    }
    Jacobian::new(h)
}

fn fp_of(r: &Rational) -> Result<FpElement> {
    let den = FpElement::from_bigint(SEVEN, r.denom());
    let inv = den
        .inv()
        .ok_or_else(|| Error::Domain(format!("{r} is not 7-integral")))?;
    Ok(FpElement::from_bigint(SEVEN, r.numer()) * inv)
}

/// The class of `P0 + P̄0 − ∞⁺ − ∞⁻` on the odd model. The two points at
/// infinity of the sextic land on `X = 0`, and `(0, ±1)` differ from
/// `2∞` by the divisor of `X`, so the class is `[P0' + P̄0' − 2∞]`.
pub fn d0_mod7() -> Result<(Jacobian, MumfordDivisor)> {
    let jac = eight_three_odd_model_mod7()?;
    let p0 = eight_three_base_point();
    let (x, y) = (&p0.x, &p0.y);
    // y = α + βx over Q, from the √d parts
    let beta = y.b() / x.b();
    let alpha = y.a() - &beta * x.a();
    let (trace, norm) = (x.trace(), x.norm());
    let ux = UniPoly::new(vec![
        fp_of(&norm)?,
        -fp_of(&trace)?,
        FpElement::from_u64(SEVEN, 1),
    ]);
    if ux
        .eval(&FpElement::from_u64(SEVEN, WEIERSTRASS_X))
        .is_zero()
    {
        return Err(Error::Internal(
            "P0 reduces onto the Weierstrass point".into(),
        ));
    }
    let u = invert_at(&ux, 2).monic();
    let xv = UniPoly::x(&FpElement::from_u64(SEVEN, 0));
    let (g, s, _) = xv.xgcd(&u);
    if g.degree() != Some(0) {
        return Err(Error::Internal("X is not invertible modulo u".into()));
    }
    let (a, b) = (fp_of(&alpha)?, fp_of(&beta)?);
    // y = α + β(4 + X⁻¹), Y = y X³
    let y_of_x =
        UniPoly::constant(a + b * FpElement::from_u64(SEVEN, WEIERSTRASS_X)).add(&s.scale(&b));
    let v = y_of_x.mul(&xv.mul(&xv).mul(&xv)).rem(&u);
    let d = MumfordDivisor { u, v };
    if !jac.is_valid(&d) {
        return Err(Error::Internal(
            "u does not divide v² − f on the odd model".into(),
        ));
    }
    Ok((jac, d))
}

/// Order of the reduction of `D0` in `J(F_7)`.
pub fn jacobian_order_mod7() -> Result<u64> {
    let bound = jacobian_group_order(&named_polynomial("8(3)")?, SEVEN)?;
    let (jac, d0) = d0_mod7()?;
    jac.order(&d0, bound)
        .ok_or_else(|| Error::Internal(format!("no order up to #J = {bound}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_harness() {
        let f = UniPoly::from_ints(&[1, 0, 0, 1]);
        for p in [5i64, 7, 11, 13] {
            let affine = (0..p).map(|x| {
                (0..p)
                    .filter(|y| (y * y - x * x * x - 1).rem_euclid(p) == 0)
                    .count() as u64
            });
            assert_eq!(
                jacobian_group_order(&f, p as u64).unwrap(),
                1 + affine.sum::<u64>(),
                "p = {p}"
            );
        }
        // x³ + 1 = (x + 1)³ mod 3
        assert!(jacobian_group_order(&f, 3).is_err());
    }

    #[test]
    fn d0_has_order_21() {
        assert_eq!(jacobian_order_mod7().unwrap(), 21);
        let (jac, d0) = d0_mod7().unwrap();
        for n in 1..=3 {
            assert_eq!(jac.mul(&d0, 1 + 21 * n), d0);
        }
        assert_eq!(jac.order(&jac.identity(), 10), Some(1));
    }

    #[test]
    fn group_order_is_model_independent() {
        let sextic = jacobian_group_order(&named_polynomial("8(3)").unwrap(), 7).unwrap();
        assert_eq!(sextic % 21, 0);
        let (jac, _) = d0_mod7().unwrap();
        let odd = UniPoly::new(
            jac.f
                .coeffs()
                .iter()
                .map(|c| Rational::from_integer(c.value().into()))
                .collect(),
        );
        assert_eq!(jacobian_group_order(&odd, 7).unwrap(), sextic);
    }

    #[test]
    fn bad_reduction_is_rejected() {
        assert!(jacobian_group_order(&UniPoly::from_ints(&[0, 0, 1, 1]), 5).is_err());
        assert!(jacobian_group_order(&UniPoly::from_ints(&[1, 0, 0, 1]), 3).is_err());
    }
}
