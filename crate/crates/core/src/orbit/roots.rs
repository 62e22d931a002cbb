//! Roots in a quadratic field by p-adic lifting.
//!
//! A monic `Q` with coefficients in `Z[sqrt d]` is reduced at a prime `p`
//! where `d` is a nonzero square, under both embeddings `sqrt d -> +-s`.
//! Simple roots mod `p` are Hensel-lifted far enough that the trace and norm
//! of a genuine root can be read off as symmetric residues, and every
//! candidate is checked exactly.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int_sqrt_exact, is_prime_u64, FpElement, QuadElem, QuadField, Rational};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// `x + y sqrt d` with integer parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Zd {
    pub x: BigInt,
    pub y: BigInt,
}

impl Zd {
    pub fn new(x: BigInt, y: BigInt) -> Self {
        Zd { x, y }
    }

    pub fn int(x: BigInt) -> Self {
        Zd {
            x,
            y: BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Zd) -> Zd {
        Zd {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }

    pub fn mul(&self, o: &Zd, d: i64) -> Zd {
        Zd {
            x: &self.x * &o.x + &self.y * &o.y * d,
            y: &self.x * &o.y + &self.y * &o.x,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Zd {
        Zd {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    fn bound(&self, sqrt_d_ceil: &BigInt) -> BigInt {
        self.x.abs() + self.y.abs() * sqrt_d_ceil
    }

    fn reduce(&self, s: &BigInt, m: &BigInt) -> BigInt {
        (&self.x + &self.y * s).mod_floor(m)
    }
}

/// Signals that some root mod every tried prime is repeated; the caller
/// should pass to the squarefree part.
#[derive(Debug)]
pub(crate) struct NotSquarefree;

const FIRST_PRIME: u64 = 1009;
const PRIME_ATTEMPTS: usize = 8;

fn sym(r: &BigInt, m: &BigInt) -> BigInt {
    let r = r.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

fn eval_mod(q: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in q.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn deriv(q: &[BigInt]) -> Vec<BigInt> {
    q.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    g.gcd.is_one().then(|| g.x.mod_floor(m))
}

// Roots of q mod p; None if one of them is repeated.
fn simple_roots_mod_p(q: &[u64], p: u64) -> Option<Vec<u64>> {
    let dq: Vec<u64> = q
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (c * (i as u64 % p)) % p)
        .collect();
    let ev =
        |cs: &[u64], x: u64| -> u64 { cs.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) };
    let mut out = Vec::new();
    for x in 0..p {
        if ev(q, x) == 0 {
            if ev(&dq, x) == 0 {
                return None;
            }
            out.push(x);
        }
    }
    Some(out)
}

fn hensel(q: &[BigInt], dq: &[BigInt], r0: u64, p: &BigInt, k: u32) -> BigInt {
    let mut r = BigInt::from(r0);
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let m = p.pow(prec);
        let fx = eval_mod(q, &r, &m);
        let dfx = eval_mod(dq, &r, &m);
        let inv = mod_inverse(&dfx, &m).expect("simple root stays simple");
        r = (r - fx * inv).mod_floor(&m);
    }
    r
}

// Q(w) * 2^N with 2w = t + m sqrt d, exactly.
fn vanishes_at_half(q: &[Zd], t: &BigInt, m: &BigInt, d: i64) -> bool {
    let n = q.len() - 1;
    let two_w = Zd::new(t.clone(), m.clone());
    let mut acc = q[n].clone();
    for i in (0..n).rev() {
        acc = acc
            .mul(&two_w, d)
            .add(&q[i].scale(&(BigInt::one() << (n - i))));
    }
    acc.is_zero()
}

/// Roots in the ring of integers of `Q(sqrt d)` of a monic `q` (ascending
/// coefficients, leading entry 1) with coefficients in `Z[sqrt d]`.
pub(crate) fn integral_roots(
    q: &[Zd],
    d: i64,
) -> std::result::Result<Vec<QuadElem>, NotSquarefree> {
    let field = QuadField::new(d).expect("squarefree d");
    let n = q.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    debug_assert!(q[n].x.is_one() && q[n].y.is_zero());
    let sqrt_d_ceil = BigInt::from(Roots::sqrt(&d.unsigned_abs()) + 1);
    let bound: BigInt = q[..n]
        .iter()
        .map(|c| c.bound(&sqrt_d_ceil))
        .max()
        .unwrap_or_default()
        + 1;
    // |trace| <= 2B and |norm| <= B^2 under every embedding
    let target = if d == 1 {
        &bound * 4u32
    } else {
        (&bound * &bound).max(&bound * 2u32) * 2u32 + 1u32
    };

    let mut attempts = 0;
    let mut p = FIRST_PRIME;
    loop {
        p += 2;
        if !is_prime_u64(p) || d.rem_euclid(p as i64) == 0 {
            continue;
        }
        let s = if d == 1 {
            BigInt::one()
        } else {
            match FpElement::new(p, d).sqrt() {
                Some(s) => BigInt::from(s.value()),
                None => continue,
            }
        };
        let pb = BigInt::from(p);
        let embeds: Vec<BigInt> = if d == 1 {
            vec![s.clone()]
        } else {
            vec![s.clone(), -&s]
        };
        let mut roots_per_embed = Vec::new();
        let mut ok = true;
        for e in &embeds {
            let qm: Vec<u64> = q
                .iter()
                .map(|c| c.reduce(e, &pb).to_u64().unwrap())
                .collect();
            match simple_roots_mod_p(&qm, p) {
                Some(r) => roots_per_embed.push(r),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            attempts += 1;
            if attempts >= PRIME_ATTEMPTS {
                return Err(NotSquarefree);
            }
            continue;
        }
        if roots_per_embed.iter().any(Vec::is_empty) {
            return Ok(Vec::new());
        }
        let mut k = 1u32;
        let mut pk = pb.clone();
        while pk <= target {
            k += 1;
            pk *= &pb;
        }
        // sqrt d lifted to p^k
        let s = if d == 1 {
            s
        } else {
            let sq = [BigInt::from(-d), BigInt::zero(), BigInt::one()];
            let dsq = deriv(&sq);
            hensel(&sq, &dsq, s.to_u64().unwrap(), &pb, k)
        };
        let embeds: Vec<BigInt> = if d == 1 {
            vec![s.clone()]
        } else {
            vec![s.clone(), -&s]
        };
        let lifted: Vec<Vec<BigInt>> = embeds
            .iter()
            .zip(&roots_per_embed)
            .map(|(e, rs)| {
                let qz: Vec<BigInt> = q.iter().map(|c| c.reduce(e, &pk)).collect();
                let dq = deriv(&qz);
                rs.iter().map(|&r| hensel(&qz, &dq, r, &pb, k)).collect()
            })
            .collect();
        let mut out: Vec<QuadElem> = Vec::new();
        if d == 1 {
            for r in &lifted[0] {
                let w = sym(r, &pk);
                if vanishes_at_half(q, &(&w * 2), &BigInt::zero(), d) {
                    out.push(field.from_rational(Rational::from_integer(w)));
                }
            }
            return Ok(out);
        }
        let two = BigInt::from(2);
        for r1 in &lifted[0] {
            for r2 in &lifted[1] {
                let t = sym(&(r1 + r2), &pk);
                let nn = sym(&(r1 * r2), &pk);
                let disc: BigInt = &t * &t - &nn * 4;
                if !disc.is_zero() && !(&disc % d).is_zero() {
                    continue;
                }
                let Some(m) = int_sqrt_exact(&(&disc / d)) else {
                    continue;
                };
                let m = if (&t + &m * &s - r1 * &two).mod_floor(&pk).is_zero() {
                    m
                } else {
                    -m
                };
                if vanishes_at_half(q, &t, &m, d) {
                    let w = field.elem(
                        Rational::new(t.clone(), two.clone()),
                        Rational::new(m, two.clone()),
                    );
                    if !out.contains(&w) {
                        out.push(w);
                    }
                }
            }
        }
        return Ok(out);
    }
}

fn squarefree_part(p: &UniPoly<QuadElem>) -> UniPoly<QuadElem> {
    let g = p.gcd(&p.derivative());
    p.div_rem(&g).0
}

/// All roots in `field` of a nonzero polynomial with coefficients in `field`.
pub fn roots_in_field(p: &UniPoly<QuadElem>, field: QuadField) -> Result<Vec<QuadElem>> {
    let Some(deg) = p.degree() else {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let p = p.map(|c| c.in_field(field)).monic();
    let d = field.d();
    let mut e = BigInt::one();
    for c in p.coeffs() {
        e = e.lcm(&c.denominator());
    }
    let q: Vec<Zd> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let k = Rational::from_integer(e.pow((deg - i) as u32));
            let a = c.a() * &k;
            let b = c.b() * &k;
            Zd::new(a.to_integer(), b.to_integer())
        })
        .collect();
    match integral_roots(&q, d) {
        Ok(ws) => {
            let inv_e = field.from_rational(Rational::new(BigInt::one(), e));
            Ok(ws.into_iter().map(|w| w * &inv_e).collect())
        }
        Err(NotSquarefree) => {
            let sf = squarefree_part(&p);
            if sf.degree() == p.degree() {
                return Err(Error::Internal(
                    "squarefree polynomial has a repeated root mod p".into(),
                ));
            }
            roots_in_field(&sf, field)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn poly(field: QuadField, cs: &[(Rational, Rational)]) -> UniPoly<QuadElem> {
        UniPoly::new(
            cs.iter()
                .map(|(a, b)| field.elem(a.clone(), b.clone()))
                .collect(),
        )
    }

    #[test]
    fn rational_roots() {
        let q = QuadField::rationals();
        // (2x - 3)(x + 5)(x^2 + 1)
        let p = UniPoly::from_ints(&[-3, 2])
            .mul(&UniPoly::from_ints(&[5, 1]))
            .mul(&UniPoly::from_ints(&[1, 0, 1]))
            .map(|c| q.from_rational(c.clone()));
        let mut r = roots_in_field(&p, q).unwrap();
        r.sort_by(|a, b| a.cmp_height(b));
        assert_eq!(
            r,
            vec![q.from_rational(rat(3, 2)), q.from_rational(rat(-5, 1))]
        );
    }

    #[test]
    fn golden_ratio_and_half_integers() {
        let k = QuadField::new(5).unwrap();
        let p = poly(
            k,
            &[
                (rat(-1, 1), rat(0, 1)),
                (rat(-1, 1), rat(0, 1)),
                (rat(1, 1), rat(0, 1)),
            ],
        );
        let r = roots_in_field(&p, k).unwrap();
        assert_eq!(r.len(), 2);
        for z in r {
            assert!(p.eval(&z).is_zero());
        }
    }

    #[test]
    fn repeated_root_falls_back() {
        let k = QuadField::new(-3).unwrap();
        // (x + 1/2)^2 (x - sqrt(-3)/7)
        let lin = poly(k, &[(rat(1, 2), rat(0, 1)), (rat(1, 1), rat(0, 1))]);
        let other = poly(k, &[(rat(0, 1), rat(-1, 7)), (rat(1, 1), rat(0, 1))]);
        let p = lin.mul(&lin).mul(&other);
        let r = roots_in_field(&p, k).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&k.elem(rat(0, 1), rat(1, 7))));
        assert!(r.contains(&k.elem(rat(-1, 2), rat(0, 1))));
    }

    #[test]
    fn no_roots_outside_field() {
        let k = QuadField::new(2).unwrap();
        let p = poly(
            k,
            &[
                (rat(-3, 1), rat(0, 1)),
                (rat(0, 1), rat(0, 1)),
                (rat(1, 1), rat(0, 1)),
            ],
        );
        assert!(roots_in_field(&p, k).unwrap().is_empty());
    }
}
