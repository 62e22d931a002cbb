//! Preperiodic portraits `G(f_c, K)` for `c` in a quadratic field `K`.

mod roots;

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    factor, int_sqrt_exact, sqrt_in_field, FpElement, QuadElem, QuadField, Rational,
};
use crate::dynatomic::dynatomic;
use crate::error::{domain, Error, Result};
use crate::poly::BiPoly;
use crate::portrait::Portrait;

pub use roots::roots_in_field;
use roots::{integral_roots, Zd};

pub const DEFAULT_N_MAX: u32 = 6;
pub const DEFAULT_DEPTH_MAX: u32 = 64;

/// A preperiodic point with its preperiod `m` and eventual period `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub value: QuadElem,
    pub preperiod: u32,
    pub period: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub n_max: u32,
    pub depth_max: u32,
}

/// `G(f_c, K)` together with per-vertex orbit data. Vertex `i` of the
/// portrait is `points[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortraitResult {
    pub portrait: Portrait,
    pub points: Vec<OrbitPoint>,
    pub c: QuadElem,
    pub field: QuadField,
    pub search_params: SearchParams,
}

/// Smallest `e > 0` with `e^2 c` in `Z[sqrt d]`.
fn half_denominator(c: &QuadElem) -> BigInt {
    let den = c.denominator();
    if den.is_one() {
        return den;
    }
    if let Some(s) = int_sqrt_exact(&den) {
        return s;
    }
    let mut e = BigInt::one();
    for (p, k) in factor(den.magnitude()) {
        e *= BigInt::from(p).pow(k.div_ceil(2));
    }
    e
}

fn escape_radius(c: &QuadElem) -> f64 {
    let ac = c.max_abs_f64();
    (1.0 + (1.0 + 4.0 * ac).sqrt()) / 2.0 + 1.0
}

struct EscapeTest {
    radius: f64,
    e: Rational,
    rational: bool,
    den_c: BigInt,
}

impl EscapeTest {
    fn new(c: &QuadElem) -> Self {
        EscapeTest {
            radius: escape_radius(c),
            e: Rational::from_integer(half_denominator(c)),
            rational: c.field().is_rational(),
            den_c: c.denominator(),
        }
    }

    // Sound: a point failing this is not preperiodic.
    fn escapes(&self, z: &QuadElem) -> bool {
        if z.max_abs_f64() > self.radius {
            return true;
        }
        if self.rational {
            let dz = z.a().denom();
            return !(&self.den_c % (dz * dz)).is_zero();
        }
        let w = QuadElem::new(z.field(), z.a() * &self.e, z.b() * &self.e);
        !w.is_algebraic_integer()
    }
}

/// `(preperiod, period)` of `z` under `f_c`, or `None` if the orbit
/// provably escapes or no repeat occurs within `budget` steps.
pub fn orbit_data(c: &QuadElem, z: &QuadElem, budget: u32) -> Option<(u32, u32)> {
    let test = EscapeTest::new(c);
    orbit_with(&test, c, z, budget)
}

fn orbit_with(test: &EscapeTest, c: &QuadElem, z: &QuadElem, budget: u32) -> Option<(u32, u32)> {
    let mut seen: HashMap<QuadElem, u32> = HashMap::new();
    let mut x = z.clone();
    for i in 0..=budget {
        if test.escapes(&x) {
            return None;
        }
        if let Some(&j) = seen.get(&x) {
            return Some((j, i - j));
        }
        seen.insert(x.clone(), i);
        x = &x.square() + c;
    }
    None
}

// Phi specialised at c and rescaled: roots w of the result give z = w / e.
// Relies on every c^j z^i term of Phi having 2j + i <= deg_z Phi.
fn scaled_specialization(phi: &BiPoly, c: &QuadElem) -> Option<(Vec<Zd>, BigInt)> {
    let d = c.field().d();
    let n = phi.deg_z()?;
    let e = half_denominator(c);
    let e2c = QuadElem::new(
        c.field(),
        c.a() * Rational::from_integer(&e * &e),
        c.b() * Rational::from_integer(&e * &e),
    );
    let gamma = Zd::new(e2c.a().to_integer(), e2c.b().to_integer());
    let max_j = phi.deg_c().unwrap_or(0);
    let mut gpow = vec![Zd::int(BigInt::one())];
    for j in 1..=max_j {
        let next = gpow[j - 1].mul(&gamma, d);
        gpow.push(next);
    }
    let mut epow = vec![BigInt::one()];
    for k in 1..=n {
        let next = &epow[k - 1] * &e;
        epow.push(next);
    }
    let mut q = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = Zd::int(BigInt::zero());
        for (j, k) in phi.z_coeff(i).iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            if 2 * j + i > n {
                return None;
            }
            acc = acc.add(&gpow[j].scale(&(k * &epow[n - i - 2 * j])));
        }
        q.push(acc);
    }
    Some((q, e))
}

/// Largest period whose cycles are checked for collisions.
pub const COLLISION_PERIOD_MAX: u32 = 4;

/// Whether `c` is one of the finitely many parameters where marked points of a
/// portrait can merge: the critical point is preperiodic, or some `Φ_n(c, z)`
/// with `n ≤ COLLISION_PERIOD_MAX` has a repeated root.
pub fn is_collision_parameter(c: &QuadElem) -> Result<bool> {
    let zero = QuadElem::rational(Rational::from_integer(BigInt::zero()));
    if orbit_data(c, &zero, DEFAULT_DEPTH_MAX).is_some() {
        return Ok(true);
    }
    if squarefree_mod_some_prime(c)? {
        return Ok(false);
    }
    repeated_root(c)
}

fn repeated_root(c: &QuadElem) -> Result<bool> {
    for n in 1..=COLLISION_PERIOD_MAX {
        let f = dynatomic(n)?.specialize_c(c);
        if f.gcd(&f.derivative()).degree().unwrap_or(0) > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

// A nonzero discriminant mod p is nonzero in characteristic 0, so squarefree
// reductions of every Φ_n at one prime rule out a repeated root.
fn squarefree_mod_some_prime(c: &QuadElem) -> Result<bool> {
    const PRIMES: [u64; 8] = [1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049];
    let den = c.denominator();
    for p in PRIMES {
        if (&den % p).is_zero() {
            continue;
        }
        let red = |r: &Rational| {
            FpElement::from_bigint(p, r.numer())
                * FpElement::from_bigint(p, r.denom())
                    .inv()
                    .expect("unit mod p")
        };
        let s = if c.is_rational() {
            FpElement::new(p, 0)
        } else {
            match FpElement::new(p, c.d()).sqrt() {
                Some(s) if !s.is_zero() => s,
                _ => continue,
            }
        };
        let cbar = red(c.a()) + red(c.b()) * s;
        let mut ok = true;
        for n in 1..=COLLISION_PERIOD_MAX {
            let f = dynatomic(n)?.specialize_c(&cbar);
            if f.gcd(&f.derivative()).degree().unwrap_or(0) > 0 {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Roots in `field` of `phi(c, z)`.
pub fn specialized_roots(phi: &BiPoly, c: &QuadElem, field: QuadField) -> Result<Vec<QuadElem>> {
    let c = c.in_field(field);
    if let Some((q, e)) = scaled_specialization(phi, &c) {
        if let Ok(ws) = integral_roots(&q, field.d()) {
            let inv = field.from_rational(Rational::new(BigInt::one(), e));
            return Ok(ws.into_iter().map(|w| w * &inv).collect());
        }
    }
    roots_in_field(&phi.specialize_c(&c), field)
}

/// `G(f_c, K)` for `K` the field of `c`.
pub fn portrait_of(c: &QuadElem, n_max: u32, depth_max: u32) -> Result<PortraitResult> {
    portrait_of_in(c, c.field(), n_max, depth_max)
}

/// `G(f_c, K)` for an explicit field `K` containing `c`: periodic points from
/// the roots of `Phi_n(c, z)` for `n <= n_max`, then closure under taking
/// `K`-rational preimages.
pub fn portrait_of_in(
    c: &QuadElem,
    field: QuadField,
    n_max: u32,
    depth_max: u32,
) -> Result<PortraitResult> {
    if n_max == 0 {
        return domain("n_max must be at least 1");
    }
    if !(c.is_rational() || c.field() == field) {
        return domain(format!("{c} does not lie in {field}"));
    }
    let c = c.in_field(field);
    let test = EscapeTest::new(&c);
    let mut pts: Vec<QuadElem> = Vec::new();
    let mut index: HashMap<QuadElem, usize> = HashMap::new();
    // Over Q a preperiodic z has den(z)^2 = den(c) wherever c is non-integral.
    let skip = field.is_rational() && int_sqrt_exact(c.a().denom()).is_none();
    if !skip {
        for n in 1..=n_max {
            let phi = dynatomic(n)?;
            for z in specialized_roots(&phi, &c, field)? {
                let mut x = z;
                while !index.contains_key(&x) {
                    index.insert(x.clone(), pts.len());
                    pts.push(x.clone());
                    x = &x.square() + &c;
                }
            }
        }
    }
    let mut queue: VecDeque<(usize, u32)> = (0..pts.len()).map(|i| (i, 0)).collect();
    while let Some((i, depth)) = queue.pop_front() {
        let Some(s) = sqrt_in_field(&(&pts[i] - &c)) else {
            continue;
        };
        for y in [s.clone(), -s] {
            if index.contains_key(&y) {
                continue;
            }
            if depth + 1 > depth_max {
                return Err(Error::Resource(format!(
                    "unbounded-growth-suspected: preimage depth exceeded {depth_max} for c = {c}"
                )));
            }
            index.insert(y.clone(), pts.len());
            pts.push(y);
            queue.push_back((pts.len() - 1, depth + 1));
        }
    }
    pts.sort_by(|a, b| a.cmp_height(b));
    let index: HashMap<&QuadElem, usize> = pts.iter().enumerate().map(|(i, z)| (z, i)).collect();
    let mut succ = Vec::with_capacity(pts.len());
    for z in &pts {
        let fz = &z.square() + &c;
        let j = *index
            .get(&fz)
            .ok_or_else(|| Error::Internal(format!("point set not closed under f at {z}")))?;
        succ.push(j);
    }
    let portrait = Portrait::new(succ)?;
    let budget = pts.len() as u32 + 1;
    let mut points = Vec::with_capacity(pts.len());
    for z in &pts {
        let (m, n) = orbit_with(&test, &c, z, budget)
            .ok_or_else(|| Error::Internal(format!("vertex {z} is not preperiodic")))?;
        points.push(OrbitPoint {
            value: z.clone(),
            preperiod: m,
            period: n,
        });
    }
    Ok(PortraitResult {
        portrait,
        points,
        c,
        field,
        search_params: SearchParams { n_max, depth_max },
    })
}

/// Rational `c` with `G(f_c, Q)` computed by exhaustive search over
/// `z = p/q` with `q^2 | den(c)`, `q <= q_max` and `|z|` below the escape
/// radius. Independent of the root-finding path.
pub fn brute_force_rational(c: &Rational, q_max: u64) -> Result<Portrait> {
    let field = QuadField::rationals();
    let cq = field.from_rational(c.clone());
    let test = EscapeTest::new(&cq);
    let radius = escape_radius(&cq).ceil() as i64;
    let den = c.denom();
    let mut found: Vec<QuadElem> = Vec::new();
    for q in 1..=q_max {
        let qb = BigInt::from(q);
        if !(den % (&qb * &qb)).is_zero() {
            continue;
        }
        let lim = radius * q as i64;
        for p in -lim..=lim {
            if BigInt::from(p).gcd(&qb) != BigInt::one() {
                continue;
            }
            let z = field.from_rational(Rational::new(p.into(), qb.clone()));
            if orbit_with(&test, &cq, &z, 64).is_some() {
                found.push(z);
            }
        }
    }
    found.sort_by(|a, b| a.cmp_height(b));
    let index: HashMap<&QuadElem, usize> = found.iter().enumerate().map(|(i, z)| (z, i)).collect();
    let succ = found.iter().map(|z| index[&(&z.square() + &cq)]).collect();
    Portrait::new(succ)
}

/// For each sample with portrait `6(3)`, the period-3 points must be fixed by
/// conjugation. Samples not labelled `6(3)` by `classify` are rejected.
pub fn verify_6_3_rationality(
    samples: &[PortraitResult],
    classify: impl Fn(&Portrait) -> Option<String>,
) -> Result<bool> {
    for s in samples {
        if classify(&s.portrait).as_deref() != Some("6(3)") {
            return domain(format!("sample c = {} does not have portrait 6(3)", s.c));
        }
    }
    Ok(samples.iter().all(|s| {
        s.points
            .iter()
            .filter(|p| p.preperiod == 0 && p.period == 3)
            .all(|p| p.value.conj() == p.value)
    }))
}

impl PortraitResult {
    pub fn rational_subportrait_size(&self) -> usize {
        self.points.iter().filter(|p| p.value.is_rational()).count()
    }

    pub fn max_height_bits(&self) -> u64 {
        self.points
            .iter()
            .map(|p| p.value.height().bits())
            .max()
            .unwrap_or(0)
    }

    pub fn value_f64(&self, i: usize) -> Option<f64> {
        self.points.get(i)?.value.a().to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(r: Rational) -> QuadElem {
        QuadElem::rational(r)
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_data(&q(rat(-1, 1)), &q(rat(0, 1)), 10), Some((0, 2)));
        assert_eq!(orbit_data(&q(rat(0, 1)), &q(rat(-1, 1)), 10), Some((1, 1)));
        assert_eq!(orbit_data(&q(rat(-2, 1)), &q(rat(1, 2)), 100), None);
    }

    #[test]
    fn portraits_over_q() {
        let r = portrait_of(&q(rat(0, 1)), 6, 64).unwrap();
        let vals: Vec<QuadElem> = r.points.iter().map(|p| p.value.clone()).collect();
        assert_eq!(vals, vec![q(rat(-1, 1)), q(rat(0, 1)), q(rat(1, 1))]);
        assert_eq!(r.portrait.succ(), &[2, 1, 2]);

        let r = portrait_of(&q(rat(-1, 1)), 6, 64).unwrap();
        assert_eq!(r.portrait.cycle_structure().to_string(), "(2)");
        assert_eq!(r.portrait.n(), 3);

        let r = portrait_of(&q(rat(-3, 4)), 6, 64).unwrap();
        assert_eq!(r.portrait.n(), 4);
        assert_eq!(r.portrait.cycle_structure().to_string(), "(1,1)");
        let half = r.points.iter().find(|p| p.value == q(rat(-1, 2))).unwrap();
        assert_eq!((half.preperiod, half.period), (0, 1));
    }

    #[test]
    fn degenerate_parameters() {
        assert_eq!(portrait_of(&q(rat(1, 4)), 6, 64).unwrap().portrait.n(), 2);
        let r = portrait_of(&q(rat(-29, 16)), 6, 64).unwrap();
        assert_eq!(r.portrait.n(), 8);
        assert_eq!(r.portrait.cycle_structure().to_string(), "(3)");
        assert_eq!(portrait_of(&q(rat(1, 2)), 6, 64).unwrap().portrait.n(), 0);
    }

    #[test]
    fn collision_parameters() {
        for c in [
            rat(1, 4),
            rat(-3, 4),
            rat(-2, 1),
            rat(-1, 1),
            rat(0, 1),
            rat(-7, 4),
        ] {
            assert!(is_collision_parameter(&q(c.clone())).unwrap(), "c = {c}");
        }
        for c in [rat(-29, 16), rat(-21, 16), rat(-10, 9), rat(3, 16)] {
            assert!(!is_collision_parameter(&q(c.clone())).unwrap(), "c = {c}");
        }
    }

    #[test]
    fn prefilter_never_hides_a_repeated_root() {
        let k = QuadField::new(-15).unwrap();
        let mut cs: Vec<QuadElem> = (-40..=10).map(|a| q(rat(a, 16))).collect();
        cs.extend((-6..=6).map(|b| k.elem(rat(-7, 48), rat(b, 6))));
        for c in &cs {
            if squarefree_mod_some_prime(c).unwrap() {
                assert!(!repeated_root(c).unwrap(), "c = {c}");
            }
        }
        assert!(!squarefree_mod_some_prime(&q(rat(-3, 4))).unwrap());
    }

    #[test]
    fn brute_force_agrees_on_examples() {
        for c in [
            rat(0, 1),
            rat(-1, 1),
            rat(-3, 4),
            rat(-29, 16),
            rat(-21, 16),
            rat(1, 4),
            rat(-2, 1),
        ] {
            let a = portrait_of(&q(c.clone()), 6, 64).unwrap().portrait;
            let b = brute_force_rational(&c, 100).unwrap();
            assert_eq!(a.canonical_form(), b.canonical_form(), "c = {c}");
        }
    }

    #[test]
    fn quadratic_field_portrait() {
        // c = -29/16 over Q(sqrt 33) grows 8(3) to 14(3,1,1)
        let k = QuadField::new(33).unwrap();
        let c = k.from_rational(rat(-29, 16));
        let r = portrait_of(&c, 6, 64).unwrap();
        assert_eq!(r.portrait.n(), 14);
        assert!(r.portrait.is_quadratic());
    }
}
