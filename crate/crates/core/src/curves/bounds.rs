//! Genus constants and the inequality calculators used to rule out
//! infinitely many quadratic points.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::Rational;
use crate::dynatomic::cycle_bound_r;
use crate::error::{domain, Result};

/// Genus of X_0(7).
pub const G_0_7: u64 = 16;
/// Genus of X_1(5).
pub const G_1_5: u64 = 14;
/// Degree of Φ_2 as a function on X_1(5).
pub const PHI2_DEGREE_ON_X1_5: u64 = 7;
/// Degree of the auxiliary coordinate t on the model of X_0(7).
pub const X0_7_T_DEGREE: u64 = 9;
/// Genus of X_1 of 10(3)a and of 10(3)b.
pub const G_10_3: u64 = 9;
/// Genus of the 8(3) curve.
pub const G_8_3: u64 = 2;

/// Right-hand side of the Castelnuovo–Severi inequality
/// g ≤ d1·g1 + d2·g2 + (d1 − 1)(d2 − 1).
pub fn cs_rhs(d1: u64, g1: u64, d2: u64, g2: u64) -> u64 {
    assert!(d1 >= 1 && d2 >= 1, "map degrees are positive");
    d1 * g1 + d2 * g2 + (d1 - 1) * (d2 - 1)
}

/// One Castelnuovo–Severi deduction for a degree-d map to a curve of genus
/// `g_c`: the least `d` allowed by the inequality, the closed-form bound it
/// should equal after rounding up, and whether `d = 2` is excluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deduction {
    pub name: &'static str,
    pub g_c: u64,
    pub least_d: u64,
    pub closed_form: Rational,
    pub excludes_two: bool,
}

impl Deduction {
    pub fn holds(&self) -> bool {
        let ceil = self.closed_form.ceil().to_integer();
        self.excludes_two && BigInt::from(self.least_d) == ceil
    }
}

fn least_d(genus: u64, rhs: impl Fn(u64) -> u64) -> u64 {
    (1..).find(|&d| rhs(d) >= genus).expect("rhs grows with d")
}

/// The three deductions against maps of degree 2 to curves of genus ≤ 1:
/// X_0(7) against the degree 9 coordinate t, the 10(3) curves against their
/// double cover of the 8(3) curve, and X_1(5) against Φ_2 of degree 7.
pub fn castelnuovo_deductions() -> Vec<Deduction> {
    let q = |a: u64, b: u64| Rational::new(a.into(), b.into());
    let mut out = Vec::new();
    for g_c in 0..=1 {
        let x07 = |d| cs_rhs(d, g_c, X0_7_T_DEGREE, 0);
        out.push(Deduction {
            name: "x0-7",
            g_c,
            least_d: least_d(G_0_7, x07),
            closed_form: q(24, g_c + 8),
            excludes_two: x07(2) < G_0_7,
        });
        let ten3 = |d| cs_rhs(2, G_8_3, d, g_c);
        out.push(Deduction {
            name: "ten-three",
            g_c,
            least_d: least_d(G_10_3, ten3),
            closed_form: q(6, g_c + 1),
            excludes_two: ten3(2) < G_10_3,
        });
        let x15 = |d| cs_rhs(d, g_c, PHI2_DEGREE_ON_X1_5, 0);
        out.push(Deduction {
            name: "x1-5",
            g_c,
            least_d: least_d(G_1_5, x15),
            closed_form: q(G_1_5 + 6, g_c + 6),
            excludes_two: x15(2) < G_1_5,
        });
    }
    out
}

// 140/99 < √2 < 99/70
fn sqrt2_bounds() -> (Rational, Rational) {
    (
        Rational::new(140.into(), 99.into()),
        Rational::new(99.into(), 70.into()),
    )
}

/// Rational (lower, upper) bounds on 2^(n/2); exact for even n.
fn half_power_bounds(n: u32) -> (Rational, Rational) {
    let base = Rational::from_integer(BigInt::one() << (n / 2));
    if n.is_multiple_of(2) {
        (base.clone(), base)
    } else {
        let (lo, hi) = sqrt2_bounds();
        (&base * lo, base * hi)
    }
}

/// Certifies g_{0,n} > R(n) + 1 for n ≥ 17 from the lower bound
/// g_{0,n} ≥ 3/2 + (1/4 − 1/n)·2^n − (n+1)·2^(n/2 − 1), and checks the
/// auxiliary chain (n+1)·2^(3 − n/2) < 1/2 < 1 − 8/n. Every term is exact
/// rational arithmetic with 2^(n/2) replaced by a bound on the safe side.
pub fn morton_lower_bound_check(n: u32) -> Result<bool> {
    if n < 17 {
        return domain("the general estimate starts at n = 17");
    }
    let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
    let (lo, hi) = half_power_bounds(n);
    let big = Rational::from_integer(BigInt::one() << n);
    let nn = i64::from(n);
    let lower = q(3, 2) + (q(1, 4) - q(1, nn)) * big - q(nn + 1, 2) * hi;
    let r = Rational::from_integer(BigInt::from(cycle_bound_r(n)?));
    let genus_ok = lower > r + q(1, 1);
    let chain_ok = q(8 * (nn + 1), 1) < lo * q(1, 2) && q(1, 2) < q(1, 1) - q(8, nn);
    Ok(genus_ok && chain_ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cs_examples() {
        assert_eq!(cs_rhs(2, 2, 2, 0), 5);
        assert!(cs_rhs(2, 2, 2, 0) < G_10_3);
        assert_eq!(cs_rhs(2, 0, 9, 0), 8);
        assert!(cs_rhs(2, 0, 9, 0) < G_0_7);
        for g in 0..5 {
            assert_eq!(cs_rhs(1, g, 1, 0), g);
        }
    }

    #[test]
    fn deductions_hold() {
        let ds = castelnuovo_deductions();
        assert_eq!(ds.len(), 6);
        for d in &ds {
            assert!(d.holds(), "{d:?}");
        }
        let x07: Vec<u64> = ds
            .iter()
            .filter(|d| d.name == "x0-7")
            .map(|d| d.least_d)
            .collect();
        assert_eq!(x07, vec![3, 3]);
    }

    #[test]
    fn sqrt2_brackets() {
        let (lo, hi) = sqrt2_bounds();
        let two = Rational::from_integer(2.into());
        assert!(&lo * &lo < two && &hi * &hi > two);
    }

    #[test]
    fn morton_range() {
        assert!(morton_lower_bound_check(16).is_err());
        for n in [17, 18, 40] {
            assert!(morton_lower_bound_check(n).unwrap(), "n = {n}");
        }
        assert_eq!(cycle_bound_r(18).unwrap(), 14532);
    }
}
