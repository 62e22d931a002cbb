//! Models of dynamical modular curves of genus 1 and 2, the c-maps down to
//! the parameter line, and ways to produce quadratic points on them.

mod bounds;
mod identities;
mod points;

use serde::Serialize;

use crate::arith::{rational_sqrt, sqf, QuadElem, QuadField, Rational};
use crate::error::{Error, Result};
use crate::poly::{BiPoly, UniPoly};

pub use bounds::{
    castelnuovo_deductions, cs_rhs, morton_lower_bound_check, Deduction, G_0_7, G_10_3, G_1_5,
    G_8_3, PHI2_DEGREE_ON_X1_5, X0_7_T_DEGREE,
};
pub use identities::realizes;
pub use identities::{identity_names, verify_identity};
pub use points::{
    c_of_t, candidate_points, eight_three_base_point, line_points, quad_point_minpoly,
    quadratic_x_points, rational_points, rationals_up_to, realization_points, CofT,
};

/// Labels with a stored model for X_1 of a genus 1 or 2 portrait.
pub const MODEL_LABELS: [&str; 10] = [
    "8(1,1)a",
    "8(1,1)b",
    "8(2)a",
    "8(2)b",
    "10(2,1,1)a",
    "10(2,1,1)b",
    "8(3)",
    "8(4)",
    "10(3,1,1)",
    "10(3,2)",
];

/// Auxiliary stored curves.
pub const AUX_LABELS: [&str; 8] = [
    "10(2,1,1)a/quartic",
    "10(2,1,1)b/quartic",
    "aux/C",
    "aux/X1ell11",
    "aux/genus3-x-rational",
    "aux/genus3-line(1,2)",
    "aux/genus3-line(1,-2)",
    "aux/genus3-line(-1,2)",
];

/// Further line-quotient labels beyond the first three in [`AUX_LABELS`].
pub const AUX_LINE_EXTRA: &str = "aux/genus3-line(-1,-2)";

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum Equation {
    /// y² = F(x)
    Hyper(UniPoly<Rational>),
    /// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6
    Long {
        a1: Rational,
        a2: Rational,
        a3: Rational,
        a4: Rational,
        a6: Rational,
    },
    /// G(x, y) = 0 with integer coefficients; stored in a [`BiPoly`] whose
    /// `c` slot holds x and `z` slot holds y.
    Plane(BiPoly),
}

/// c = A(x)/B(x) + y·C(x)/D(x).
#[derive(Clone, Debug, PartialEq)]
pub struct CMap {
    pub a: UniPoly<Rational>,
    pub b: UniPoly<Rational>,
    pub c: UniPoly<Rational>,
    pub d: UniPoly<Rational>,
}

#[derive(Clone, Debug)]
pub struct CurveModel {
    pub label: String,
    pub equation: Equation,
    pub c_map: Option<CMap>,
    pub genus: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticPointRecord {
    pub label: String,
    pub x: QuadElem,
    /// Squarefree d with the point defined over Q(√d); 1 for rational points.
    pub d: i64,
    pub y: QuadElem,
    pub c: Option<QuadElem>,
    /// c-map pole or a point with y = 0.
    pub degenerate: bool,
    /// c is a parameter where marked points merge, so the portrait there is
    /// smaller than the one the model parametrizes.
    pub collision: bool,
}

impl QuadraticPointRecord {
    fn build(
        label: &str,
        x: QuadElem,
        d: i64,
        y: QuadElem,
        c: Option<QuadElem>,
        flat: bool,
    ) -> Result<Self> {
        let collision = match &c {
            Some(c) => crate::orbit::is_collision_parameter(c)?,
            None => false,
        };
        Ok(QuadraticPointRecord {
            label: label.into(),
            x,
            d,
            y,
            degenerate: c.is_none() || flat,
            collision,
            c,
        })
    }

    /// Neither degenerate nor at a collision parameter.
    pub fn is_generic(&self) -> bool {
        !self.degenerate && !self.collision
    }
}

fn p(cs: &[i64]) -> UniPoly<Rational> {
    UniPoly::from_ints(cs)
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

// Shared c-map of the four genus 2 models.
fn cmap_g2() -> CMap {
    CMap {
        a: p(&[-1, -4, -9, -8, -4, -2, -1]),
        b: p(&[0, 0, 4, 8, 4]),
        c: UniPoly::zero(),
        d: p(&[1]),
    }
}

fn cmap_x_only(num: &[i64], den: &[i64]) -> CMap {
    CMap {
        a: p(num),
        b: p(den),
        c: UniPoly::zero(),
        d: p(&[1]),
    }
}

fn hyper(label: &str, f: &[i64], c_map: Option<CMap>, genus: u32) -> CurveModel {
    CurveModel {
        label: label.into(),
        equation: Equation::Hyper(p(f)),
        c_map,
        genus,
    }
}

/// 4(x²+1)² − 2(x²−1)²(x³+x²−x+1)
fn genus3_x_rational() -> UniPoly<Rational> {
    let a = p(&[1, 0, 1]);
    let b = p(&[-1, 0, 1]);
    let e = p(&[1, -1, 1, 1]);
    a.mul(&a).scale(&r(4)).sub(&b.mul(&b).mul(&e).scale(&r(2)))
}

/// The stored model for `label`.
pub fn model(label: &str) -> Result<CurveModel> {
    let m = match label {
        "8(1,1)a" => hyper(
            label,
            &[0, 1, -1, 1],
            Some(cmap_x_only(&[-1, 0, -2, 0, -1], &[0, 4, -8, 4])),
            1,
        ),
        "8(1,1)b" => hyper(
            label,
            &[2, -2, 2, 2],
            Some(cmap_x_only(&[-2, 0, -2], &[1, 0, -2, 0, 1])),
            1,
        ),
        "8(2)a" => hyper(
            label,
            &[1, -2, 0, 1],
            Some(cmap_x_only(&[4, -8, 4, 0, -1], &[0, 0, -4, 4])),
            1,
        ),
        "8(2)b" => hyper(
            label,
            &[2, -2, 2, 2],
            Some(cmap_x_only(&[-1, 2, -2, -2, -1], &[1, 0, -2, 0, 1])),
            1,
        ),
        "10(2,1,1)a" => CurveModel {
            label: label.into(),
            equation: Equation::Long {
                a1: r(1),
                a2: r(-1),
                a3: r(1),
                a4: r(-1),
                a6: r(0),
            },
            c_map: Some(CMap {
                a: p(&[1, -3, 0, 1, -1]),
                b: p(&[0, 0, -4, 4]),
                c: p(&[-2, 1]),
                d: p(&[0, -4, 4]),
            }),
            genus: 1,
        },
        "10(2,1,1)b" => CurveModel {
            label: label.into(),
            equation: Equation::Long {
                a1: r(1),
                a2: r(1),
                a3: r(1),
                a4: r(0),
                a6: r(0),
            },
            c_map: Some(CMap {
                a: p(&[-1, -3, -6, -4, -1]),
                b: p(&[0, 0, 4, 4]),
                c: p(&[-2, -1]),
                d: p(&[0, 4, 4]),
            }),
            genus: 1,
        },
        "10(2,1,1)a/quartic" => hyper(
            label,
            &[5, 8, 6, -8, 5],
            Some(cmap_x_only(&[-3, 0, -10, 0, -3], &[4, 0, -8, 0, 4])),
            1,
        ),
        "10(2,1,1)b/quartic" => hyper(
            label,
            &[-3, 0, 14, 0, 5],
            Some(cmap_x_only(&[-3, 0, -10, 0, -3], &[4, 0, -8, 0, 4])),
            1,
        ),
        "8(3)" => hyper(label, &[1, 2, 5, 2, -2, 0, 1], Some(cmap_g2()), 2),
        "8(4)" => hyper(
            label,
            &[0, 1, 2, 0, 2, -1],
            Some(CMap {
                a: p(&[-1, -3, 3, -10, -3, -3, 1]),
                b: p(&[0, 4, 0, -8, 0, 4]),
                c: UniPoly::zero(),
                d: p(&[1]),
            }),
            2,
        ),
        "10(3,1,1)" => hyper(label, &[1, 4, 10, 10, 5, 2, 1], Some(cmap_g2()), 2),
        "10(3,2)" => hyper(label, &[1, 4, 6, 2, 1, 2, 1], Some(cmap_g2()), 2),
        "aux/C" => {
            // (y² − 2(x²+1))² − 2(x²−1)²(x³+x²−x+1), x in the c slot
            let x = BiPoly::c();
            let y = BiPoly::z();
            let two = BiPoly::from_terms(&[(0, 0, 2)]);
            let inner = y.square().sub(&two.mul(&x.square().add(&BiPoly::one())));
            let xm = x.square().sub(&BiPoly::one());
            let cub = BiPoly::from_terms(&[(3, 0, 1), (2, 0, 1), (1, 0, -1), (0, 0, 1)]);
            let g = inner.square().sub(&two.mul(&xm.square()).mul(&cub));
            CurveModel {
                label: label.into(),
                equation: Equation::Plane(g),
                c_map: None,
                genus: 5,
            }
        }
        "aux/X1ell11" => hyper(label, &[2, -2, 2, 2], None, 1),
        "aux/genus3-x-rational" => CurveModel {
            label: label.into(),
            equation: Equation::Hyper(genus3_x_rational()),
            c_map: None,
            genus: 3,
        },
        l if l.starts_with("aux/genus3-line(") => {
            let inner = l
                .trim_start_matches("aux/genus3-line(")
                .trim_end_matches(')');
            let (x0, w0) = inner
                .split_once(',')
                .and_then(|(a, b)| Some((a.parse::<i64>().ok()?, b.parse::<i64>().ok()?)))
                .ok_or_else(|| Error::Domain(format!("unknown curve {label:?}")))?;
            if x0.abs() != 1 || w0.abs() != 2 {
                return Err(Error::Domain(format!(
                    "({x0},{w0}) is not an affine rational point of X1(11)"
                )));
            }
            let g = identities::line_quotient(x0, w0);
            CurveModel {
                label: label.into(),
                equation: Equation::Hyper(g),
                c_map: None,
                genus: 3,
            }
        }
        _ => return Err(Error::Domain(format!("no stored model for {label:?}"))),
    };
    Ok(m)
}

impl Equation {
    /// Whether (x, y) lies on the curve.
    pub fn contains(&self, x: &QuadElem, y: &QuadElem) -> bool {
        match self {
            Equation::Hyper(f) => y.square() == eval_q(f, x),
            Equation::Long { a1, a2, a3, a4, a6 } => {
                let q = |r: &Rational| QuadElem::rational(r.clone());
                let lhs = y.square() + &(&q(a1) * x) * y + &q(a3) * y;
                let rhs = &(x.square() * x) + &(&q(a2) * &x.square()) + &q(a4) * x + q(a6);
                lhs == rhs
            }
            Equation::Plane(g) => {
                let k = if x.is_rational() {
                    y.field()
                } else {
                    x.field()
                };
                let mut acc = QuadElem::zero_in(k);
                for i in 0..=g.deg_z().unwrap_or(0) {
                    for j in 0..=g.deg_c().unwrap_or(0) {
                        let k = g.coeff(j, i);
                        if k.sign() != num_bigint::Sign::NoSign {
                            acc = acc
                                + QuadElem::rational(Rational::from_integer(k))
                                    * x.pow(j as u32)
                                    * y.pow(i as u32);
                        }
                    }
                }
                acc.is_zero()
            }
        }
    }
}

/// Evaluates a rational polynomial at a field element.
pub fn eval_q(f: &UniPoly<Rational>, x: &QuadElem) -> QuadElem {
    let mut acc = QuadElem::zero_in(x.field());
    for k in f.coeffs().iter().rev() {
        acc = &acc * x + QuadElem::rational(k.clone());
    }
    acc
}

impl CMap {
    /// c at (x, y), or `None` at a pole.
    pub fn eval(&self, x: &QuadElem, y: &QuadElem) -> Option<QuadElem> {
        let mut c = eval_q(&self.a, x) * eval_q(&self.b, x).inv()?;
        if !self.c.is_zero() {
            let den = eval_q(&self.d, x).inv()?;
            c = c + eval_q(&self.c, x) * den * y;
        }
        Some(c)
    }
}

impl CurveModel {
    /// c at a point, `None` at a pole or for curves without a c-map.
    pub fn c_at(&self, x: &QuadElem, y: &QuadElem) -> Option<QuadElem> {
        self.c_map.as_ref()?.eval(x, y)
    }

    /// The two y over a rational x, as (d, y) with y in Q(√d). For the long
    /// form this is the root with the plus sign.
    fn y_over(&self, x0: &Rational) -> Result<(i64, QuadElem)> {
        let disc;
        let shift;
        match &self.equation {
            Equation::Hyper(f) => {
                disc = f.eval(x0);
                shift = Rational::from_integer(0.into());
            }
            Equation::Long { a1, a2, a3, a4, a6 } => {
                let h = a1 * x0 + a3;
                let rhs = x0 * x0 * x0 + a2 * x0 * x0 + a4 * x0 + a6;
                disc = &h * &h + rhs * r(4);
                shift = -h;
            }
            Equation::Plane(_) => {
                return Err(Error::Domain(format!("{} has no x-lift", self.label)))
            }
        }
        let half = |q: QuadElem| match &self.equation {
            Equation::Long { .. } => q * QuadElem::rational(Rational::new(1.into(), 2.into())),
            _ => q,
        };
        if disc == r(0) {
            return Ok((1, half(QuadElem::rational(shift))));
        }
        let d = sqf(&disc)?;
        let d64: i64 = i64::try_from(&d)
            .map_err(|_| Error::Resource(format!("field discriminant {d} too large")))?;
        let k = QuadField::new(d64)?;
        let m = rational_sqrt(&(&disc / Rational::from_integer(d.clone())))
            .ok_or_else(|| Error::Internal("squarefree part left a non-square".into()))?;
        let y = if d64 == 1 {
            QuadElem::rational(m)
        } else {
            k.elem(r(0), m)
        };
        Ok((d64, half(QuadElem::rational(shift) + y)))
    }
}

/// Point over a rational x0 with y in Q(√F(x0)).
pub fn lift_x(label: &str, x0: &Rational) -> Result<QuadraticPointRecord> {
    let m = model(label)?;
    let (d, y) = m.y_over(x0)?;
    let x = QuadElem::rational(x0.clone());
    let c = m.c_at(&x, &y);
    let flat = match &m.equation {
        Equation::Hyper(f) => f.eval(x0) == r(0),
        _ => false,
    };
    debug_assert!(m.equation.contains(&x, &y));
    QuadraticPointRecord::build(label, x, d, y, c, flat)
}

/// Record for an explicit point (x, y), checked against the equation.
pub fn record_at(label: &str, x: QuadElem, y: QuadElem) -> Result<QuadraticPointRecord> {
    let m = model(label)?;
    if !m.equation.contains(&x, &y) {
        return Err(Error::Domain(format!("({x}, {y}) is not on {label}")));
    }
    let d = if x.is_rational() { y.d() } else { x.d() };
    let c = m.c_at(&x, &y);
    let flat = matches!(m.equation, Equation::Hyper(_)) && y.is_zero();
    QuadraticPointRecord::build(label, x, d, y, c, flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn stored_models() {
        let m = model("8(1,1)a").unwrap();
        assert_eq!(
            m.equation,
            Equation::Hyper(UniPoly::from_ints(&[0, 1, -1, 1]))
        );
        assert_eq!(
            model("8(4)").unwrap().equation,
            Equation::Hyper(UniPoly::from_ints(&[0, 1, 2, 0, 2, -1]))
        );
        assert_eq!(
            model("10(3,1,1)").unwrap().equation,
            Equation::Hyper(UniPoly::from_ints(&[1, 4, 10, 10, 5, 2, 1]))
        );
        assert!(model("9(1)").is_err());
        for l in MODEL_LABELS
            .iter()
            .chain(&AUX_LABELS)
            .chain(std::iter::once(&AUX_LINE_EXTRA))
        {
            model(l).unwrap();
        }
    }

    #[test]
    fn quartic_models_expand() {
        // (5x²−1)(x²+3)
        let f = UniPoly::from_ints(&[-1, 0, 5]).mul(&UniPoly::from_ints(&[3, 0, 1]));
        assert_eq!(
            model("10(2,1,1)b/quartic").unwrap().equation,
            Equation::Hyper(f)
        );
    }

    #[test]
    fn lift_examples() {
        let p = lift_x("8(1,1)b", &rat(1, 1)).unwrap();
        assert_eq!((p.d, p.y.clone()), (1, QuadElem::from_i64(2)));
        let p = lift_x("8(4)", &rat(2, 1)).unwrap();
        assert_eq!(p.d, 10);
        assert!(!p.degenerate);
        assert!(p.c.unwrap().is_rational());
        assert!(lift_x("8(1,1)a", &rat(1, 1)).unwrap().degenerate);
    }

    #[test]
    fn long_form_lift_is_on_curve() {
        for x in [2, 5, -4, 7] {
            let rec = lift_x("10(2,1,1)a", &rat(x, 1)).unwrap();
            let m = model("10(2,1,1)a").unwrap();
            assert!(m.equation.contains(&rec.x, &rec.y));
        }
    }
}
