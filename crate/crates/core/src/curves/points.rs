//! Producing rational and quadratic points on the stored models.

use num_integer::Integer;
use num_traits::Zero;

use super::{eval_q, lift_x, model, record_at, Equation, QuadraticPointRecord};
use crate::arith::{rational_sqrt, sqf, sqrt_in_field, QuadElem, QuadField, Rational};
use crate::error::{domain, Error, Result};
use crate::poly::UniPoly;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Rationals of height at most `h`, ordered by height then value.
pub fn rationals_up_to(h: u64) -> Vec<Rational> {
    let h = h as i64;
    let mut out = Vec::new();
    for den in 1..=h {
        for num in -h..=h {
            if num.gcd(&den) == 1 {
                out.push(Rational::new(num.into(), den.into()));
            }
        }
    }
    out.sort_by(|a, b| {
        crate::arith::height(a)
            .cmp(&crate::arith::height(b))
            .then(a.cmp(b))
    });
    out
}

/// For y² = a·x³ + b·x² + c·x + d, the monic quadratic satisfied by the other
/// two x-coordinates where the line through (x0, y0) with slope t meets the
/// curve.
pub fn quad_point_minpoly(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    x0: &Rational,
    y0: &Rational,
    t: &Rational,
) -> Result<UniPoly<Rational>> {
    if a.is_zero() {
        return domain("leading coefficient must be nonzero");
    }
    let t2 = t * t;
    let lin = (a * x0 - &t2 + b) / a;
    let cst = (a * x0 * x0 + &t2 * x0 + b * x0 - r(2) * y0 * t + c) / a;
    Ok(UniPoly::new(vec![cst, lin, r(1)]))
}

fn cubic_coeffs(label: &str) -> Result<(UniPoly<Rational>, [Rational; 4])> {
    match model(label)?.equation {
        Equation::Hyper(f) if f.degree() == Some(3) => {
            let cs = f.coeffs();
            Ok((
                f.clone(),
                [cs[3].clone(), cs[2].clone(), cs[1].clone(), cs[0].clone()],
            ))
        }
        _ => Err(Error::Domain(format!(
            "{label} is not a cubic y² = F(x) model"
        ))),
    }
}

/// Affine rational points of height at most `h` on a y² = F(x) model.
pub fn rational_points(label: &str, h: u64) -> Result<Vec<(Rational, Rational)>> {
    let f = match model(label)?.equation {
        Equation::Hyper(f) => f,
        _ => return Err(Error::Domain(format!("{label} is not in y² = F(x) form"))),
    };
    let mut out = Vec::new();
    for x in rationals_up_to(h) {
        let v = f.eval(&x);
        if let Some(y) = rational_sqrt(&v) {
            if !y.is_zero() {
                out.push((x.clone(), -y.clone()));
            }
            out.push((x, y));
        }
    }
    Ok(out)
}

/// The residual intersection of the curve with y − y0 = t(x − x0). Quadratic
/// conjugate pairs are reported once, with the root carrying +√d.
pub fn line_points(
    label: &str,
    base: (&Rational, &Rational),
    t: &Rational,
) -> Result<Vec<QuadraticPointRecord>> {
    let (f, [a, b, c, _]) = cubic_coeffs(label)?;
    let (x0, y0) = base;
    if f.eval(x0) != y0 * y0 {
        return Err(Error::Domain(format!("({x0}, {y0}) is not on {label}")));
    }
    let mp = quad_point_minpoly(&a, &b, &c, x0, y0, t)?;
    let (p1, p0) = (mp.coeffs()[1].clone(), mp.coeffs()[0].clone());
    let disc = &p1 * &p1 - r(4) * &p0;
    let half = Rational::new(1.into(), 2.into());
    let y_of = |x: &QuadElem| {
        QuadElem::rational(y0.clone())
            + QuadElem::rational(t.clone()) * (x - &QuadElem::rational(x0.clone()))
    };
    if disc.is_zero() {
        let x = QuadElem::rational(-&p1 * &half);
        let y = y_of(&x);
        return Ok(vec![record_at(label, x, y)?]);
    }
    if let Some(s) = rational_sqrt(&disc) {
        let mut out = Vec::new();
        for s in [s.clone(), -s] {
            let x = QuadElem::rational((-&p1 + s) * &half);
            let y = y_of(&x);
            out.push(record_at(label, x, y)?);
        }
        return Ok(out);
    }
    let d = sqf(&disc)?;
    let d = i64::try_from(&d).map_err(|_| Error::Resource("line discriminant too large".into()))?;
    let m = rational_sqrt(&(&disc / r(d)))
        .ok_or_else(|| Error::Internal("sqf left a non-square".into()))?;
    let k = QuadField::new(d)?;
    let x = k.elem(-&p1 * &half, m * &half);
    let y = y_of(&x);
    Ok(vec![record_at(label, x, y)?])
}

/// Closed forms for c along a pencil of lines.
#[derive(Clone, Debug, PartialEq)]
pub enum CofT {
    /// c is this rational number for both residual points.
    Rational(Rational),
    /// c = slope·x + intercept where x is a root of `minpoly`.
    Affine {
        minpoly: UniPoly<Rational>,
        slope: Rational,
        intercept: Rational,
    },
}

/// c as a function of the slope t for the pencils through the rational points
/// of the 8(1,1)a and 8(1,1)b models.
pub fn c_of_t(label: &str, base: (i64, i64), t: &Rational) -> Result<CofT> {
    let t2 = t * t;
    let pole = || Error::Domain(format!("t = {t} is a pole"));
    let div = |num: Rational, den: Rational| {
        if den.is_zero() {
            Err(pole())
        } else {
            Ok(num / den)
        }
    };
    match (label, base) {
        ("8(1,1)a", (0, 0)) => {
            let n = (&t2 + r(1)) * (&t2 + r(1));
            Ok(CofT::Rational(div(-n, r(4) * (t - r(1)) * (t + r(1)))?))
        }
        ("8(1,1)a", (1, 1)) => {
            let n = &t2 * (&t2 - r(2) * t + r(2));
            Ok(CofT::Rational(div(-n, r(4) * (t - r(1)) * (t - r(1)))?))
        }
        ("8(1,1)a", (1, -1)) => {
            let n = &t2 * (&t2 + r(2) * t + r(2));
            Ok(CofT::Rational(div(-n, r(4) * (t + r(1)) * (t + r(1)))?))
        }
        ("8(1,1)b", (1, 2)) => {
            let half = Rational::new(1.into(), 2.into());
            let minpoly = UniPoly::new(vec![
                (&t2 - r(4) * t + r(2)) * &half,
                -(&t2 - r(4)) * &half,
                r(1),
            ]);
            let slope = div(t + r(2), r(8) * (t - r(2)))?;
            let t3 = &t2 * t;
            let t5 = &t3 * &t2;
            let num = t5 - r(10) * &t3 + r(8) * &t2 + r(8) * t + r(32);
            let intercept = -div(num, r(16) * (t - r(2)) * (t - r(2)) * t)?;
            Ok(CofT::Affine {
                minpoly,
                slope,
                intercept,
            })
        }
        _ => Err(Error::Domain(format!(
            "no closed form for {label} through {base:?}"
        ))),
    }
}

/// Points with x a root of an irreducible x² + u·x + v (u, v of height at most
/// `h`) and y in Q(x). Conjugate pairs are reported once.
pub fn quadratic_x_points(label: &str, h: u64) -> Result<Vec<QuadraticPointRecord>> {
    let f = match model(label)?.equation {
        Equation::Hyper(f) => f,
        _ => return Err(Error::Domain(format!("{label} is not in y² = F(x) form"))),
    };
    let rs = rationals_up_to(h);
    let half = Rational::new(1.into(), 2.into());
    let mut out = Vec::new();
    for u in &rs {
        for v in &rs {
            let disc = u * u - r(4) * v;
            if disc.is_zero() || rational_sqrt(&disc).is_some() {
                continue;
            }
            let Ok(d) = sqf(&disc) else { continue };
            let Ok(d) = i64::try_from(&d) else { continue };
            let m = rational_sqrt(&(&disc / r(d))).expect("square after sqf");
            let k = QuadField::new(d)?;
            let x = k.elem(-u * &half, m * &half);
            let fx = eval_q(&f, &x);
            if let Some(y) = sqrt_in_field(&fx) {
                if !y.is_rational() || !y.is_zero() {
                    out.push(record_at(label, x, y)?);
                }
            }
        }
    }
    Ok(out)
}

/// Every point the generators produce on `label`'s model, degenerate ones
/// included: x-lifts of height at most `h`, residual points of lines through
/// rational points of height at most 4 with slope height at most
/// `min(h, 12)` on the cubic models, and points with quadratic x of height at
/// most `min(h, 6)` on the genus 2 models.
pub fn candidate_points(label: &str, h: u64) -> Result<Vec<QuadraticPointRecord>> {
    let m = model(label)?;
    let mut out = Vec::new();
    for x in rationals_up_to(h) {
        match lift_x(label, &x) {
            Ok(rec) => out.push(rec),
            Err(Error::Domain(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if let Equation::Hyper(f) = &m.equation {
        if f.degree() == Some(3) {
            let bases = rational_points(label, 4)?;
            for (x0, y0) in &bases {
                for t in rationals_up_to(h.min(12)) {
                    out.extend(
                        line_points(label, (x0, y0), &t)?
                            .into_iter()
                            .filter(|rec| !rec.x.is_rational()),
                    );
                }
            }
        } else if f.degree().is_some_and(|d| d >= 5) {
            out.extend(quadratic_x_points(label, h.min(6))?);
        }
    }
    Ok(out)
}

/// The generic (neither degenerate nor collision) points among
/// [`candidate_points`].
pub fn realization_points(label: &str, h: u64) -> Result<Vec<QuadraticPointRecord>> {
    Ok(candidate_points(label, h)?
        .into_iter()
        .filter(QuadraticPointRecord::is_generic)
        .collect())
}

/// The point of the 8(3) model over Q(√−15) with x = −(1 + √−15)/4.
pub fn eight_three_base_point() -> QuadraticPointRecord {
    let k = QuadField::new(-15).expect("squarefree");
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let x = k.elem(q(-1, 4), q(-1, 4));
    let y = k.elem(q(-17, 16), q(-9, 16));
    record_at("8(3)", x, y).expect("base point lies on the 8(3) model")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn is_three_integral(x: &QuadElem) -> bool {
        crate::arith::is_p_integral(x, &3.into()).unwrap()
    }

    #[test]
    fn minpoly_examples() {
        let (one, zero, m1) = (r(1), r(0), r(-1));
        let mp = quad_point_minpoly(&one, &m1, &one, &zero, &zero, &zero).unwrap();
        assert_eq!(mp, UniPoly::from_ints(&[1, -1, 1]));
        let mp = quad_point_minpoly(&one, &m1, &one, &zero, &zero, &r(2)).unwrap();
        assert_eq!(mp, UniPoly::from_ints(&[1, -5, 1]));
        assert!(quad_point_minpoly(&zero, &one, &one, &zero, &zero, &one).is_err());
    }

    #[test]
    fn line_points_lie_on_line_and_curve() {
        for t in [0, 2, 3, -5] {
            let pts = line_points("8(1,1)a", (&r(0), &r(0)), &r(t)).unwrap();
            for p in pts {
                let y = QuadElem::rational(r(t)) * &p.x;
                assert_eq!(p.y, y);
            }
        }
    }

    #[test]
    fn c_of_t_examples() {
        assert_eq!(
            c_of_t("8(1,1)a", (0, 0), &r(0)).unwrap(),
            CofT::Rational(rat(1, 4))
        );
        assert_eq!(
            c_of_t("8(1,1)a", (0, 0), &r(2)).unwrap(),
            CofT::Rational(rat(-25, 12))
        );
        assert!(c_of_t("8(1,1)a", (0, 0), &r(1)).is_err());
        match c_of_t("8(1,1)b", (1, 2), &r(5)).unwrap() {
            CofT::Affine { minpoly, .. } => {
                assert_eq!(minpoly, UniPoly::new(vec![rat(7, 2), rat(-21, 2), r(1)]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn affine_c_matches_c_map() {
        for t in [1, 4, 7, -2] {
            let CofT::Affine {
                slope, intercept, ..
            } = c_of_t("8(1,1)b", (1, 2), &r(t)).unwrap()
            else {
                panic!()
            };
            for p in line_points("8(1,1)b", (&r(1), &r(2)), &r(t)).unwrap() {
                let want = QuadElem::rational(slope.clone()) * &p.x
                    + QuadElem::rational(intercept.clone());
                assert_eq!(p.c.unwrap(), want, "t = {t}");
            }
        }
    }

    #[test]
    fn base_point_of_eight_three() {
        let p = eight_three_base_point();
        let k = QuadField::new(-15).unwrap();
        // the c-map value; its negative has no preperiodic points over the field
        assert_eq!(p.c.unwrap(), k.elem(rat(-7, 48), rat(-8, 48)));
    }

    #[test]
    fn small_rational_points() {
        let pts = rational_points("aux/X1ell11", 10).unwrap();
        let mut xs: Vec<_> = pts.iter().map(|(x, y)| (x.clone(), y.clone())).collect();
        xs.sort();
        assert_eq!(
            xs,
            vec![(r(-1), r(-2)), (r(-1), r(2)), (r(1), r(-2)), (r(1), r(2))]
        );
    }

    #[test]
    fn three_integrality_along_pencil() {
        for t in [1, 4, -2, 7] {
            for p in line_points("8(1,1)b", (&r(1), &r(2)), &r(t)).unwrap() {
                assert!(is_three_integral(&p.c.unwrap()), "t = {t}");
            }
        }
    }
}
