//! Named symbolic and sampled identities behind the curve arguments.

use super::points::realization_points;
use super::{model, Equation, QuadraticPointRecord, AUX_LABELS, AUX_LINE_EXTRA, MODEL_LABELS};
use crate::arith::{QuadElem, QuadField, Rational};
use crate::error::{Error, Result};
use crate::orbit::orbit_data;
use crate::poly::{BiPoly, UniPoly};
use crate::portrait::Catalog;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

// α + βx in Q[t][x]/(x² + Bx + C)
#[derive(Clone)]
struct Lin {
    a: UniPoly<Rational>,
    b: UniPoly<Rational>,
}

struct Ring {
    bq: UniPoly<Rational>,
    cq: UniPoly<Rational>,
}

impl Ring {
    fn konst(&self, p: UniPoly<Rational>) -> Lin {
        Lin {
            a: p,
            b: UniPoly::zero(),
        }
    }

    fn add(&self, u: &Lin, v: &Lin) -> Lin {
        Lin {
            a: u.a.add(&v.a),
            b: u.b.add(&v.b),
        }
    }

    fn mul(&self, u: &Lin, v: &Lin) -> Lin {
        let bb = u.b.mul(&v.b);
        Lin {
            a: u.a.mul(&v.a).sub(&bb.mul(&self.cq)),
            b: u.a.mul(&v.b).add(&v.a.mul(&u.b)).sub(&bb.mul(&self.bq)),
        }
    }

    fn norm(&self, u: &Lin) -> UniPoly<Rational> {
        u.a.mul(&u.a)
            .sub(&u.a.mul(&u.b).mul(&self.bq))
            .add(&u.b.mul(&u.b).mul(&self.cq))
    }
}

/// g(t) with u² = g(t), u = 2·N(z), for the quadratic points of the genus 5
/// curve whose image on X1(11) lies on the line w = w0 + t(x − x0).
pub(crate) fn line_quotient(x0: i64, w0: i64) -> UniPoly<Rational> {
    let half = Rational::new(1.into(), 2.into());
    // x² + B x + C = 0 with B = (2x0 − t² + 2)/2, C = (2x0² + t²x0 + 2x0 − 2w0t − 2)/2
    let bq = UniPoly::new(vec![r(2 * x0 + 2), r(0), r(-1)]).scale(&half);
    let cq = UniPoly::new(vec![r(2 * x0 * x0 + 2 * x0 - 2), r(-2 * w0), r(x0)]).scale(&half);
    let ring = Ring { bq, cq };
    let x = Lin {
        a: UniPoly::zero(),
        b: UniPoly::constant(r(1)),
    };
    let x2 = ring.mul(&x, &x);
    let one = ring.konst(UniPoly::constant(r(1)));
    let neg_one = ring.konst(UniPoly::constant(r(-1)));
    let two = ring.konst(UniPoly::constant(r(2)));
    // w = w0 − t·x0 + t·x
    let w = Lin {
        a: UniPoly::new(vec![r(w0), r(-x0)]),
        b: UniPoly::new(vec![r(0), r(1)]),
    };
    let rhs = ring.add(
        &ring.mul(&two, &ring.add(&x2, &one)),
        &ring.mul(&ring.add(&x2, &neg_one), &w),
    );
    ring.norm(&rhs).scale(&r(4))
}

fn is_squarefree(f: &UniPoly<Rational>) -> bool {
    f.gcd(&f.derivative()).degree() == Some(0)
}

fn has_integral_coeffs(f: &UniPoly<Rational>) -> bool {
    f.coeffs().iter().all(|c| c.is_integer())
}

/// Substitutes z := h into g, both in the same two variables.
fn subst_z(g: &BiPoly, h: &BiPoly) -> BiPoly {
    let mut acc = BiPoly::zero();
    let mut hp = BiPoly::one();
    for i in 0..=g.deg_z().unwrap_or(0) {
        let term = BiPoly::from_c_coeffs(g.z_coeff(i));
        acc = acc.add(&term.mul(&hp));
        hp = hp.mul(h);
    }
    acc
}

fn preperiod_four_substitution() -> Result<bool> {
    let Equation::Plane(g) = model("aux/C")?.equation else {
        return Err(Error::Internal("aux/C is stored as a plane curve".into()));
    };
    // variables: x in the c slot, p in the z slot
    let x = BiPoly::c();
    let pv = BiPoly::z();
    let xm = x.square().sub(&BiPoly::one());
    let two = BiPoly::from_terms(&[(0, 0, 2)]);
    let lhs = subst_z(&g, &pv.mul(&xm));
    // (x²−1)⁴(p² + c)² − (x²−1)⁴ q² with c, q² the stated rational functions
    let scaled_q = pv
        .square()
        .mul(&xm.square())
        .sub(&two.mul(&x.square().add(&BiPoly::one())));
    let cub = BiPoly::from_terms(&[(3, 0, 1), (2, 0, 1), (1, 0, -1), (0, 0, 1)]);
    let rhs = scaled_q.square().sub(&two.mul(&cub).mul(&xm.square()));
    if lhs != rhs {
        return Ok(false);
    }
    // sampled: q = √(2(x³+x²−x+1))/(x²−1) has preperiod 3 and period 1 for f_c
    for xi in 2..9i64 {
        let xq = r(xi);
        let c = -r(2) * (&xq * &xq + r(1)) / ((&xq * &xq - r(1)) * (&xq * &xq - r(1)));
        let rad = r(2) * (&xq * &xq * &xq + &xq * &xq - &xq + r(1));
        let d = crate::arith::sqf(&rad)?;
        let d = i64::try_from(&d).map_err(|_| Error::Internal("radicand overflow".into()))?;
        let m = crate::arith::rational_sqrt(&(&rad / r(d)))
            .ok_or_else(|| Error::Internal("sqf".into()))?;
        let y = if d == 1 {
            QuadElem::rational(m)
        } else {
            QuadField::new(d)?.elem(r(0), m)
        };
        let q = y * QuadElem::rational(r(1) / (&xq * &xq - r(1)));
        if orbit_data(&QuadElem::rational(c), &q, 16) != Some((3, 1)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn genus_five_to_x1_11() -> Result<bool> {
    let Equation::Plane(g) = model("aux/C")?.equation else {
        return Err(Error::Internal("aux/C is stored as a plane curve".into()));
    };
    let x = BiPoly::c();
    let z = BiPoly::z();
    let two = BiPoly::from_terms(&[(0, 0, 2)]);
    let xm = x.square().sub(&BiPoly::one());
    // w·(x²−1) = z² − 2(x²+1); then (x²−1)²(w² − 2(x³+x²−x+1)) should be G
    let w_num = z.square().sub(&two.mul(&x.square().add(&BiPoly::one())));
    let cub = BiPoly::from_terms(&[(3, 0, 1), (2, 0, 1), (1, 0, -1), (0, 0, 1)]);
    let image = w_num.square().sub(&two.mul(&cub).mul(&xm.square()));
    if image != g {
        return Ok(false);
    }
    // the target is X1(11); its affine rational points of small height are (±1, ±2)
    let pts = super::rational_points("aux/X1ell11", 40)?;
    Ok(pts.len() == 4
        && pts.iter().all(|(x, y)| {
            x.numer().magnitude() == &1u32.into() && y.numer().magnitude() == &2u32.into()
        }))
}

fn genus_three_quotients() -> Result<bool> {
    let mut labels = vec![
        "aux/genus3-x-rational".to_string(),
        AUX_LINE_EXTRA.to_string(),
    ];
    labels.extend(
        AUX_LABELS
            .iter()
            .filter(|l| l.starts_with("aux/genus3-line"))
            .map(|l| l.to_string()),
    );
    for l in labels {
        let Equation::Hyper(f) = model(&l)?.equation else {
            return Ok(false);
        };
        if f.degree() != Some(7) || !is_squarefree(&f) || !has_integral_coeffs(&f) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether G(f_c, Q(point)) contains the catalog portrait of `label`.
pub fn realizes(rec: &QuadraticPointRecord, label: &str, catalog: &Catalog) -> Result<bool> {
    let c = rec
        .c
        .as_ref()
        .ok_or_else(|| Error::Domain("degenerate point has no c".into()))?;
    let field = if c.is_rational() {
        QuadField::new(rec.d)?
    } else {
        c.field()
    };
    let res = crate::orbit::portrait_of_in(
        c,
        field,
        crate::orbit::DEFAULT_N_MAX,
        crate::orbit::DEFAULT_DEPTH_MAX,
    )?;
    Ok(res.portrait.contains_subportrait(catalog.portrait(label)?))
}

fn realization(label: &str) -> Result<bool> {
    let cat = Catalog::builtin();
    let pts = realization_points(label, 6)?;
    let mut good = 0;
    for rec in &pts {
        if realizes(rec, label, cat)? {
            good += 1;
            if good == 3 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Names accepted by [`verify_identity`].
pub fn identity_names() -> Vec<String> {
    let mut v: Vec<String> = [
        "preperiod-four-substitution",
        "genus-five-to-x1-11",
        "genus-three-quotients",
    ]
    .map(String::from)
    .to_vec();
    v.extend(MODEL_LABELS.iter().map(|l| format!("realization-{l}")));
    v
}

pub fn verify_identity(name: &str) -> Result<bool> {
    match name {
        "preperiod-four-substitution" => preperiod_four_substitution(),
        "genus-five-to-x1-11" => genus_five_to_x1_11(),
        "genus-three-quotients" => genus_three_quotients(),
        n => match n.strip_prefix("realization-") {
            Some(l) if MODEL_LABELS.contains(&l) => realization(l),
            _ => Err(Error::Domain(format!("unknown identity {name:?}"))),
        },
    }
}
