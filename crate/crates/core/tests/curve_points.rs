use num_bigint::BigInt;
use quaddyn::arith::{is_p_integral, rat};
use quaddyn::curves::{
    c_of_t, candidate_points, lift_x, line_points, model, realizes, CofT, MODEL_LABELS,
};
use quaddyn::portrait::catalog::GAMMA_RAT;
use quaddyn::{Catalog, QuadElem, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rational(rng: &mut ChaCha8Rng, h: i64) -> Rational {
    rat(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

#[test]
fn random_lifts_lie_on_the_curve_and_realize_the_portrait() {
    let cat = Catalog::builtin();
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for label in MODEL_LABELS {
        let m = model(label).unwrap();
        let mut done = 0;
        let mut tries = 0;
        while done < 50 {
            tries += 1;
            assert!(tries < 2000, "{label}: too few generic lifts");
            let rec = lift_x(label, &random_rational(&mut rng, 30)).unwrap();
            if !rec.is_generic() {
                continue;
            }
            assert!(m.equation.contains(&rec.x, &rec.y), "{label} at {}", rec.x);
            assert!(
                realizes(&rec, label, cat).unwrap(),
                "{label} at x = {}",
                rec.x
            );
            done += 1;
        }
    }
}

#[test]
fn rational_parameter_models_give_rational_c() {
    for label in GAMMA_RAT {
        for rec in candidate_points(label, 30).unwrap() {
            if let Some(c) = &rec.c {
                // the marked points merge at collision parameters, e.g. x a
                // primitive cube root of unity on 10(3,1,1)
                assert!(
                    c.is_rational() || rec.collision,
                    "{label}: c = {c} at x = {}",
                    rec.x
                );
            }
        }
    }
}

#[test]
fn pencil_closed_form_matches_lifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let mut done = 0;
    while done < 50 {
        let t = random_rational(&mut rng, 40);
        let Ok(CofT::Rational(c)) = c_of_t("8(1,1)a", (0, 0), &t) else {
            continue;
        };
        for p in line_points("8(1,1)a", (&rat(0, 1), &rat(0, 1)), &t).unwrap() {
            if let Some(pc) = p.c {
                assert_eq!(pc, QuadElem::rational(c.clone()), "t = {t}");
            }
        }
        done += 1;
    }
}

#[test]
fn three_adic_integrality() {
    let three = BigInt::from(3);
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let mut pencil = 0;
    while pencil < 30 {
        let (a, b) = (rng.gen_range(-60i64..=60), rng.gen_range(1i64..=60));
        // t = a/b with t ≡ 1 mod 3
        if b % 3 == 0 || (a - b).rem_euclid(3) != 0 || b * 2 == a {
            continue;
        }
        for p in line_points("8(1,1)b", (&rat(1, 1), &rat(2, 1)), &rat(a, b)).unwrap() {
            if let Some(c) = &p.c {
                assert!(is_p_integral(c, &three).unwrap(), "t = {a}/{b}");
            }
        }
        pencil += 1;
    }
    let mut lifted = 0;
    while lifted < 30 {
        let (a, b) = (rng.gen_range(-60i64..=60), rng.gen_range(1i64..=60));
        // x ≡ 2 mod 3 and y irrational
        if b % 3 == 0 || (a - 2 * b).rem_euclid(3) != 0 {
            continue;
        }
        let rec = lift_x("10(2,1,1)a", &rat(a, b)).unwrap();
        if rec.d == 1 || rec.c.is_none() {
            continue;
        }
        assert!(
            is_p_integral(rec.c.as_ref().unwrap(), &three).unwrap(),
            "x = {a}/{b}"
        );
        lifted += 1;
    }
}
