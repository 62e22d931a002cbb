use num_bigint::BigInt;
use proptest::prelude::*;
use quaddyn::arith::{is_p_integral, rat, sqf, sqrt_in_field, v_p, QuadElem, QuadField};

fn nonzero(lo: i64, hi: i64) -> impl Strategy<Value = i64> {
    (lo..=hi).prop_filter("nonzero", |v| *v != 0)
}

fn field() -> impl Strategy<Value = QuadField> {
    prop_oneof![
        Just(1i64),
        Just(-1),
        Just(2),
        Just(-3),
        Just(5),
        Just(-15),
        Just(33),
        Just(-7)
    ]
    .prop_map(|d| QuadField::new(d).unwrap())
}

fn elem(k: QuadField) -> impl Strategy<Value = QuadElem> {
    (-30i64..=30, 1i64..=8, -30i64..=30, 1i64..=8)
        .prop_map(move |(a, b, c, e)| k.elem(rat(a, b), rat(c, e)))
}

fn field_and_pair() -> impl Strategy<Value = (QuadElem, QuadElem)> {
    field().prop_flat_map(|k| (elem(k), elem(k)))
}

proptest! {
    #[test]
    fn sqf_ignores_square_factors(a in nonzero(-500, 500), b in 1i64..500, s in nonzero(-60, 60), t in 1i64..60) {
        let r = rat(a, b);
        let s = rat(s, t);
        prop_assert_eq!(sqf(&(&r * &s * &s)).unwrap(), sqf(&r).unwrap());
    }

    #[test]
    fn squares_have_square_roots(x in field().prop_flat_map(elem)) {
        let y = sqrt_in_field(&x.square()).expect("a square has a root");
        prop_assert_eq!(y.square(), x.square());
    }

    #[test]
    fn conjugation_is_a_ring_map((x, y) in field_and_pair()) {
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        let n = &x * &x.conj();
        prop_assert!(n.b() == &rat(0, 1));
        prop_assert_eq!(n.a(), &x.norm());
    }

    #[test]
    fn integrality_matches_valuation(a in nonzero(-2000, 2000), b in 1i64..2000, p in prop::sample::select(vec![2i64, 3, 5, 7, 11, 13])) {
        let r = rat(a, b);
        let p = BigInt::from(p);
        let x = QuadElem::rational(r.clone());
        prop_assert_eq!(is_p_integral(&x, &p).unwrap(), v_p(&r, &p).unwrap() >= 0);
    }
}

// Square-root oracle: whenever no root is returned, none exists among
// (p + q√d)/e with |p|, |q| ≤ 24 and e ≤ 6.
#[test]
fn missing_square_roots_are_really_missing() {
    for d in [1i64, -1, 2, 5, -15] {
        let k = QuadField::new(d).unwrap();
        let mut candidates = Vec::new();
        for e in 1..=6 {
            for p in -24..=24 {
                for q in if d == 1 { 0..=0 } else { -24..=24 } {
                    candidates.push(k.elem(rat(p, e), rat(q, e)));
                }
            }
        }
        let squares: std::collections::HashSet<QuadElem> =
            candidates.iter().map(|y| y.square()).collect();
        for a in -12..=12 {
            for b in if d == 1 { 0..=0 } else { -6..=6 } {
                let x = k.elem(rat(a, 1), rat(b, 1));
                match sqrt_in_field(&x) {
                    Some(y) => assert_eq!(y.square(), x, "{x}"),
                    None => assert!(!squares.contains(&x), "{x} has a root the search missed"),
                }
            }
        }
    }
}
