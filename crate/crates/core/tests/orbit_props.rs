use std::collections::HashSet;

use proptest::prelude::*;
use quaddyn::arith::{rat, sqrt_in_field};
use quaddyn::orbit::{portrait_of_in, DEFAULT_DEPTH_MAX};
use quaddyn::{orbit_data, QuadElem, QuadField};

fn parameter() -> impl Strategy<Value = (QuadElem, QuadField)> {
    let d = prop_oneof![
        Just(1i64),
        Just(-1),
        Just(5),
        Just(33),
        Just(-15),
        Just(2),
        Just(-7),
        Just(17)
    ];
    (-30i64..=30, 1i64..=30, d)
        .prop_map(|(a, b, d)| (QuadElem::rational(rat(a, b)), QuadField::new(d).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn portraits_are_closed((c, k) in parameter()) {
        let res = portrait_of_in(&c, k, 6, DEFAULT_DEPTH_MAX).unwrap();
        let values: Vec<QuadElem> = res.points.iter().map(|p| p.value.in_field(k)).collect();
        let set: HashSet<&QuadElem> = values.iter().collect();
        prop_assert_eq!(set.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            let image = &v.square() + &c;
            prop_assert_eq!(&values[res.portrait.succ()[i]], &image);
            if let Some(y) = sqrt_in_field(&(v - &c).in_field(k)) {
                prop_assert!(set.contains(&y.in_field(k)) && set.contains(&(-&y).in_field(k)), "preimage of {} missing", v);
            }
        }
        prop_assert!(res.portrait.is_quadratic());
        let zero = QuadElem::rational(rat(0, 1));
        let special = c == QuadElem::rational(rat(1, 4)) || orbit_data(&c, &zero, 64).is_some();
        if !special {
            prop_assert!(res.portrait.in_degrees().iter().all(|&d| d == 0 || d == 2));
        }
    }
}

#[test]
fn collapsed_two_cycle_is_a_fixed_point() {
    let c = QuadElem::rational(rat(-3, 4));
    let res = portrait_of_in(&c, QuadField::rationals(), 6, DEFAULT_DEPTH_MAX).unwrap();
    let half = res
        .points
        .iter()
        .find(|p| p.value == QuadElem::rational(rat(-1, 2)))
        .expect("-1/2 is a vertex");
    assert_eq!((half.preperiod, half.period), (0, 1));
}
