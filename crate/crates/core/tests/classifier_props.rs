mod common;

use common::{cubic, direction, q};
use cubeword::classifier::{classify, PredictedLaw};
use cubeword::coding::Direction;
use cubeword::{AlgebraicNumber, Direction3, NumberField};
use proptest::prelude::*;

/// Directions drawn so every case occurs: rational, one rational pair,
/// planar, and generic in the test fields.
fn any_direction() -> impl Strategy<Value = Direction3> {
    let rational = prop::collection::vec((1i64..=9, 1i64..=9), 3).prop_map(|v| {
        let f = NumberField::rationals();
        Direction::new(std::array::from_fn(|i| AlgebraicNumber::from_rational(&f, q(v[i].0, v[i].1)))).unwrap()
    });
    let structured = (1i64..=5, 1i64..=5, 0usize..3).prop_map(|(a, b, kind)| {
        let f = NumberField::quadratic(2).unwrap();
        let s = AlgebraicNumber::generator(&f);
        let one = AlgebraicNumber::one(&f);
        let third = match kind {
            0 => AlgebraicNumber::from_rational(&f, q(a, b)),
            1 => one.scale(&q(a, 1)).try_add(&s.scale(&q(b, 1))).unwrap(),
            _ => s.scale(&q(a, b)),
        };
        Direction::new([one, s, third]).unwrap()
    });
    prop_oneof![rational, structured, direction()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_direction_gets_one_case(w in any_direction()) {
        let c = classify(&w).unwrap();
        prop_assert!((1..=5).contains(&c.case_tag));
        let law = match c.case_tag {
            1 => PredictedLaw::EventuallyConstant,
            2 | 3 => PredictedLaw::LinearBounded,
            4 => PredictedLaw::Quadratic,
            _ => PredictedLaw::Exact,
        };
        prop_assert_eq!(c.predicted, law);
        prop_assert_eq!(c.c_pred.is_some(), c.case_tag == 4);
    }

    #[test]
    fn scaling_keeps_classification(w in any_direction(), num in 1i64..=50, den in 1i64..=50) {
        let lam = q(num, den);
        let scaled = Direction3::new(std::array::from_fn(|i| w.get(i).scale(&lam))).unwrap();
        prop_assert_eq!(classify(&w).unwrap(), classify(&scaled).unwrap());
    }

    #[test]
    fn permutation_moves_the_case4_variant(perm_id in 0usize..6, num in 1i64..=20, den in 1i64..=20) {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let perm = perms[perm_id];
        let f = cubic();
        let one = AlgebraicNumber::one(&f);
        let t = AlgebraicNumber::generator(&f);
        let base = Direction3::new([one.clone(), t.inv().unwrap(), one.try_sub(&t).unwrap().inv().unwrap()]).unwrap();
        let w = Direction3::new(std::array::from_fn(|i| base.get(perm[i]).scale(&q(num, den)))).unwrap();
        let c = classify(&w).unwrap();
        prop_assert_eq!(c.case_tag, 4);
        let lone = c.reciprocal_relation.as_ref().unwrap().lone.unwrap();
        prop_assert_eq!(perm[lone], 0);
        prop_assert_eq!(c.permutation[0], lone);
        let reference = classify(&base).unwrap();
        prop_assert_eq!(c.c_pred, reference.c_pred);
    }
}
