mod common;

use common::{coords, element, fields};
use cubeword::numfield::rational_relations;
use cubeword::{AlgebraicNumber, Rational};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn triple() -> impl Strategy<Value = (usize, [Vec<(i64, i64)>; 3])> {
    (0usize..3, coords(4), coords(4), coords(4)).prop_map(|(f, a, b, c)| (f, [a, b, c]))
}

fn elements(f: usize, c: &[Vec<(i64, i64)>; 3]) -> [AlgebraicNumber; 3] {
    let field = fields()[f].clone();
    let d = field.degree();
    std::array::from_fn(|i| element(&field, &c[i][..d]))
}

proptest! {
    #[test]
    fn ring_laws((f, c) in triple()) {
        let [a, b, x] = elements(f, &c);
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(a.try_add(&b).unwrap().try_add(&x).unwrap(), a.try_add(&b.try_add(&x).unwrap()).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap().try_mul(&x).unwrap(), a.try_mul(&b.try_mul(&x).unwrap()).unwrap());
        let lhs = a.try_mul(&b.try_add(&x).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs.coords(), rhs.coords());
    }

    #[test]
    fn sign_matches_refined_midpoint((f, c) in triple()) {
        let [a, ..] = elements(f, &c);
        let iv = a.refine_bits(110);
        prop_assert!(iv.width() < Rational::new(1.into(), BigInt::from(10).pow(30)));
        let mid = iv.midpoint();
        let expected = if mid.is_positive() { 1 } else if mid.is_negative() { -1 } else { 0 };
        if !a.is_zero() {
            prop_assert_eq!(a.sign(), expected);
        }
    }

    #[test]
    fn floor_brackets_value((f, c) in triple()) {
        let [a, ..] = elements(f, &c);
        let fl = AlgebraicNumber::from_integer(a.field(), a.floor());
        prop_assert!(a.try_sub(&fl).unwrap().sign() >= 0);
        let next = fl.try_add(&AlgebraicNumber::one(a.field())).unwrap();
        prop_assert_eq!(a.try_sub(&next).unwrap().sign(), -1);
    }

    #[test]
    fn relations_annihilate((f, c) in triple(), dep in (-4i64..=4, -4i64..=4, 0usize..2)) {
        let [a, b, mut x] = elements(f, &c);
        if dep.2 == 1 {
            // force a relation
            x = a.scale(&Rational::from_integer(dep.0.into())).try_add(&b.scale(&Rational::from_integer(dep.1.into()))).unwrap();
        }
        let values = [a, b, x];
        for r in rational_relations(&values).unwrap() {
            let mut sum = AlgebraicNumber::zero(values[0].field());
            for (ci, v) in r.iter().zip(&values) {
                sum = sum.try_add(&v.scale(&Rational::from_integer(ci.clone()))).unwrap();
            }
            prop_assert!(sum.is_zero(), "relation {:?}", r);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn times_inverse_is_one(f in 0usize..3, c in coords(4)) {
        let field = fields()[f].clone();
        let a = element(&field, &c[..field.degree()]);
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.try_mul(&a.inv().unwrap()).unwrap(), AlgebraicNumber::one(&field));
    }
}
