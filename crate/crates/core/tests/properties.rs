//! Algebraic properties checked on generated inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use psun_core::linalg::{smith_normal_form, CycField, CycNumber, IntMatrix};
use psun_core::poly::resultant;
use psun_core::{IntPoly, LaurentPoly};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-4i64..=4, prop::collection::vec(-20i64..=20, 0..6)).prop_map(|(m, c)| LaurentPoly::from_ints(m, &c))
}

fn int_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..=9, 1..5)
        .prop_filter("nonzero leading coefficient", |c| *c.last().unwrap() != 0)
        .prop_map(|c| IntPoly::from_ints(&c))
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

fn cyc(field: &std::sync::Arc<CycField>, c: &[i64]) -> CycNumber {
    CycNumber::from_poly(field, c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn involution(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.involute().involute(), a.clone());
        prop_assert_eq!((&a * &b).involute(), &a.involute() * &b.involute());
        prop_assert!((&a * &a.involute()).is_symmetric());
    }

    #[test]
    fn text_and_json_round_trip(a in laurent()) {
        let text: LaurentPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(&text, &a);
        let json: LaurentPoly = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(json, a);
    }

    #[test]
    fn resultant_swap_and_multiplicativity(f in int_poly(), g in int_poly(), h in int_poly()) {
        let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
        let sign = if (m * n) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(resultant(&g, &f), sign * resultant(&f, &g));
        prop_assert_eq!(resultant(&f.mul(&g), &h), resultant(&f, &h) * resultant(&g, &h));
    }

    #[test]
    fn smith_form(a in matrix()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        prop_assert!(s.u.det_exact().unwrap().abs().is_one());
        prop_assert!(s.v.det_exact().unwrap().abs().is_one());
        for w in s.invariant_factors.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
        if a.rows() == a.cols() {
            let prod: BigInt = s.invariant_factors.iter().product();
            prop_assert_eq!(a.det_exact().unwrap().abs(), prod);
            if !a.det_exact().unwrap().abs().is_one() {
                prop_assert!(a.inverse_unimodular().is_err());
            }
        }
    }

    #[test]
    fn cyclotomic_field(n in 2usize..=9, x in prop::collection::vec(-5i64..=5, 1..8),
                        y in prop::collection::vec(-5i64..=5, 1..8), z in prop::collection::vec(-5i64..=5, 1..8)) {
        let f = CycField::new(n);
        let (a, b, c) = (cyc(&f, &x), cyc(&f, &y), cyc(&f, &z));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }
}

#[test]
fn unimodular_inverse() {
    let a = IntMatrix::from_rows(&[[2, 1, 0], [1, 1, 0], [3, 4, 1]]);
    let inv = a.inverse_unimodular().unwrap();
    assert_eq!(&a * &inv, IntMatrix::identity(3));
}
