use diophlab::exactreal::AlgebraicReal;
use diophlab::exactreal::l_form;
use diophlab::latgeom::{
    delta_norm, subspace_height, veronese_factor, veronese_residual, wedge, wedge_with_xi_norm, IntPoint, XiConstants,
};
use diophlab::maps::{c_map, e_map};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn point(c: &[i64]) -> IntPoint {
    IntPoint::from_i64s(c)
}

fn small_point(dim: usize, b: i64) -> impl Strategy<Value = IntPoint> {
    prop::collection::vec(-b..=b, dim).prop_map(|c| point(&c))
}

fn presets() -> Vec<AlgebraicReal> {
    vec![
        AlgebraicReal::from_i64s(&[-1, 2, 1], (0, 1), (1, 1)).unwrap(),
        AlgebraicReal::from_i64s(&[-1, 4, 6, 4, 1], (0, 1), (1, 2)).unwrap(),
        AlgebraicReal::from_i64s(&[-2, 0, 0, 1], (1, 1), (2, 1)).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn refinement_is_nested(idx in 0usize..3, steps in prop::collection::vec(1u64..40, 1..6)) {
        let xi = presets().swap_remove(idx);
        let mut bits = 0;
        let mut prev = xi.enclosure();
        for s in steps {
            bits += s;
            let next = xi.refine_bits(bits);
            prop_assert!(next.is_subset_of(&prev));
            prop_assert!(next.width() <= BigRational::new(BigInt::one(), BigInt::one() << bits));
            prev = next;
        }
    }

    #[test]
    fn wedge_is_alternating(x in small_point(4, 50), y in small_point(4, 50), z in small_point(4, 50)) {
        let a = wedge(&[&x, &y, &z]).unwrap();
        let swapped = wedge(&[&y, &x, &z]).unwrap();
        let neg: Vec<BigInt> = a.coords.iter().map(|c| -c).collect();
        prop_assert_eq!(swapped.coords, neg);
        prop_assert!(wedge(&[&x, &y, &x]).unwrap().is_zero());
    }

    #[test]
    fn height_is_unimodular_invariant(
        x in small_point(4, 30),
        y in small_point(4, 30),
        k in -20i64..=20,
        flip in any::<bool>(),
    ) {
        prop_assume!(!wedge(&[&x, &y]).unwrap().is_zero());
        let h = subspace_height(&[&x, &y]);
        let shear = &y + &x.scale(&BigInt::from(k));
        let first = if flip { x.neg() } else { x.clone() };
        prop_assert_eq!(subspace_height(&[&first, &shear]), h.clone());
        prop_assert_eq!(subspace_height(&[&y, &x]), h);
    }

    #[test]
    fn e_is_trilinear_and_symmetric(
        w in small_point(4, 40),
        w2 in small_point(4, 40),
        x in small_point(4, 40),
        y in small_point(4, 40),
        s in -40i64..=40,
    ) {
        let sum = &w + &w2;
        let e = |a: &IntPoint, b: &IntPoint, c: &IntPoint| e_map(a, b, c).unwrap();
        prop_assert_eq!(e(&sum, &x, &y), e(&w, &x, &y).add(&e(&w2, &x, &y)));
        prop_assert_eq!(e(&x, &y, &sum), e(&x, &y, &w).add(&e(&x, &y, &w2)));
        prop_assert_eq!(e(&w.scale(&BigInt::from(s)), &x, &y), e(&w, &x, &y).scale(&BigInt::from(s)));
        prop_assert_eq!(e(&w, &x, &y), e(&x, &w, &y));
        prop_assert_eq!(e(&x, &x, &y), c_map(&x, &y).unwrap().scale(&BigInt::from(2)));
    }

    #[test]
    fn veronese_bound_holds(
        num in prop::collection::vec(-5000i64..=5000, 3),
        den in 1i64..=5000,
        k in 0usize..3,
        neg in any::<bool>(),
    ) {
        let mut y: [BigRational; 3] = std::array::from_fn(|i| {
            BigRational::new(num[i].clamp(-den, den).into(), den.into())
        });
        y[k] = if neg { -BigRational::one() } else { BigRational::one() };
        let rs = veronese_factor(&y).unwrap();
        prop_assert!(rs.0.abs() <= BigRational::one() && rs.1.abs() <= BigRational::one());
        let (dist, delta) = veronese_residual(&y, &rs);
        prop_assert!(dist <= BigRational::from_integer(2.into()) * delta);
    }

    #[test]
    fn explicit_constants_bracket_l(idx in 0usize..3, raw in prop::collection::vec(-10_000i64..=10_000, 2..=4)) {
        prop_assume!(raw[0] != 0);
        let xi = presets().swap_remove(idx);
        let x = point(&raw);
        let k = XiConstants::derive(&xi, x.len() - 1);
        let l = l_form(&x, &xi).interval(&xi, 96);
        let w = wedge_with_xi_norm(&x, &xi, 96);
        let d = delta_norm(&x, &xi, 96).unwrap();
        prop_assert!(l.lo <= w.hi);
        prop_assert!(w.lo <= &k.wedge_upper * &l.hi);
        prop_assert!(d.lo <= &k.delta_upper * &l.hi);
        prop_assert!(l.lo <= &k.delta_lower * &d.hi);
    }
}
