//! The dyadic solenoid: the dual group of `Z[1/2]`, realized as compatible
//! sequences of circle points `a_{n+1}^2 = a_n`, with its metric `rho`, the
//! doubling dynamics and periodic-point approximation.

mod metric;
mod periodic;
mod point;
pub mod sample;

pub use metric::{
    arc_distance, rho, rho_exact_points, rho_f64, rho_with_depth, RhoBound, DEFAULT_DEPTH,
};
pub use periodic::{
    is_periodic, nearest_periodic, periodic_bound, periodic_modulus, shift_backward, shift_by,
    shift_forward,
};
pub use point::{ExactPoint, SolenoidPair, SolenoidPoint, TruncatedPoint, PREFIX_TOLERANCE};

#[cfg(test)]
mod props {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn exact() -> impl Strategy<Value = SolenoidPoint> {
        (0u64..5000, 0u64..2000)
            .prop_map(|(j, h)| SolenoidPoint::exact(j as i64, 2 * h + 1).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn rho_is_a_metric(a in exact(), b in exact(), c in exact()) {
            let ab = rho(&a, &b);
            let ba = rho(&b, &a);
            prop_assert_eq!(&ab, &ba);
            prop_assert_eq!(ab.lower == BigRational::from_integer(0.into()) && ab.is_exact(), a == b);
            let bc = rho(&b, &c);
            let ac = rho(&a, &c);
            prop_assert!(ac.lower <= &ab.upper + &bc.upper);
        }

        #[test]
        fn shifts_are_inverse(a in exact()) {
            prop_assert_eq!(shift_backward(&shift_forward(&a)).unwrap(), a.clone());
            prop_assert_eq!(shift_forward(&shift_backward(&a).unwrap()), a);
        }

        #[test]
        fn shifts_are_two_lipschitz(a in exact(), b in exact()) {
            let two = BigRational::from_integer(2.into());
            let base = rho(&a, &b);
            let f = rho(&shift_forward(&a), &shift_forward(&b));
            let g = rho(&shift_backward(&a).unwrap(), &shift_backward(&b).unwrap());
            prop_assert!(f.lower <= &base.upper * &two);
            prop_assert!(g.lower <= &base.upper * &two);
        }

        #[test]
        fn nearest_periodic_is_periodic_and_close(a in exact(), n in 1u32..=10) {
            let b = nearest_periodic(&a, n).unwrap();
            prop_assert!(is_periodic(&b, 2 * n as u64 + 1).unwrap());
            prop_assert!(rho(&a, &b).upper <= periodic_bound(n));
        }
    }
}
