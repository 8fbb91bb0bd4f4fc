//! Finitely supported measures on the solenoid and its square, periodic
//! orbit measures, and densification of invariant measures by periodic orbits.

mod measure;
mod ops;
mod system;
mod testfn;

pub use measure::{Atom, FiniteMeasure, Location, Space, MASS_TOLERANCE};
pub use ops::{
    birkhoff_integral, densify, discrepancy, integrate, loglog_slope, nearest_periodic_location,
    orbit_measure, product_periodic, pushforward, scaled_embedding, Densified, DensifyRow,
    DEFAULT_SLACK,
};
pub use system::{distance, orbit_sum, within_orbit_sum_bound, DynamicalSystem, SystemMap};
pub use testfn::{default_family, CoordFn, TestFunction, Trig};

#[cfg(test)]
mod props {
    use super::*;
    use crate::solenoid::{nearest_periodic, SolenoidPair, SolenoidPoint};
    use proptest::prelude::*;

    fn exact() -> impl Strategy<Value = SolenoidPoint> {
        (0u64..4000, 0u64..2000)
            .prop_map(|(j, h)| SolenoidPoint::exact(j as i64, 2 * h + 1).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn orbit_measures_are_invariant(a in exact()) {
            let sys = DynamicalSystem::forward();
            let p = a.as_exact().unwrap().min_period(64);
            prop_assume!(p.is_some());
            let m = orbit_measure(&Location::Point(a), p.unwrap(), &sys).unwrap();
            prop_assert_eq!(pushforward(&m, &sys).unwrap(), m);
        }

        #[test]
        fn orbit_sum_within_constant(a in exact(), n in 1u32..=8) {
            let sys = DynamicalSystem::forward();
            let x = Location::Point(a.clone());
            let y = Location::Point(nearest_periodic(&a, n).unwrap());
            prop_assert!(within_orbit_sum_bound(&orbit_sum(&sys, &x, &y, n).unwrap()));
        }

        #[test]
        fn scaled_embedding_is_equivariant(a in exact(), b in exact(), k in 0u64..20) {
            let k = 2 * k + 1;
            let sys = DynamicalSystem::product();
            let mu = FiniteMeasure::dirac(SolenoidPair::new(a, b));
            match scaled_embedding(&mu, k) {
                Ok(e) => {
                    let lhs = scaled_embedding(&pushforward(&mu, &sys).unwrap(), k).unwrap();
                    prop_assert_eq!(lhs, pushforward(&e, &sys).unwrap());
                }
                Err(crate::Error::ScaleNotCoprime { .. }) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }

        #[test]
        fn integration_is_linear(a in exact(), b in exact(), t in 0.0f64..1.0) {
            let da = FiniteMeasure::dirac(a);
            let db = FiniteMeasure::dirac(b);
            let m = FiniteMeasure::mixture(&[(t, &da), (1.0 - t, &db)]).unwrap();
            for f in default_family(Space::Solenoid) {
                let lhs = integrate(&m, &f).unwrap();
                let rhs = t * integrate(&da, &f).unwrap() + (1.0 - t) * integrate(&db, &f).unwrap();
                prop_assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }
}
