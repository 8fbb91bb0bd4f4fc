//! Traces on finite windows: Hilbert-Schmidt defects of approximate
//! representations, induced traces, finite-quotient approximation of traces
//! on the Heisenberg group, and corner compressions.

mod corner;
mod defect;
mod induced;
mod nilpotent;
mod table;

pub use crate::linalg::hs_norm;
pub use corner::{corner_trace_check, CornerReport, CornerRow, CORNER_TOLERANCE};
pub use defect::{defect, rep_defect, twisted_defect, ApproxRep, APPROX_UNITARY_TOLERANCE};
pub use induced::{
    gram_matrix, gram_psd, group_order, induced_trace_center_mod, induced_trace_dyadic,
    induced_trace_finite, InducingSubgroup, ENUMERATION_LIMIT, PSD_TOLERANCE,
};
pub use nilpotent::{
    nilpotent_trace_approx, write_error_csv, ErrorRow, LevelTable, NilpotentApprox, MAX_DEPTH,
};
pub use table::{
    default_coordinates, heisenberg_window, semidirect_window, trace_match, trivial_extension,
    MatchReport, MatchRow, Provenance, TableAudit, TraceTable, DEFAULT_M_MAX,
};

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::arith::Dyadic;
    use crate::arith::{OddModulus, RootOfUnity};
    use crate::repsynth::{heisenberg_mod_k, HeisenbergElement};
    use proptest::prelude::*;

    fn dyadic() -> impl Strategy<Value = Dyadic> {
        (-64i64..64, 0u32..5).prop_map(|(n, e)| Dyadic::new(n, e))
    }

    fn element() -> impl Strategy<Value = crate::repsynth::DyadicHeisenberg> {
        (dyadic(), dyadic(), dyadic()).prop_map(|(x, y, z)| HeisenbergElement::new(x, y, z))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn closed_form_agrees_with_enumeration(g in element(), k in prop::sample::select(vec![3u64, 5, 7, 9]), j in 1i64..9) {
            let w = RootOfUnity::from_signed(j, k).unwrap();
            let h = heisenberg_mod_k(&g, k).unwrap();
            let a = induced_trace_finite(&h, InducingSubgroup::Center, &w).unwrap();
            prop_assert!((a - induced_trace_center_mod(&h, &w)).norm() < 1e-12);
        }

        #[test]
        fn induced_traces_are_bounded_and_hermitian(g in element(), j in 0i64..7) {
            let chi = crate::solenoid::ExactPoint::from_signed(j, 7).unwrap();
            let t = induced_trace_dyadic(&g, InducingSubgroup::Center, &chi).unwrap();
            let s = induced_trace_dyadic(&crate::repsynth::GroupElement::inverse(&g), InducingSubgroup::Center, &chi).unwrap();
            prop_assert!(t.norm() <= 1.0 + 1e-12);
            prop_assert!((s - t.conj()).norm() < 1e-12);
        }

        #[test]
        fn corner_inequalities(seed in any::<u64>(), m in 1usize..10, frac in 0.0f64..1.0) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = ((m as f64 * frac).ceil() as usize).clamp(1, m);
            let rho = vec![crate::linalg::random_unitary(&mut rng, m)];
            let approx = vec![crate::linalg::random_unitary(&mut rng, n)];
            let r = corner_trace_check(&rho, Some(&approx), n).unwrap();
            prop_assert_eq!(r.violations(), 0);
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(group_order(&OddModulus::new(15).unwrap()), Some(3375));
    }
}
