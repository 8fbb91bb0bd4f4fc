use std::collections::HashSet;

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{OddModulus, RootOfUnity};
use crate::error::{Error, Result};
use crate::linalg::min_hermitian_eigenvalue;
use crate::repsynth::{enumerate_mod_k, DyadicHeisenberg, GroupElement, ModHeisenberg};
use crate::scalar::CMatrix;
use crate::solenoid::ExactPoint;

/// Largest group order enumerated by [`induced_trace_finite`].
pub const ENUMERATION_LIMIT: u64 = 3375;
/// Gram matrices with a smaller least eigenvalue are reported as not PSD.
pub const PSD_TOLERANCE: f64 = 1e-9;

/// Normal subgroups of the Heisenberg group that traces are induced from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InducingSubgroup {
    /// `{(0, 0, z)}` with the character `z -> omega^z`.
    Center,
    /// `{e}`; the induced trace is the regular trace.
    Trivial,
    /// `{(0, y, z)}` with the character `(y, z) -> omega^z`.
    YzPlane,
}

impl InducingSubgroup {
    fn extended(&self, g: &ModHeisenberg, omega: &RootOfUnity) -> Complex<f64> {
        let value = |z: &BigUint| omega.pow_big(z).value::<f64>();
        match self {
            Self::Center if g.x.is_zero() && g.y.is_zero() => value(g.z.value()),
            Self::YzPlane if g.x.is_zero() => value(g.z.value()),
            Self::Trivial if g.is_identity() => Complex::one(),
            _ => Complex::zero(),
        }
    }
}

/// The induced trace at `g` by brute force: the average of the extended
/// character over the conjugacy class of `g` in `H3(Z/k)`.
pub fn induced_trace_finite(
    g: &ModHeisenberg,
    h: InducingSubgroup,
    omega: &RootOfUnity,
) -> Result<Complex<f64>> {
    let k = g.x.modulus().clone();
    let order = k
        .to_u64()
        .and_then(|k| k.checked_pow(3))
        .unwrap_or(u64::MAX);
    if order > ENUMERATION_LIMIT {
        return Err(Error::Infeasible(order));
    }
    let class: HashSet<ModHeisenberg> = enumerate_mod_k(&k)
        .iter()
        .map(|a| g.conjugate_by(a))
        .collect();
    let sum: Complex<f64> = class.iter().map(|c| h.extended(c, omega)).sum();
    Ok(sum / class.len() as f64)
}

/// Closed form of the trace induced from the center of `H3(Z/k)`:
/// `omega^z` on `(0, 0, z)` and `0` elsewhere.
pub fn induced_trace_center_mod(g: &ModHeisenberg, omega: &RootOfUnity) -> Complex<f64> {
    if g.x.is_zero() && g.y.is_zero() {
        omega.pow_big(g.z.value()).value()
    } else {
        Complex::zero()
    }
}

/// The induced trace on `H3(Z[1/2])` at `g`, in closed form.
///
/// From the center: `chi(z)` on `(0, 0, z)` and `0` elsewhere, since every
/// other conjugacy class is infinite. From the trivial subgroup: `[g = e]`.
pub fn induced_trace_dyadic(
    g: &DyadicHeisenberg,
    h: InducingSubgroup,
    chi: &ExactPoint,
) -> Result<Complex<f64>> {
    match h {
        InducingSubgroup::Center => Ok(if g.x.is_zero() && g.y.is_zero() {
            chi.character(&g.z).value()
        } else {
            Complex::zero()
        }),
        InducingSubgroup::Trivial => Ok(if g.is_identity() {
            Complex::one()
        } else {
            Complex::zero()
        }),
        InducingSubgroup::YzPlane => Err(Error::UnsupportedSubgroup),
    }
}

/// `G_ij = tau(g_i^{-1} g_j)`.
pub fn gram_matrix<G: GroupElement>(
    window: &[G],
    tau: impl Fn(&G) -> Result<Complex<f64>>,
) -> Result<CMatrix<f64>> {
    let n = window.len();
    let mut m = DMatrix::from_element(n, n, Complex::zero());
    for i in 0..n {
        let gi = window[i].inverse();
        for j in 0..n {
            m[(i, j)] = tau(&gi.mul(&window[j]))?;
        }
    }
    Ok(m)
}

/// Least eigenvalue of the Hermitian part of the Gram matrix, and whether it
/// clears `-PSD_TOLERANCE`.
pub fn gram_psd<G: GroupElement>(
    window: &[G],
    tau: impl Fn(&G) -> Result<Complex<f64>>,
) -> Result<(f64, bool)> {
    let m = gram_matrix(window, tau)?;
    let l = min_hermitian_eigenvalue(&m);
    Ok((l, l >= -PSD_TOLERANCE))
}

/// `H3(Z/k)` has order `k^3`.
pub fn group_order(k: &OddModulus) -> Option<u64> {
    k.to_u64()?.checked_pow(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Dyadic;
    use crate::repsynth::{heisenberg_mod_k, HeisenbergElement};
    use crate::tracelab::heisenberg_window;

    fn omega(j: i64, k: u64) -> RootOfUnity {
        RootOfUnity::from_signed(j, k).unwrap()
    }

    #[test]
    fn brute_force_matches_closed_form() {
        for k in [3u64, 5, 7] {
            let m = OddModulus::new(k).unwrap();
            let w = omega(1, k);
            for g in enumerate_mod_k(&m) {
                let a = induced_trace_finite(&g, InducingSubgroup::Center, &w).unwrap();
                assert!((a - induced_trace_center_mod(&g, &w)).norm() < 1e-12, "{g}");
                let t = induced_trace_finite(&g, InducingSubgroup::Trivial, &w).unwrap();
                assert_eq!(
                    t,
                    if g.is_identity() {
                        Complex::one()
                    } else {
                        Complex::zero()
                    }
                );
            }
        }
    }

    #[test]
    fn yz_plane_at_prime_level() {
        // oracle: conjugating (x, y, z) by (a, b, c) adds a y - b x to z, so for
        // prime k only the center contributes.
        let m = OddModulus::new(5).unwrap();
        let w = omega(2, 5);
        for g in enumerate_mod_k(&m) {
            let t = induced_trace_finite(&g, InducingSubgroup::YzPlane, &w).unwrap();
            assert!((t - induced_trace_center_mod(&g, &w)).norm() < 1e-12);
        }
    }

    #[test]
    fn non_primitive_character() {
        // omega of order 3 inside Z/9: the class of (3, 6, 1) is a coset of
        // 3 Z/9 in the center direction, which never meets the center
        let m = OddModulus::new(9).unwrap();
        let w = omega(3, 9);
        let g = HeisenbergElement::from_u64(3, 6, 1, &m);
        let t = induced_trace_finite(&g, InducingSubgroup::Center, &w).unwrap();
        assert!(t.norm() < 1e-12);
        let c = HeisenbergElement::from_u64(0, 0, 1, &m);
        let t = induced_trace_finite(&c, InducingSubgroup::Center, &w).unwrap();
        assert!((t - w.value::<f64>()).norm() < 1e-12);
    }

    #[test]
    fn large_levels_are_infeasible() {
        let m = OddModulus::new(17).unwrap();
        let g = HeisenbergElement::identity_mod(&m);
        assert!(matches!(
            induced_trace_finite(&g, InducingSubgroup::Center, &omega(1, 17)),
            Err(Error::Infeasible(4913))
        ));
    }

    #[test]
    fn dyadic_closed_form_matches_quotient() {
        let window = heisenberg_window(&crate::tracelab::default_coordinates());
        for k in [3u64, 5, 7] {
            let chi = ExactPoint::from_signed(1, k).unwrap();
            let w = chi.character(&Dyadic::int(1));
            for g in &window {
                let a = induced_trace_dyadic(g, InducingSubgroup::Center, &chi).unwrap();
                let b = induced_trace_finite(
                    &heisenberg_mod_k(g, k).unwrap(),
                    InducingSubgroup::Center,
                    &w,
                )
                .unwrap();
                assert!((a - b).norm() < 1e-12, "{g}");
            }
        }
    }

    #[test]
    fn dyadic_values() {
        let chi = ExactPoint::from_signed(1, 3).unwrap();
        let c = HeisenbergElement::ints(0, 0, 1);
        let t = induced_trace_dyadic(&c, InducingSubgroup::Center, &chi).unwrap();
        assert!((t - Complex::from_polar(1.0, std::f64::consts::TAU / 3.0)).norm() < 1e-12);
        let g = HeisenbergElement::ints(3, 0, 1);
        assert_eq!(
            induced_trace_dyadic(&g, InducingSubgroup::Center, &chi).unwrap(),
            Complex::zero()
        );
        let g = HeisenbergElement::ints(1, 0, 1);
        assert_eq!(
            induced_trace_dyadic(&g, InducingSubgroup::Center, &chi).unwrap(),
            Complex::zero()
        );
        assert!(matches!(
            induced_trace_dyadic(&g, InducingSubgroup::YzPlane, &chi),
            Err(Error::UnsupportedSubgroup)
        ));
    }

    #[test]
    fn gram_matrices_are_psd() {
        let k = 5u64;
        let m = OddModulus::new(k).unwrap();
        let w = omega(1, k);
        let window: Vec<_> = enumerate_mod_k(&m)
            .into_iter()
            .step_by(11)
            .take(12)
            .collect();
        for h in [
            InducingSubgroup::Center,
            InducingSubgroup::Trivial,
            InducingSubgroup::YzPlane,
        ] {
            let (l, ok) = gram_psd(&window, |g| induced_trace_finite(g, h, &w)).unwrap();
            assert!(ok, "{h:?}: {l}");
        }
    }
}
