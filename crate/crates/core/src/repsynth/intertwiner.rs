use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Zero;

use super::rep::UnitaryRep;
use crate::error::{Error, Result};
use crate::linalg::{hs_norm, identity, nullspace};
use crate::scalar::{CMatrix, Real};

/// Singular values below this (relative) threshold span the nullspace.
pub const NULLSPACE_TOLERANCE: f64 = 1e-9;
/// Largest accepted residual `max_g ||T_g V - V R_g||_2`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// The unitary `V` with `twisted[g] = V rep[g] V*` for all `g`, from the
/// common nullspace of `X -> twisted[g] X - X rep[g]`. The phase is fixed by
/// making the first nonzero entry (row-major) real positive.
pub fn solve_intertwiner<T: Real>(
    rep: &[CMatrix<T>],
    twisted: &[CMatrix<T>],
) -> Result<CMatrix<T>> {
    if rep.len() != twisted.len() || rep.is_empty() {
        return Err(Error::Dimension(
            "generator lists differ or are empty".into(),
        ));
    }
    let k = rep[0].nrows();
    if rep
        .iter()
        .chain(twisted)
        .any(|m| m.nrows() != k || m.ncols() != k)
    {
        return Err(Error::Dimension("images of unequal dimension".into()));
    }
    let id = identity::<T>(k);
    let kk = k * k;
    let mut a = DMatrix::from_element(kk * rep.len(), kk, Complex::zero());
    for (i, (r, t)) in rep.iter().zip(twisted).enumerate() {
        // vec(T X - X R) = (I (x) T - R^T (x) I) vec X, column-major vec
        let block = id.kronecker(t) - r.transpose().kronecker(&id);
        a.view_mut((i * kk, 0), (kk, kk)).copy_from(&block);
    }
    let ns = nullspace(&a, T::of(NULLSPACE_TOLERANCE));
    match ns.ncols() {
        0 => {
            let smin = a
                .singular_values()
                .iter()
                .fold(f64::INFINITY, |m, s| m.min(Real::to_f64(*s)));
            return Err(Error::NoIntertwiner(smin));
        }
        1 => {}
        d => return Err(Error::NotIrreducible(d)),
    }
    let mut v = DMatrix::from_column_slice(k, k, ns.column(0).as_slice());
    // Schur: an intertwiner of irreducibles is a multiple of a unitary
    let fro = v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
    let scale = num_traits::Float::sqrt(T::of(k as f64) / fro);
    v *= Complex::from(scale);
    let thresh = T::of(1e-12);
    'outer: for r in 0..k {
        for c in 0..k {
            let e = v[(r, c)];
            if e.norm() > thresh {
                let ph = e.conj() / Complex::from(e.norm());
                v *= ph;
                break 'outer;
            }
        }
    }
    let residual =
        intertwining_residual(rep, twisted, &v).max(crate::linalg::unitarity_residual(&v).to_f64());
    if residual > RESIDUAL_TOLERANCE {
        return Err(Error::NoIntertwiner(residual));
    }
    Ok(v)
}

/// `max_g ||twisted[g] V - V rep[g]||_2`.
pub fn intertwining_residual<T: Real>(
    rep: &[CMatrix<T>],
    twisted: &[CMatrix<T>],
    v: &CMatrix<T>,
) -> f64 {
    rep.iter()
        .zip(twisted)
        .map(|(r, t)| hs_norm(&(t * v - v * r)).expect("square").to_f64())
        .fold(0.0, f64::max)
}

/// [`solve_intertwiner`] on two representations with matching generator labels.
pub fn solve_intertwiner_reps<G, T: Real>(
    rep: &UnitaryRep<G, T>,
    twisted: &UnitaryRep<G, T>,
) -> Result<CMatrix<T>> {
    if rep.dimension() != twisted.dimension() {
        return Err(Error::Dimension(format!(
            "{} vs {}",
            rep.dimension(),
            twisted.dimension()
        )));
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for g in rep.generators() {
        let t = twisted
            .generator(&g.label)
            .ok_or_else(|| Error::Coverage(g.label.clone()))?;
        a.push(g.matrix.clone());
        b.push(t.clone());
    }
    solve_intertwiner(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RootOfUnity;
    use crate::linalg::{clock, random_unitary, shift};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn clock_shift(k: usize, j: i64) -> Vec<CMatrix<f64>> {
        let z = RootOfUnity::from_signed(j, k as u64).unwrap();
        vec![clock(k, &z), shift(k)]
    }

    #[test]
    fn identity_intertwines_itself() {
        let r = clock_shift(3, 1);
        let v = solve_intertwiner(&r, &r).unwrap();
        assert!(hs_norm(&(v - identity::<f64>(3))).unwrap() < 1e-10);
    }

    #[test]
    fn recovers_inner_twist() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in [3usize, 5, 7] {
            let r = clock_shift(k, 1);
            let w = random_unitary(&mut rng, k);
            let t: Vec<_> = r.iter().map(|m| &w * m * w.adjoint()).collect();
            let v = solve_intertwiner(&r, &t).unwrap();
            assert!(intertwining_residual(&r, &t, &v) < 1e-10);
            // equal to W up to a phase
            let ph = v[(0, 0)] / w[(0, 0)];
            assert!((ph.norm() - 1.0).abs() < 1e-9);
            assert!(hs_norm(&(v - w * ph)).unwrap() < 1e-9);
        }
    }

    #[test]
    fn inequivalent_irreps() {
        let r = clock_shift(3, 1);
        let t = clock_shift(3, 2);
        assert!(matches!(
            solve_intertwiner(&r, &t),
            Err(Error::NoIntertwiner(_))
        ));
    }

    #[test]
    fn reducible_input() {
        let r = vec![identity::<f64>(2)];
        assert!(matches!(
            solve_intertwiner(&r, &r),
            Err(Error::NotIrreducible(4))
        ));
    }
}
