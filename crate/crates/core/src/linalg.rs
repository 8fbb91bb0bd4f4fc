//! Dense complex matrix helpers shared by the representation and trace code.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::RootOfUnity;
use crate::error::{Error, Result};
use crate::scalar::{CMatrix, Cx, Real};

pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    DMatrix::identity(n, n)
}

/// `C = diag(zeta^j)_{j<k}`.
pub fn clock<T: Real>(k: usize, zeta: &RootOfUnity) -> CMatrix<T> {
    DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            zeta.pow(i as i64).value()
        } else {
            Cx::zero()
        }
    })
}

/// The cyclic shift `S e_j = e_{j+1 mod k}`.
pub fn shift<T: Real>(k: usize) -> CMatrix<T> {
    DMatrix::from_fn(k, k, |i, j| {
        if i == (j + 1) % k {
            Cx::one()
        } else {
            Cx::zero()
        }
    })
}

/// Integer power; negative exponents use the inverse (adjoint for unitaries
/// is not assumed).
pub fn mat_pow<T: Real>(m: &CMatrix<T>, e: i64) -> CMatrix<T> {
    let n = m.nrows();
    let mut base = if e < 0 {
        m.clone().try_inverse().expect("invertible matrix")
    } else {
        m.clone()
    };
    let mut acc = identity::<T>(n);
    let mut e = e.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Normalized trace `tr_n(T) = Tr(T) / n`.
pub fn normalized_trace<T: Real>(m: &CMatrix<T>) -> Cx<T> {
    m.trace() / Cx::from(T::of(m.nrows() as f64))
}

/// Normalized Hilbert-Schmidt norm `tr_n(T* T)^{1/2}`.
pub fn hs_norm<T: Real>(m: &CMatrix<T>) -> Result<T> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!(
            "{}x{} is not square",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() == 0 {
        return Ok(T::zero());
    }
    let s: T = m.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
    Ok(num_traits::Float::sqrt(s / T::of(m.nrows() as f64)))
}

/// `||U* U - I||_2`.
pub fn unitarity_residual<T: Real>(u: &CMatrix<T>) -> T {
    let n = u.nrows();
    hs_norm(&(u.adjoint() * u - identity::<T>(n))).expect("square")
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal absorbed into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| Complex::new(gaussian(rng), gaussian(rng)));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex::one()
        };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Orthonormal basis (as columns) of the numerical nullspace of `a`:
/// right singular vectors with singular value below `tol * max(1, s_max)`.
pub fn nullspace<T: Real>(a: &CMatrix<T>, tol: T) -> CMatrix<T> {
    let cols = a.ncols();
    // pad to at least square so every right singular vector is produced
    let a = if a.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd
        .singular_values
        .iter()
        .fold(T::zero(), |m, &s| if s > m { s } else { m });
    let thresh = tol * if smax > T::one() { smax } else { T::one() };
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= thresh)
        .collect();
    let mut out = DMatrix::zeros(cols, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        for r in 0..cols {
            out[(r, c)] = v_t[(i, r)].conj();
        }
    }
    out
}

/// Block-diagonal sum.
pub fn direct_sum<T: Real>(blocks: &[CMatrix<T>]) -> CMatrix<T> {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = DMatrix::zeros(n, n);
    let mut o = 0;
    for b in blocks {
        out.view_mut((o, o), (b.nrows(), b.ncols())).copy_from(b);
        o += b.nrows();
    }
    out
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_hermitian_eigenvalue(m: &CMatrix<f64>) -> f64 {
    let h = (m + m.adjoint()) * Complex::new(0.5, 0.0);
    h.symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

pub fn to_f64<T: Real>(m: &CMatrix<T>) -> CMatrix<f64> {
    m.map(|z| Complex::new(z.re.to_f64(), z.im.to_f64()))
}
