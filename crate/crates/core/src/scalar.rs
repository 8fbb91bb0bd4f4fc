//! Floating-point scalar abstraction for the dense matrix kernels.
//!
//! Representation images, Hilbert-Schmidt norms and intertwiner solves are
//! written once against [`Real`] and instantiated for `f32` and `f64`. Exact
//! quantities (dyadic rationals, residues, roots of unity, metric values on
//! periodic points) live in big-integer types and never go through `Real`.

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;

/// Real scalar usable in the complex matrix kernels.
pub trait Real: RealField + num_traits::Float + Copy + Send + Sync {
    /// Lossy conversion used for tolerances and exact-to-float evaluation.
    fn of(x: f64) -> Self;
    fn to_f64(self) -> f64;
}

impl Real for f64 {
    #[inline]
    fn of(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    #[inline]
    fn of(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
}

pub type Cx<T> = Complex<T>;
pub type CMatrix<T> = DMatrix<Complex<T>>;

/// `e^{2 pi i t}` for an angle given in turns.
#[inline]
pub fn turn<T: Real>(t: f64) -> Cx<T> {
    let a = std::f64::consts::TAU * t;
    Complex::new(T::of(a.cos()), T::of(a.sin()))
}
