//! Constructive finite-dimensional approximation of traces on the dyadic
//! Heisenberg group `H3(Z[1/2])` and on its extension by the doubling
//! automorphism.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`]: dyadic rationals, odd residues, roots of unity.
//! * [`solenoid`]: the dual group of `Z[1/2]`, its metric and dynamics.
//! * [`measures`]: finitely supported invariant measures and densification.
//! * [`repsynth`]: clock/shift representations, intertwiners and the block
//!   representation of the crossed product.
//! * [`tracelab`]: traces on windows, Hilbert-Schmidt defects, induced traces.
//! * [`cli`]: batch front end.

pub mod arith;
pub(crate) mod bignum;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod repsynth;
pub mod scalar;
pub mod solenoid;
pub mod tracelab;

pub use error::{Error, Result};
pub use scalar::{CMatrix, Cx, Real};

/// Double-precision complex matrices, the default image type.
pub type Matrix64 = CMatrix<f64>;
/// Single-precision complex matrices.
pub type Matrix32 = CMatrix<f32>;
pub type Complex64 = Cx<f64>;
