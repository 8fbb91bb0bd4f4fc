//! Finite-dimensional unitary representations: clock/shift models of the
//! Heisenberg group mod `k` and of the twisted group algebra of `Z[1/2]^2`,
//! intertwiners, and the block representation of the crossed product by
//! `beta(x, y, z) = (2x, y/2, z)`.

mod cocycle;
mod crossed;
mod group;
mod intertwiner;
mod models;
mod rep;

pub use cocycle::{divide_by_level, Cocycle, SpectrumPoint};
pub use crossed::{
    block_shift, build_pi_in, covariance_residual, semidirect_rep_pipeline, CrossedProduct,
    PipelineSpec, PERIOD_SEARCH_LIMIT,
};
pub use group::{
    enumerate_mod_k, heisenberg_mod_k, DyadicHeisenberg, DyadicPair, GroupElement,
    HeisenbergElement, ModHeisenberg, RingElem, SemidirectElement,
};
pub use intertwiner::{
    intertwining_residual, solve_intertwiner, solve_intertwiner_reps, NULLSPACE_TOLERANCE,
    RESIDUAL_TOLERANCE,
};
pub use models::{
    clock_shift_rep, fiber_rep, heisenberg_generators, heisenberg_rep, is_primitive, level_phase,
    monomial, phase_point, plane_generators, DEFAULT_N_MAX,
};
pub use rep::{Generator, GeneratorJson, RepJson, UnitaryRep};
