//! Seeded random points for tests and batch runs.

use rand::Rng;

use super::{ExactPoint, SolenoidPair, SolenoidPoint, TruncatedPoint};

/// A uniformly random exact point with odd denominator below `2^bits`.
pub fn random_exact<R: Rng + ?Sized>(rng: &mut R, bits: u32) -> SolenoidPoint {
    let bits = bits.clamp(1, 62);
    let den = rng.gen_range(0..(1u64 << (bits - 1))) * 2 + 1;
    let num = rng.gen_range(0..den);
    SolenoidPoint::Exact(ExactPoint::new(num, den).expect("odd denominator"))
}

/// A random truncated point with coordinates `0..=depth`.
pub fn random_truncated<R: Rng + ?Sized>(rng: &mut R, depth: usize) -> SolenoidPoint {
    let theta: f64 = rng.gen_range(0.0..1.0);
    SolenoidPoint::Truncated(
        TruncatedPoint::from_last(theta, depth).expect("consistent by construction"),
    )
}

pub fn random_exact_pair<R: Rng + ?Sized>(rng: &mut R, bits: u32) -> SolenoidPair {
    SolenoidPair::new(random_exact(rng, bits), random_exact(rng, bits))
}
