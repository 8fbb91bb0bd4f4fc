use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::point::{ExactPoint, SolenoidPoint};
use crate::error::{Error, Result};

/// The forward shift `(a_0, a_1, ..) -> (a_0^2, a_0, a_1, ..)`.
pub fn shift_forward(a: &SolenoidPoint) -> SolenoidPoint {
    match a {
        SolenoidPoint::Exact(p) => SolenoidPoint::Exact(p.forward()),
        SolenoidPoint::Truncated(t) => SolenoidPoint::Truncated(t.forward()),
    }
}

/// The backward shift `(a_0, a_1, ..) -> (a_1, a_2, ..)`.
pub fn shift_backward(a: &SolenoidPoint) -> Result<SolenoidPoint> {
    match a {
        SolenoidPoint::Exact(p) => Ok(SolenoidPoint::Exact(p.backward())),
        SolenoidPoint::Truncated(t) => t.backward().map(SolenoidPoint::Truncated),
    }
}

/// `i`-fold forward shift; negative `i` shifts backward.
pub fn shift_by(a: &SolenoidPoint, i: i64) -> Result<SolenoidPoint> {
    match a {
        SolenoidPoint::Exact(p) => Ok(SolenoidPoint::Exact(p.shift(i))),
        SolenoidPoint::Truncated(_) => {
            let mut x = a.clone();
            for _ in 0..i.unsigned_abs() {
                x = if i > 0 {
                    shift_forward(&x)
                } else {
                    shift_backward(&x)?
                };
            }
            Ok(x)
        }
    }
}

/// Whether `a` is fixed by the `n`-fold forward shift.
pub fn is_periodic(a: &SolenoidPoint, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    match a {
        SolenoidPoint::Exact(p) => Ok(p.is_periodic(n)),
        SolenoidPoint::Truncated(_) => Err(Error::TruncatedPeriodicity),
    }
}

/// `2^{2N+1} - 1`, the denominator of the periodic approximants at depth `N`.
pub fn periodic_modulus(n: u32) -> BigUint {
    (BigUint::one() << (2 * n + 1)) - 1u32
}

/// Rounds a non-negative rational to the nearest integer, ties toward zero.
fn round_half_down(x: &BigRational) -> BigInt {
    let f = x.floor();
    let rem = x - &f;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if rem > half {
        f.to_integer() + 1
    } else {
        f.to_integer()
    }
}

/// The `(2N+1)`-periodic point whose `N`-th coordinate is the
/// `(2^{2N+1} - 1)`-th root of unity nearest to `a_N`.
///
/// Coordinate `k <= N` of the result is `lambda^{2^{N-k}}`, so
/// `d(a_k, b_k) <= 2^{N-k} / (2m)` and `rho(a, b) <= (7/3) 2^{-N}`.
pub fn nearest_periodic(a: &SolenoidPoint, n: u32) -> Result<SolenoidPoint> {
    if n == 0 {
        return Err(Error::InvalidArgument("depth N must be at least 1".into()));
    }
    let theta_n = match a {
        SolenoidPoint::Exact(p) => p.coordinate(n as u64),
        SolenoidPoint::Truncated(t) => {
            if t.depth() < n as usize {
                return Err(Error::InsufficientPrecision {
                    needed: n as usize,
                    available: t.depth(),
                });
            }
            a.coordinate_exact(n as usize).expect("within depth")
        }
    };
    let m = periodic_modulus(n);
    let mi = BigInt::from(m.clone());
    let j = round_half_down(&(theta_n * BigRational::from_integer(mi.clone()))).mod_floor(&mi);
    let j = j.to_biguint().expect("non-negative");
    // b_0 = lambda^{2^N}
    let idx0 = (j << n) % &m;
    Ok(SolenoidPoint::Exact(ExactPoint::reduced(idx0, m)))
}

/// The certified bound `(7/3) 2^{-N}`.
pub fn periodic_bound(n: u32) -> BigRational {
    BigRational::new(BigInt::from(7), BigInt::from(3) << n)
}
