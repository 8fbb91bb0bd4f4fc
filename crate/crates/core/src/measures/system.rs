use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::measure::Location;
use crate::error::{Error, Result};
use crate::solenoid::{is_periodic, rho, shift_by, RhoBound, SolenoidPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemMap {
    ShiftForward,
    ShiftBackward,
    /// `alpha-hat x alpha-hat^{-1}` on the square.
    ProductForwardBackward,
}

/// A homeomorphism `gamma` with `gamma` and `gamma^{-1}` both
/// `L`-Lipschitz, and periodic points `C L^{-N/2}`-dense at period `N`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynamicalSystem {
    pub map: SystemMap,
    pub lipschitz: f64,
    pub density: f64,
}

impl DynamicalSystem {
    pub fn new(map: SystemMap) -> Self {
        Self {
            map,
            lipschitz: 2.0,
            density: 7.0 / 3.0,
        }
    }

    pub fn forward() -> Self {
        Self::new(SystemMap::ShiftForward)
    }

    pub fn backward() -> Self {
        Self::new(SystemMap::ShiftBackward)
    }

    pub fn product() -> Self {
        Self::new(SystemMap::ProductForwardBackward)
    }

    pub fn space(&self) -> super::Space {
        match self.map {
            SystemMap::ProductForwardBackward => super::Space::SolenoidSquare,
            _ => super::Space::Solenoid,
        }
    }

    /// `gamma^i(x)`.
    pub fn apply(&self, x: &Location, i: i64) -> Result<Location> {
        match (self.map, x) {
            (SystemMap::ShiftForward, Location::Point(p)) => Ok(Location::Point(shift_by(p, i)?)),
            (SystemMap::ShiftBackward, Location::Point(p)) => Ok(Location::Point(shift_by(p, -i)?)),
            (SystemMap::ProductForwardBackward, Location::Pair(p)) => Ok(Location::Pair(
                SolenoidPair::new(shift_by(&p.first, i)?, shift_by(&p.second, -i)?),
            )),
            _ => Err(Error::SpaceMismatch("system and point")),
        }
    }

    /// Whether `gamma^period(x) = x`; exact points only.
    pub fn is_periodic(&self, x: &Location, period: u64) -> Result<bool> {
        match x {
            Location::Point(p) => is_periodic(p, period),
            Location::Pair(p) => {
                Ok(is_periodic(&p.first, period)? && is_periodic(&p.second, period)?)
            }
        }
    }

    /// `2 C sqrt(L) / (L - 1)`.
    pub fn orbit_sum_bound(&self) -> f64 {
        let l = self.lipschitz;
        2.0 * self.density * l.sqrt() / (l - 1.0)
    }
}

/// The sum metric: `rho` on the solenoid, `rho(a1, b1) + rho(a2, b2)` on the square.
pub fn distance(x: &Location, y: &Location) -> Result<RhoBound> {
    match (x, y) {
        (Location::Point(a), Location::Point(b)) => Ok(rho(a, b)),
        (Location::Pair(a), Location::Pair(b)) => {
            let r1 = rho(&a.first, &b.first);
            let r2 = rho(&a.second, &b.second);
            Ok(RhoBound {
                lower: r1.lower + r2.lower,
                upper: r1.upper + r2.upper,
            })
        }
        _ => Err(Error::SpaceMismatch("distance between different spaces")),
    }
}

/// Certified upper bound of `sum_{i=-n}^{n} dist(gamma^i x, gamma^i y)`.
pub fn orbit_sum(
    system: &DynamicalSystem,
    x: &Location,
    y: &Location,
    n: u32,
) -> Result<BigRational> {
    let mut s = BigRational::from_integer(BigInt::from(0));
    for i in -(n as i64)..=(n as i64) {
        s += distance(&system.apply(x, i)?, &system.apply(y, i)?)?.upper;
    }
    Ok(s)
}

/// Exact test of `s <= 14 sqrt(2) / 3`, i.e. `s <= 0` or `9 s^2 <= 392`.
pub fn within_orbit_sum_bound(s: &BigRational) -> bool {
    let zero = BigRational::from_integer(BigInt::from(0));
    if *s <= zero {
        return true;
    }
    s * s * BigRational::from_integer(BigInt::from(9))
        <= BigRational::from_integer(BigInt::from(392))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solenoid::SolenoidPoint;

    #[test]
    fn bound_constant() {
        let b = DynamicalSystem::forward().orbit_sum_bound();
        assert!((b - 14.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // 14 sqrt 2 / 3 = 6.59966...
        assert!(within_orbit_sum_bound(&q(65996, 10000)));
        assert!(!within_orbit_sum_bound(&q(65997, 10000)));
        assert!(within_orbit_sum_bound(&q(-1, 2)));
    }

    #[test]
    fn product_map_moves_factors_oppositely() {
        let s = DynamicalSystem::product();
        let x = Location::Pair(SolenoidPair::new(
            SolenoidPoint::exact(1, 5).unwrap(),
            SolenoidPoint::exact(1, 5).unwrap(),
        ));
        let y = s.apply(&x, 1).unwrap();
        assert_eq!(y.factor(0).unwrap(), &SolenoidPoint::exact(2, 5).unwrap());
        assert_eq!(y.factor(1).unwrap(), &SolenoidPoint::exact(3, 5).unwrap());
        assert_eq!(s.apply(&y, -1).unwrap(), x);
        assert!(s.is_periodic(&x, 4).unwrap());
        assert!(!s.is_periodic(&x, 2).unwrap());
    }

    #[test]
    fn mismatched_space() {
        let s = DynamicalSystem::forward();
        assert!(s
            .apply(&Location::Pair(SolenoidPair::identity()), 1)
            .is_err());
    }
}
