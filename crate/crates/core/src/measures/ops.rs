use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::measure::{Atom, FiniteMeasure, Location, Space};
use super::system::{orbit_sum, within_orbit_sum_bound, DynamicalSystem};
use super::testfn::{default_family, TestFunction};
use crate::arith::OddModulus;
use crate::error::{Error, Result};
use crate::solenoid::{nearest_periodic, ExactPoint, SolenoidPair, SolenoidPoint};

/// Default invariance slack accepted by [`densify`].
pub const DEFAULT_SLACK: f64 = 1e-9;

fn check_space(mu: &FiniteMeasure, system: &DynamicalSystem) -> Result<()> {
    if mu.space() != system.space() {
        return Err(Error::SpaceMismatch("measure and system"));
    }
    Ok(())
}

/// Uniform measure on `{gamma^i(p) : 0 <= i < period}`.
pub fn orbit_measure(p: &Location, period: u64, system: &DynamicalSystem) -> Result<FiniteMeasure> {
    if period == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    if p.space() != system.space() {
        return Err(Error::SpaceMismatch("point and system"));
    }
    if !system.is_periodic(p, period)? {
        return Err(Error::NotPeriodic(period as usize));
    }
    let mut points = (0..period as i64)
        .map(|i| system.apply(p, i))
        .collect::<Result<Vec<_>>>()?;
    points.sort();
    // weights from multiplicities so that short orbits get exact weights
    let mut atoms: Vec<Atom> = Vec::new();
    let mut i = 0;
    while i < points.len() {
        let j = points[i..].iter().take_while(|q| **q == points[i]).count();
        atoms.push(Atom {
            location: points[i].clone(),
            weight: j as f64 / period as f64,
        });
        i += j;
    }
    Ok(FiniteMeasure::normalized(p.space(), atoms))
}

/// `gamma_* mu`.
pub fn pushforward(mu: &FiniteMeasure, system: &DynamicalSystem) -> Result<FiniteMeasure> {
    check_space(mu, system)?;
    let atoms = mu
        .atoms()
        .iter()
        .map(|a| {
            Ok(Atom {
                location: system.apply(&a.location, 1)?,
                weight: a.weight,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteMeasure::normalized(mu.space(), atoms))
}

pub fn integrate(mu: &FiniteMeasure, f: &TestFunction) -> Result<f64> {
    if f.space() == Space::SolenoidSquare && mu.space() == Space::Solenoid {
        return Err(Error::SpaceMismatch("test function needs the square"));
    }
    mu.atoms()
        .iter()
        .try_fold(0.0, |acc, a| Ok(acc + a.weight * f.eval(&a.location)?))
}

/// `max_f |int f dmu - int f dnu|` over the family.
pub fn discrepancy(mu: &FiniteMeasure, nu: &FiniteMeasure, family: &[TestFunction]) -> Result<f64> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if mu.space() != nu.space() {
        return Err(Error::SpaceMismatch("discrepancy between different spaces"));
    }
    family.iter().try_fold(0.0f64, |m, f| {
        Ok(m.max((integrate(mu, f)? - integrate(nu, f)?).abs()))
    })
}

/// `int g dmu` with `g = P^{-1} sum_{i=-n}^{n} f o gamma^i`, `P = 2n+1`.
pub fn birkhoff_integral(
    mu: &FiniteMeasure,
    f: &TestFunction,
    system: &DynamicalSystem,
    n: u32,
) -> Result<f64> {
    check_space(mu, system)?;
    let p = (2 * n + 1) as f64;
    let mut total = 0.0;
    for a in mu.atoms() {
        let mut g = 0.0;
        for i in -(n as i64)..=(n as i64) {
            g += f.eval(&system.apply(&a.location, i)?)?;
        }
        total += a.weight * g / p;
    }
    Ok(total)
}

/// Approximates each factor by the `(2N+1)`-periodic point of
/// [`nearest_periodic`]; the sum-metric error is at most `2 (7/3) 2^{-N}`.
pub fn product_periodic(pair: &SolenoidPair, n: u32) -> Result<SolenoidPair> {
    Ok(SolenoidPair::new(
        nearest_periodic(&pair.first, n)?,
        nearest_periodic(&pair.second, n)?,
    ))
}

/// The periodic approximant of a location at depth `n`.
pub fn nearest_periodic_location(x: &Location, n: u32) -> Result<Location> {
    match x {
        Location::Point(p) => Ok(Location::Point(nearest_periodic(p, n)?)),
        Location::Pair(p) => Ok(Location::Pair(product_periodic(p, n)?)),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensifyRow {
    pub function: String,
    pub lipschitz: f64,
    /// `|int g dmu - int g dnu|` for the Birkhoff average `g` of the function.
    pub measured: f64,
    /// `K (2 C sqrt L / (L - 1)) / (2N+1)`.
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Densified {
    pub measure: FiniteMeasure,
    pub n: u32,
    pub period: u64,
    /// Largest certified per-atom orbit sum `sum_{|i|<=N} dist(gamma^i x, gamma^i y)`.
    pub max_orbit_sum: f64,
    /// Whether every orbit sum is at most `2 C sqrt L / (L - 1)`, checked exactly.
    pub orbit_sums_within_bound: bool,
    pub rows: Vec<DensifyRow>,
}

impl Densified {
    pub fn max_measured(&self) -> f64 {
        self.rows.iter().map(|r| r.measured).fold(0.0, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.orbit_sums_within_bound && self.rows.iter().all(|r| r.measured <= r.bound)
    }
}

/// Replaces every atom `x` by the orbit measure of its `(2N+1)`-periodic
/// approximant, keeping the weight, and certifies the Birkhoff-averaged
/// discrepancy against `family` (the default family when `None`).
pub fn densify(
    mu: &FiniteMeasure,
    system: &DynamicalSystem,
    n: u32,
    slack: f64,
    family: Option<&[TestFunction]>,
) -> Result<Densified> {
    check_space(mu, system)?;
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let owned;
    let family = match family {
        Some(f) => f,
        None => {
            owned = default_family(mu.space());
            &owned
        }
    };
    let invariance = discrepancy(mu, &pushforward(mu, system)?, family)?;
    if invariance > slack {
        return Err(Error::NotInvariant {
            discrepancy: invariance,
            slack,
        });
    }

    let period = 2 * n as u64 + 1;
    let mut atoms = Vec::new();
    let mut max_sum = 0.0f64;
    let mut within = true;
    for a in mu.atoms() {
        let y = nearest_periodic_location(&a.location, n)?;
        let s = orbit_sum(system, &a.location, &y, n)?;
        within &= within_orbit_sum_bound(&s);
        max_sum = max_sum.max(s.to_f64().unwrap_or(f64::INFINITY));
        let orbit = orbit_measure(&y, period, system)?;
        atoms.extend(orbit.atoms().iter().map(|o| Atom {
            location: o.location.clone(),
            weight: a.weight * o.weight,
        }));
    }
    let nu = FiniteMeasure::normalized(mu.space(), atoms);

    let c = system.orbit_sum_bound();
    let rows = family
        .iter()
        .map(|f| {
            let measured = (birkhoff_integral(mu, f, system, n)?
                - birkhoff_integral(&nu, f, system, n)?)
            .abs();
            Ok(DensifyRow {
                function: f.label(),
                lipschitz: f.lipschitz(),
                measured,
                bound: f.lipschitz() * c / period as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Densified {
        measure: nu,
        n,
        period,
        max_orbit_sum: max_sum,
        orbit_sums_within_bound: within,
        rows,
    })
}

/// Least-squares slope of `log y` against `log x` (points with `y <= 0` skipped).
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(_, &y)| y > 0.0)
        .map(|(&x, &y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn scale_point(p: &SolenoidPoint, k: &BigUint) -> Result<SolenoidPoint> {
    let e = p
        .as_exact()
        .ok_or_else(|| Error::InvalidPoint("scaled embedding needs exact points".into()))?;
    let d = e.denominator();
    let kd = k % d;
    if !kd.gcd(d).is_one() && !d.is_one() {
        return Err(Error::ScaleNotCoprime {
            den: d.to_string(),
            k: k.to_u64().unwrap_or(u64::MAX),
        });
    }
    let inv = BigInt::from(kd)
        .modinv(&BigInt::from(d.clone()))
        .unwrap_or_default();
    let inv = inv.mod_floor(&BigInt::from(d.clone()));
    Ok(SolenoidPoint::Exact(ExactPoint::new(
        (e.numerator() * inv.to_biguint().expect("non-negative")) % d,
        d.clone(),
    )?))
}

/// Transports a measure on the dual of `(k Z[1/2])^2` (read in scaled
/// coordinates) to the dual of `Z[1/2]^2` along `(g, h) -> (kg, kh)`:
/// `j/d -> j k^{-1} / d`. Commutes with the dynamics. Requires every atom
/// denominator to be prime to `k`.
pub fn scaled_embedding(mu: &FiniteMeasure, k: u64) -> Result<FiniteMeasure> {
    let k = OddModulus::new(k)?;
    let atoms = mu
        .atoms()
        .iter()
        .map(|a| {
            let location = match &a.location {
                Location::Point(p) => Location::Point(scale_point(p, k.get())?),
                Location::Pair(p) => Location::Pair(SolenoidPair::new(
                    scale_point(&p.first, k.get())?,
                    scale_point(&p.second, k.get())?,
                )),
            };
            Ok(Atom {
                location,
                weight: a.weight,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteMeasure::normalized(mu.space(), atoms))
}
