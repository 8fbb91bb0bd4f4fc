use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cocycle::SpectrumPoint;
use super::group::{DyadicHeisenberg, SemidirectElement};
use super::intertwiner::{intertwining_residual, solve_intertwiner, RESIDUAL_TOLERANCE};
use super::models::{fiber_rep, heisenberg_generators, level_phase, DEFAULT_N_MAX};
use super::rep::{Generator, UnitaryRep};
use crate::error::{Error, Result};
use crate::linalg::{direct_sum, hs_norm, mat_pow};
use crate::measures::product_periodic;
use crate::scalar::{CMatrix, Real};
use crate::solenoid::{is_periodic, SolenoidPair, SolenoidPoint};

/// Periods are searched up to this length.
pub const PERIOD_SEARCH_LIMIT: u64 = 1 << 16;

/// `u -> ` the block cyclic shift sending block `i` to block `i - 1` and
/// block `0` to block `n - 1` through `V`.
pub fn block_shift<T: Real>(k: usize, n: usize, v: &CMatrix<T>) -> CMatrix<T> {
    let mut u = DMatrix::from_element(k * n, k * n, Complex::zero());
    for i in 1..n {
        for j in 0..k {
            u[((i - 1) * k + j, i * k + j)] = Complex::one();
        }
    }
    u.view_mut(((n - 1) * k, 0), (k, k)).copy_from(v);
    u
}

/// `pi_{I,n}`: `g -> (+)_{i<n} pi_I(beta^i g)` and `u -> ` [`block_shift`].
///
/// `generators` are the fiber generators on which `V` is checked against
/// `pi_I(beta^n g) = V pi_I(g) V*`.
pub fn build_pi_in<T: Real>(
    fiber: &UnitaryRep<DyadicHeisenberg, T>,
    generators: &[(String, DyadicHeisenberg)],
    n: usize,
    period: u64,
    v: &CMatrix<T>,
) -> Result<UnitaryRep<SemidirectElement, T>> {
    if n == 0 || period == 0 || n as u64 % period != 0 {
        return Err(Error::PeriodMismatch {
            period: period as usize,
            n,
        });
    }
    let rep: Vec<CMatrix<T>> = generators
        .iter()
        .map(|(_, g)| fiber.image(g))
        .collect::<Result<_>>()?;
    let tw: Vec<CMatrix<T>> = generators
        .iter()
        .map(|(_, g)| fiber.image(&g.beta_pow(n as i64)))
        .collect::<Result<_>>()?;
    let r = intertwining_residual(&rep, &tw, v);
    if r > RESIDUAL_TOLERANCE {
        return Err(Error::NoIntertwiner(r));
    }
    let k = fiber.dimension();
    let u = block_shift(k, n, v);
    let u_inv = u.adjoint();
    let fib = fiber.clone();
    let block = move |g: &DyadicHeisenberg| -> Result<CMatrix<T>> {
        let blocks = (0..n as i64)
            .map(|i| fib.image(&g.beta_pow(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(direct_sum(&blocks))
    };
    let mut gens = generators
        .iter()
        .map(|(label, g)| {
            Ok(Generator {
                label: label.clone(),
                matrix: block(g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    gens.push(Generator {
        label: "u".into(),
        matrix: u.clone(),
    });
    let eval = move |e: &SemidirectElement| -> Result<CMatrix<T>> {
        let p = block(&e.g)?;
        let um = if e.m >= 0 {
            mat_pow(&u, e.m)
        } else {
            mat_pow(&u_inv, -e.m)
        };
        Ok(p * um)
    };
    Ok(UnitaryRep::new(k * n, gens, eval))
}

/// `max_g ||U pi(g) U* - pi(beta g)||_2` over the fiber generators.
pub fn covariance_residual<T: Real>(
    rep: &UnitaryRep<SemidirectElement, T>,
    generators: &[(String, DyadicHeisenberg)],
) -> Result<f64> {
    let u = rep.image(&SemidirectElement::u())?;
    generators.iter().try_fold(0.0f64, |m, (_, g)| {
        let lhs = &u * rep.image(&SemidirectElement::new(g.clone(), 0))? * u.adjoint();
        let rhs = rep.image(&SemidirectElement::new(g.beta_pow(1), 0))?;
        Ok(m.max(hs_norm(&(lhs - rhs))?.to_f64()))
    })
}

/// Inputs of [`semidirect_rep_pipeline`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineSpec {
    /// Odd level `k`; the fiber dimension.
    pub k: u64,
    /// Number of blocks; a multiple of the spectrum period.
    pub n: usize,
    /// Central character, exact with denominator dividing `k`.
    pub chi: SolenoidPoint,
    /// Spectrum characters in scaled coordinates; replaced by their
    /// `(2 depth + 1)`-periodic approximants unless already `n`-periodic.
    pub spectrum: SolenoidPair,
    pub depth: u32,
    pub n_max: u32,
}

impl PipelineSpec {
    pub fn new(k: u64, n: usize, chi: SolenoidPoint, spectrum: SolenoidPair) -> Self {
        Self {
            k,
            n,
            chi,
            spectrum,
            depth: 1,
            n_max: DEFAULT_N_MAX,
        }
    }
}

/// Output of [`semidirect_rep_pipeline`].
#[derive(Clone, Debug)]
pub struct CrossedProduct<T: Real = f64> {
    pub rep: UnitaryRep<SemidirectElement, T>,
    pub fiber: UnitaryRep<DyadicHeisenberg, T>,
    pub spectrum: SpectrumPoint,
    pub period: u64,
    pub n: usize,
    pub v: CMatrix<T>,
    pub covariance_residual: f64,
}

/// Fiber representation at a `beta-hat`-periodic spectrum point, the
/// intertwiner for `beta^n`, and the block representation `pi_{I,n}`.
pub fn semidirect_rep_pipeline<T: Real>(spec: &PipelineSpec) -> Result<CrossedProduct<T>> {
    let zeta = level_phase(&spec.chi, spec.k)?;
    let n = spec.n;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "block count must be positive".into(),
        ));
    }
    let periodic =
        |p: &SolenoidPoint| p.as_exact().is_some() && is_periodic(p, n as u64).unwrap_or(false);
    let pair = if periodic(&spec.spectrum.first) && periodic(&spec.spectrum.second) {
        spec.spectrum.clone()
    } else {
        product_periodic(&spec.spectrum, spec.depth)?
    };
    let spectrum = SpectrumPoint::new(pair.first, pair.second, spec.k)?;
    let period = spectrum.period(PERIOD_SEARCH_LIMIT).unwrap_or(0);
    if period == 0 || n as u64 % period != 0 {
        return Err(Error::PeriodMismatch {
            period: period as usize,
            n,
        });
    }
    let fiber = fiber_rep::<T>(spec.k, &zeta, &spectrum, spec.n_max)?;
    // z acts by the same scalar on both sides; it does not constrain V
    let gens: Vec<_> = heisenberg_generators(spec.n_max)
        .into_iter()
        .filter(|(l, _)| l != "z")
        .collect();
    let rep: Vec<CMatrix<T>> = gens
        .iter()
        .map(|(_, g)| fiber.image(g))
        .collect::<Result<_>>()?;
    let tw: Vec<CMatrix<T>> = gens
        .iter()
        .map(|(_, g)| fiber.image(&g.beta_pow(n as i64)))
        .collect::<Result<_>>()?;
    let v = solve_intertwiner(&rep, &tw)?;
    let all_gens = heisenberg_generators(spec.n_max);
    let pi = build_pi_in(&fiber, &all_gens, n, period, &v)?;
    let covariance_residual = covariance_residual(&pi, &all_gens)?;
    Ok(CrossedProduct {
        rep: pi,
        fiber,
        spectrum,
        period,
        n,
        v,
        covariance_residual,
    })
}
