use std::io::Write;

use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::induced::{induced_trace_center_mod, induced_trace_dyadic, InducingSubgroup};
use super::table::{Provenance, TraceTable};
use crate::arith::{Dyadic, RootOfUnity};
use crate::error::{Error, Result};
use crate::repsynth::{heisenberg_mod_k, DyadicHeisenberg};
use crate::scalar::turn;
use crate::solenoid::{nearest_periodic, periodic_modulus, ExactPoint, SolenoidPoint};

/// Levels `2^{2N+1} - 1` are kept within `u64`.
pub const MAX_DEPTH: u32 = 31;

/// One approximation level.
#[derive(Clone, Debug)]
pub struct LevelTable {
    pub depth: u32,
    pub level: u64,
    pub chi: ExactPoint,
    pub table: TraceTable<DyadicHeisenberg>,
}

/// A row of the error curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub depth: u32,
    pub level: u64,
    pub element: String,
    pub central: bool,
    pub target_re: f64,
    pub target_im: f64,
    pub approx_re: f64,
    pub approx_im: f64,
    pub error: f64,
    /// Certified upper bound on `error`.
    pub bound: f64,
}

#[derive(Clone, Debug)]
pub struct NilpotentApprox {
    pub target: TraceTable<DyadicHeisenberg>,
    pub levels: Vec<LevelTable>,
    pub rows: Vec<ErrorRow>,
}

impl NilpotentApprox {
    /// `(level, max error over the window)`.
    pub fn max_error_by_level(&self) -> Vec<(u64, f64)> {
        self.levels
            .iter()
            .map(|l| {
                let e = self
                    .rows
                    .iter()
                    .filter(|r| r.level == l.level)
                    .map(|r| r.error)
                    .fold(0.0, f64::max);
                (l.level, e)
            })
            .collect()
    }

    /// True when, element by element, the error does not grow with the level
    /// (up to `tol`).
    pub fn monotone(&self, tol: f64) -> bool {
        let w = self.target.len();
        (0..w).all(|i| {
            let errs: Vec<f64> = self
                .levels
                .iter()
                .enumerate()
                .map(|(l, _)| self.rows[l * w + i].error)
                .collect();
            errs.windows(2).all(|p| p[1] <= p[0] + tol)
        })
    }

    /// True when every non-central element has target and approximants
    /// within `tol` of zero.
    pub fn noncentral_vanish(&self, tol: f64) -> bool {
        self.rows
            .iter()
            .filter(|r| !r.central)
            .all(|r| r.target_re.hypot(r.target_im) <= tol && r.approx_re.hypot(r.approx_im) <= tol)
    }

    /// True when every error is within its certified bound (up to `tol`).
    pub fn within_bounds(&self, tol: f64) -> bool {
        self.rows.iter().all(|r| r.error <= r.bound + tol)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        write_error_csv(&self.rows, w)
    }
}

pub fn write_error_csv<W: Write>(rows: &[ErrorRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    out.flush()?;
    Ok(())
}

/// Bound on `|chi(z) - chi_k(z)|` at `g = (0, 0, a/2^e)`: coordinate `e` of
/// the depth-`n` approximant is within `2^{n-e} / (2k)` of that of `chi`, so
/// the error is at most `2 pi |a| 2^{n-e} / (2k)`. Off the center both sides
/// vanish.
fn error_bound(g: &DyadicHeisenberg, n: u32, k: u64) -> f64 {
    if !g.is_central() || g.z.is_zero() {
        return 0.0;
    }
    let e = g.z.exponent();
    if e > n {
        return 2.0;
    }
    let a = g.z.numerator().to_f64().unwrap_or(f64::INFINITY).abs();
    (std::f64::consts::TAU * a * 2f64.powi((n - e) as i32) / (2.0 * k as f64)).min(2.0)
}

fn target_value(chi: &SolenoidPoint, g: &DyadicHeisenberg) -> Result<Complex<f64>> {
    match chi {
        SolenoidPoint::Exact(p) => induced_trace_dyadic(g, InducingSubgroup::Center, p),
        SolenoidPoint::Truncated(t) => {
            if !(g.x.is_zero() && g.y.is_zero()) {
                return Ok(Complex::zero());
            }
            let z: &Dyadic = &g.z;
            let theta = t
                .coordinate(z.exponent() as usize)
                .ok_or_else(|| Error::TooDeep(g.to_string()))?;
            let a = z
                .numerator()
                .to_f64()
                .ok_or_else(|| Error::TooDeep(g.to_string()))?;
            Ok(turn::<f64>(a * theta))
        }
    }
}

/// Traces of the finite Heisenberg quotients approximating the trace induced
/// from the central character `chi`.
///
/// Level `N' = 1..=depth` uses `k = 2^{2N'+1} - 1`, the character
/// `chi_k = nearest_periodic(chi, N')` and the trace induced from the center
/// of `H3(Z/k)` pulled back along reduction mod `k`. A truncated `chi` is
/// treated as faithful.
pub fn nilpotent_trace_approx(
    chi: &SolenoidPoint,
    window: &[DyadicHeisenberg],
    depth: u32,
) -> Result<NilpotentApprox> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    if depth > MAX_DEPTH {
        return Err(Error::TooDeep(format!("depth {depth}")));
    }
    let label = chi.to_string();
    let target = TraceTable::from_fn(
        Provenance::CentralCharacter { chi: label.clone() },
        window,
        |g| target_value(chi, g),
    )?;
    let mut levels = Vec::new();
    let mut rows = Vec::new();
    for n in 1..=depth {
        let k = periodic_modulus(n).to_u64().expect("depth bounded");
        let chi_k = match nearest_periodic(chi, n)? {
            SolenoidPoint::Exact(p) => p,
            SolenoidPoint::Truncated(_) => unreachable!("periodic approximants are exact"),
        };
        let omega: RootOfUnity = chi_k.character(&Dyadic::int(1));
        let table = TraceTable::from_fn(
            Provenance::Induced {
                subgroup: InducingSubgroup::Center,
                character: chi_k.to_string(),
                level: Some(k),
            },
            window,
            |g| Ok(induced_trace_center_mod(&heisenberg_mod_k(g, k)?, &omega)),
        )?;
        for ((g, t), (_, a)) in target.entries().iter().zip(table.entries()) {
            rows.push(ErrorRow {
                depth: n,
                level: k,
                element: g.to_string(),
                central: g.is_central(),
                target_re: t.re,
                target_im: t.im,
                approx_re: a.re,
                approx_im: a.im,
                error: (t - a).norm(),
                bound: error_bound(g, n, k),
            });
        }
        levels.push(LevelTable {
            depth: n,
            level: k,
            chi: chi_k,
            table,
        });
    }
    Ok(NilpotentApprox {
        target,
        levels,
        rows,
    })
}
