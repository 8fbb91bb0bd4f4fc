use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hs_norm, normalized_trace};
use crate::scalar::{CMatrix, Real};

/// Slack on the inequalities checked by [`corner_trace_check`].
pub const CORNER_TOLERANCE: f64 = 1e-12;

/// Checks on one image `rho(g)` compressed to its leading `n x n` corner
/// `B = P rho(g) P`, against an `n`-dimensional image `A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CornerRow {
    /// `|tr_n(A) - tr_n(B)|`.
    pub trace_gap: f64,
    /// `||A - B||_2`; bounds `trace_gap` by Cauchy-Schwarz.
    pub hs_distance: f64,
    /// `|tr_m(rho) - (n/m) tr_n(B) - ((m-n)/m) tr_{m-n}(D)|` with `D` the
    /// complementary corner; zero up to rounding.
    pub identity_residual: f64,
    /// `|tr_n(B) - tr_m(rho)|`.
    pub corner_gap: f64,
    /// `2 (1 - n/m)`.
    pub corner_bound: f64,
}

impl CornerRow {
    pub fn passes(&self) -> bool {
        self.trace_gap <= self.hs_distance + CORNER_TOLERANCE
            && self.identity_residual <= CORNER_TOLERANCE
            && self.corner_gap <= self.corner_bound + CORNER_TOLERANCE
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CornerReport {
    pub m: usize,
    pub n: usize,
    pub rows: Vec<CornerRow>,
}

impl CornerReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.passes()).count()
    }
}

fn tr<T: Real>(m: &CMatrix<T>) -> Complex<f64> {
    let t = normalized_trace(m);
    Complex::new(t.re.to_f64(), t.im.to_f64())
}

/// Compares normalized traces of `rho(g)` (size `m`), its `n`-corner and,
/// when given, `n`-dimensional images `approx` on the same window. Without
/// `approx` the corner itself is used.
pub fn corner_trace_check<T: Real>(
    rho: &[CMatrix<T>],
    approx: Option<&[CMatrix<T>]>,
    n: usize,
) -> Result<CornerReport> {
    let m = rho.first().map(|r| r.nrows()).unwrap_or(0);
    if n > m {
        return Err(Error::CornerTooLarge { n, m });
    }
    if n == 0 {
        return Err(Error::InvalidArgument(
            "corner dimension must be positive".into(),
        ));
    }
    if let Some(a) = approx {
        if a.len() != rho.len() || a.iter().any(|x| x.nrows() != n || x.ncols() != n) {
            return Err(Error::Dimension(
                "approximate images do not match the window".into(),
            ));
        }
    }
    let mut rows = Vec::with_capacity(rho.len());
    for (i, r) in rho.iter().enumerate() {
        if r.nrows() != m || r.ncols() != m {
            return Err(Error::Dimension("images of unequal dimension".into()));
        }
        let b = r.view((0, 0), (n, n)).into_owned();
        let a = approx.map(|a| a[i].clone()).unwrap_or_else(|| b.clone());
        let t_rho = tr(r);
        let t_b = tr(&b);
        let rest = if n < m {
            tr(&r.view((n, n), (m - n, m - n)).into_owned())
        } else {
            Complex::new(0.0, 0.0)
        };
        let ratio = n as f64 / m as f64;
        rows.push(CornerRow {
            trace_gap: (tr(&a) - t_b).norm(),
            hs_distance: hs_norm(&(a - &b))?.to_f64(),
            identity_residual: (t_rho - t_b * ratio - rest * (1.0 - ratio)).norm(),
            corner_gap: (t_b - t_rho).norm(),
            corner_bound: 2.0 * (1.0 - ratio),
        });
    }
    Ok(CornerReport { m, n, rows })
}
