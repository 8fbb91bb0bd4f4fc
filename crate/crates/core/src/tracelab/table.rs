use std::collections::HashMap;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::induced::InducingSubgroup;
use crate::arith::Dyadic;
use crate::error::{Error, Result};
use crate::linalg::normalized_trace;
use crate::repsynth::{
    DyadicHeisenberg, GroupElement, HeisenbergElement, SemidirectElement, SpectrumPoint, UnitaryRep,
};
use crate::scalar::Real;
use crate::solenoid::ExactPoint;

/// Largest `|m|` in the default semidirect window.
pub const DEFAULT_M_MAX: i64 = 2;

/// `{0, +-1, +-1/2, +-1/4}`.
pub fn default_coordinates() -> Vec<Dyadic> {
    let mut v = vec![Dyadic::int(0)];
    for e in 0..3 {
        let d = Dyadic::inv_pow2(e);
        v.push(-&d);
        v.push(d);
    }
    v
}

/// All `(x, y, z)` with coordinates drawn from `coords`.
pub fn heisenberg_window(coords: &[Dyadic]) -> Vec<DyadicHeisenberg> {
    let mut w = Vec::with_capacity(coords.len().pow(3));
    for x in coords {
        for y in coords {
            for z in coords {
                w.push(HeisenbergElement::new(x.clone(), y.clone(), z.clone()));
            }
        }
    }
    w
}

/// `heisenberg_window(coords) x {-m_max, .., m_max}`.
pub fn semidirect_window(coords: &[Dyadic], m_max: i64) -> Vec<SemidirectElement> {
    let base = heisenberg_window(coords);
    (-m_max..=m_max)
        .flat_map(|m| {
            base.iter()
                .map(move |g| SemidirectElement::new(g.clone(), m))
        })
        .collect()
}

/// Where the values of a [`TraceTable`] came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    CentralCharacter {
        chi: String,
    },
    Induced {
        subgroup: InducingSubgroup,
        character: String,
        level: Option<u64>,
    },
    TrivialExtension {
        level: u64,
        blocks: usize,
    },
    Representation {
        dimension: usize,
    },
}

/// Values of a trace on a finite window.
#[derive(Clone, Debug)]
pub struct TraceTable<G: GroupElement> {
    provenance: Provenance,
    entries: Vec<(G, Complex<f64>)>,
    index: HashMap<G, usize>,
}

/// Worst violations of the trace axioms visible on a window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableAudit {
    /// `|tau(e) - 1|`, when `e` is in the window.
    pub identity: Option<f64>,
    /// `max |tau(g^{-1}) - conj tau(g)|`.
    pub hermitian: f64,
    /// `max |tau(h g h^{-1}) - tau(g)|` over the given conjugators.
    pub conjugation: f64,
    /// `max (|tau(g)| - 1)`, clamped at zero.
    pub overshoot: f64,
}

impl TableAudit {
    pub fn passes(&self, tol: f64) -> bool {
        self.identity.unwrap_or(0.0) <= tol
            && self.hermitian <= tol
            && self.conjugation <= tol
            && self.overshoot <= tol
    }
}

impl<G: GroupElement> TraceTable<G> {
    pub fn from_values(provenance: Provenance, entries: Vec<(G, Complex<f64>)>) -> Self {
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, (g, _))| (g.clone(), i))
            .collect();
        Self {
            provenance,
            entries,
            index,
        }
    }

    pub fn from_fn(
        provenance: Provenance,
        window: &[G],
        tau: impl Fn(&G) -> Result<Complex<f64>>,
    ) -> Result<Self> {
        let entries = window
            .iter()
            .map(|g| Ok((g.clone(), tau(g)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_values(provenance, entries))
    }

    /// Normalized traces of a representation on the window.
    pub fn of_rep<T: Real>(rep: &UnitaryRep<G, T>, window: &[G]) -> Result<Self> {
        Self::from_fn(
            Provenance::Representation {
                dimension: rep.dimension(),
            },
            window,
            |g| {
                let t = normalized_trace(&rep.image(g)?);
                Ok(Complex::new(t.re.to_f64(), t.im.to_f64()))
            },
        )
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn entries(&self) -> &[(G, Complex<f64>)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value(&self, g: &G) -> Option<Complex<f64>> {
        self.index.get(g).map(|&i| self.entries[i].1)
    }

    pub fn audit(&self, conjugators: &[G]) -> TableAudit {
        let mut identity = None;
        let mut hermitian = 0.0f64;
        let mut conjugation = 0.0f64;
        let mut overshoot = 0.0f64;
        for (g, t) in &self.entries {
            if g.is_identity() {
                identity = Some((t - Complex::<f64>::one()).norm());
            }
            overshoot = overshoot.max(t.norm() - 1.0);
            if let Some(s) = self.value(&g.inverse()) {
                hermitian = hermitian.max((s - t.conj()).norm());
            }
            for h in conjugators {
                if let Some(s) = self.value(&g.conjugate_by(h)) {
                    conjugation = conjugation.max((s - t).norm());
                }
            }
        }
        TableAudit {
            identity,
            hermitian,
            conjugation,
            overshoot,
        }
    }
}

/// Per-element comparison of a table against a representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchRow {
    pub element: String,
    pub expected: [f64; 2],
    pub actual: [f64; 2],
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    pub rows: Vec<MatchRow>,
    pub max_error: f64,
}

/// `|tau(g) - tr(rep(g))|` for every window element.
pub fn trace_match<G: GroupElement, T: Real>(
    table: &TraceTable<G>,
    rep: &UnitaryRep<G, T>,
) -> Result<MatchReport> {
    let mut rows = Vec::with_capacity(table.len());
    let mut max_error = 0.0f64;
    for (g, t) in table.entries() {
        let img = rep.image(g).map_err(|_| Error::Coverage(g.to_string()))?;
        let a = normalized_trace(&img);
        let a = Complex::new(a.re.to_f64(), a.im.to_f64());
        let error = (a - t).norm();
        max_error = max_error.max(error);
        rows.push(MatchRow {
            element: g.to_string(),
            expected: [t.re, t.im],
            actual: [a.re, a.im],
            error,
        });
    }
    Ok(MatchReport { rows, max_error })
}

/// The extension of the fiber trace by zero off `m = 0`:
/// `[m = 0] [x, y in k Z[1/2]] chi(z) (1/n) sum_{i<n} psi1(2^i x) psi2(2^{-i} y)`.
///
/// It agrees with the normalized trace of the block representation on
/// `n` blocks for `|m| < n`.
pub fn trivial_extension(
    chi: &ExactPoint,
    spectrum: &SpectrumPoint,
    n: usize,
    e: &SemidirectElement,
) -> Complex<f64> {
    if e.m != 0 || n == 0 {
        return Complex::zero();
    }
    let g = &e.g;
    let mut sum = Complex::zero();
    for i in 0..n as i64 {
        let x = g.x.scale_pow2(i);
        let y = g.y.scale_pow2(-i);
        match (spectrum.restricted(0, &x), spectrum.restricted(1, &y)) {
            (Some(a), Some(b)) => sum += (&a * &b).value::<f64>(),
            _ => return Complex::zero(),
        }
    }
    chi.character(&g.z).value::<f64>() * sum / n as f64
}
