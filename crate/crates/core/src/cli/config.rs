use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::arith::Dyadic;
use crate::error::{Error, Result};
use crate::measures::FiniteMeasure;
use crate::solenoid::{SolenoidPair, SolenoidPoint};
use crate::tracelab::{default_coordinates, DEFAULT_M_MAX};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::Subcommand)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Periodic approximation of solenoid points and the orbit-sum bound.
    ApproxPoint,
    /// Densification of an invariant measure by periodic-orbit measures.
    Densify,
    /// Finite-quotient approximation of a trace on the Heisenberg group.
    Nilpotent,
    /// Block representations of the semidirect product and their traces.
    Semidirect,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::ApproxPoint => "approx-point",
            Self::Densify => "densify",
            Self::Nilpotent => "nilpotent",
            Self::Semidirect => "semidirect",
        }
    }

    fn default_range(&self) -> (u32, u32) {
        match self {
            Self::ApproxPoint => (1, 10),
            Self::Densify => (2, 10),
            Self::Nilpotent => (1, 3),
            Self::Semidirect => (1, 3),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WindowSpec {
    /// Heisenberg coordinates; the window is their cube.
    pub coordinates: Vec<Dyadic>,
    /// Largest `|m|` for semidirect windows.
    pub m_max: i64,
}

impl Default for WindowSpec {
    fn default() -> Self {
        Self {
            coordinates: default_coordinates(),
            m_max: DEFAULT_M_MAX,
        }
    }
}

/// A run, as read from `--config`; command-line flags override fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    /// `N` range: approximation depth, or block count for `semidirect`.
    pub n_min: Option<u32>,
    pub n_max: Option<u32>,
    /// Odd levels `k` (`semidirect`), or levels `2^{2N+1} - 1` to report
    /// (`nilpotent`).
    pub levels: Vec<u64>,
    pub window: WindowSpec,
    pub tolerance: f64,
    pub seed: u64,
    /// Random points drawn by `approx-point` when `points` is empty.
    pub samples: usize,
    /// Denominators of random points are below `2^bits`.
    pub bits: u32,
    pub points: Vec<SolenoidPoint>,
    /// Scales the certified bound of `approx-point`; below 1 it is a
    /// self-test that must report failures.
    pub bound_multiplier: f64,
    pub measure: Option<FiniteMeasure>,
    /// Central character for `nilpotent`.
    pub chi: Option<SolenoidPoint>,
    /// `semidirect` uses the central character `chi_numerator / k`.
    pub chi_numerator: i64,
    /// Spectrum point for `semidirect`, in scaled coordinates.
    pub spectrum: Option<SolenoidPair>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            n_min: None,
            n_max: None,
            levels: Vec::new(),
            window: WindowSpec::default(),
            tolerance: 1e-10,
            seed: 0,
            samples: 100,
            bits: 24,
            points: Vec::new(),
            bound_multiplier: 1.0,
            measure: None,
            chi: None,
            chi_numerator: 1,
            spectrum: None,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn n_range(&self, command: Command) -> (u32, u32) {
        let (a, b) = command.default_range();
        (self.n_min.unwrap_or(a), self.n_max.unwrap_or(b))
    }

    pub fn validate(&self, command: Command) -> Result<()> {
        let (lo, hi) = self.n_range(command);
        if lo == 0 || lo > hi {
            return Err(Error::Config(format!(
                "N range {lo}..={hi} is empty or starts at 0"
            )));
        }
        if let Some(k) = self.levels.iter().find(|k| **k % 2 == 0) {
            return Err(Error::Config(format!("level {k} is even")));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        if !(self.bound_multiplier > 0.0 && self.bound_multiplier.is_finite()) {
            return Err(Error::Config("bound multiplier must be positive".into()));
        }
        if self.window.m_max < 0 || self.window.coordinates.is_empty() {
            return Err(Error::Config("window must be non-empty".into()));
        }
        if command == Command::ApproxPoint
            && self.points.is_empty()
            && (self.samples == 0 || self.bits < 2)
        {
            return Err(Error::Config("no points to sample".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let c = RunConfig {
            command: Some(Command::Densify),
            levels: vec![3, 5],
            ..Default::default()
        };
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"command\":\"densify\""));
        assert_eq!(RunConfig::from_json(&s).unwrap(), c);
    }

    #[test]
    fn partial_documents_use_defaults() {
        let c = RunConfig::from_json(r#"{"seed": 7, "points": [{"num": 1, "den": 3}]}"#).unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.points.len(), 1);
        assert_eq!(c.tolerance, 1e-10);
        assert!(RunConfig::from_json(r#"{"sede": 7}"#).is_err());
    }

    #[test]
    fn validation() {
        let c = RunConfig {
            levels: vec![4],
            ..Default::default()
        };
        assert!(matches!(
            c.validate(Command::Semidirect),
            Err(Error::Config(_))
        ));
        let c = RunConfig {
            n_min: Some(0),
            ..Default::default()
        };
        assert!(c.validate(Command::ApproxPoint).is_err());
        let c = RunConfig {
            tolerance: -1.0,
            ..Default::default()
        };
        assert!(c.validate(Command::Densify).is_err());
        assert!(RunConfig::default().validate(Command::Nilpotent).is_ok());
    }
}
