use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solenoid::{SolenoidPair, SolenoidPoint};

/// Total-mass tolerance.
pub const MASS_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Solenoid,
    SolenoidSquare,
}

/// Where an atom sits: a point of the solenoid or of its square.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Point(SolenoidPoint),
    Pair(SolenoidPair),
}

impl Location {
    pub fn space(&self) -> Space {
        match self {
            Location::Point(_) => Space::Solenoid,
            Location::Pair(_) => Space::SolenoidSquare,
        }
    }

    /// The `i`-th factor (0 for a single point).
    pub fn factor(&self, i: usize) -> Option<&SolenoidPoint> {
        match (self, i) {
            (Location::Point(p), 0) => Some(p),
            (Location::Pair(p), 0) => Some(&p.first),
            (Location::Pair(p), 1) => Some(&p.second),
            _ => None,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Point(p) => write!(f, "{p}"),
            Location::Pair(p) => write!(f, "{p}"),
        }
    }
}

impl From<SolenoidPoint> for Location {
    fn from(p: SolenoidPoint) -> Self {
        Location::Point(p)
    }
}

impl From<SolenoidPair> for Location {
    fn from(p: SolenoidPair) -> Self {
        Location::Pair(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    #[serde(flatten)]
    pub location: Location,
    pub weight: f64,
}

/// A finitely supported probability measure. Atoms are kept sorted by
/// location with duplicates merged, so equality is structural.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureRepr")]
pub struct FiniteMeasure {
    space: Space,
    atoms: Vec<Atom>,
}

#[derive(Deserialize)]
struct MeasureRepr {
    space: Space,
    atoms: Vec<Atom>,
}

impl TryFrom<MeasureRepr> for FiniteMeasure {
    type Error = Error;
    fn try_from(r: MeasureRepr) -> Result<Self> {
        FiniteMeasure::new(r.space, r.atoms)
    }
}

impl FiniteMeasure {
    pub fn new(space: Space, atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::BadMass(0.0));
        }
        for a in &atoms {
            if a.location.space() != space {
                return Err(Error::SpaceMismatch(
                    "atom does not live on the tagged space",
                ));
            }
            if !(a.weight >= 0.0) || !a.weight.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "weight {} is not a non-negative real",
                    a.weight
                )));
            }
        }
        let mass: f64 = atoms.iter().map(|a| a.weight).sum();
        if (mass - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::BadMass(mass));
        }
        Ok(Self::normalized(space, atoms))
    }

    /// Builds from weighted locations without mass validation.
    pub(crate) fn normalized(space: Space, mut atoms: Vec<Atom>) -> Self {
        atoms.sort_by(|a, b| a.location.cmp(&b.location));
        let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match out.last_mut() {
                Some(last) if last.location == a.location => last.weight += a.weight,
                _ => out.push(a),
            }
        }
        out.retain(|a| a.weight > 0.0);
        Self { space, atoms: out }
    }

    pub fn dirac(location: impl Into<Location>) -> Self {
        let location = location.into();
        Self {
            space: location.space(),
            atoms: vec![Atom {
                location,
                weight: 1.0,
            }],
        }
    }

    /// Convex combination `sum_i c_i mu_i`.
    pub fn mixture(parts: &[(f64, &FiniteMeasure)]) -> Result<Self> {
        let space = parts.first().ok_or(Error::BadMass(0.0))?.1.space;
        let mut atoms = Vec::new();
        for (c, m) in parts {
            if m.space != space {
                return Err(Error::SpaceMismatch("mixture components"));
            }
            atoms.extend(m.atoms.iter().map(|a| Atom {
                location: a.location.clone(),
                weight: c * a.weight,
            }));
        }
        Self::new(space, atoms)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Same support, weights equal within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.space == other.space
            && self.atoms.len() == other.atoms.len()
            && self
                .atoms
                .iter()
                .zip(&other.atoms)
                .all(|(a, b)| a.location == b.location && (a.weight - b.weight).abs() <= tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("measure serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(n: i64, d: u64) -> Location {
        Location::Point(SolenoidPoint::exact(n, d).unwrap())
    }

    #[test]
    fn merges_and_sorts() {
        let m = FiniteMeasure::new(
            Space::Solenoid,
            vec![
                Atom {
                    location: pt(2, 3),
                    weight: 0.25,
                },
                Atom {
                    location: pt(1, 3),
                    weight: 0.5,
                },
                Atom {
                    location: pt(2, 3),
                    weight: 0.25,
                },
            ],
        )
        .unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert_eq!(m.atoms()[0].location, pt(1, 3));
        assert_eq!(m.atoms()[1].weight, 0.5);
    }

    #[test]
    fn rejects_bad_mass_and_space() {
        let e = FiniteMeasure::new(
            Space::Solenoid,
            vec![Atom {
                location: pt(1, 3),
                weight: 0.5,
            }],
        );
        assert!(matches!(e, Err(Error::BadMass(_))));
        let pair = Location::Pair(SolenoidPair::identity());
        let e = FiniteMeasure::new(
            Space::Solenoid,
            vec![Atom {
                location: pair,
                weight: 1.0,
            }],
        );
        assert!(matches!(e, Err(Error::SpaceMismatch(_))));
    }

    #[test]
    fn json_shape() {
        let m = FiniteMeasure::dirac(pt(2, 3));
        let v: serde_json::Value = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(v["space"], "solenoid");
        assert_eq!(v["atoms"][0]["point"]["num"], 2);
        assert_eq!(v["atoms"][0]["point"]["den"], 3);
        assert_eq!(v["atoms"][0]["weight"], 1.0);
        let back = FiniteMeasure::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);

        let p = FiniteMeasure::dirac(SolenoidPair::identity());
        let v: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(v["space"], "solenoid_square");
        assert_eq!(v["atoms"][0]["pair"]["first"]["den"], 1);
        assert_eq!(FiniteMeasure::from_json(&p.to_json()).unwrap(), p);
    }
}
