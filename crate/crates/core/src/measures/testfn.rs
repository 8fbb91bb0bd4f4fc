use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::measure::{Location, Space};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trig {
    Cos,
    Sin,
}

/// `cos(2 pi h theta_n)` or `sin(2 pi h theta_n)` of factor `factor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoordFn {
    pub trig: Trig,
    pub factor: usize,
    pub coord: u32,
    pub harmonic: u32,
}

impl CoordFn {
    pub fn cos(coord: u32, harmonic: u32) -> Self {
        Self {
            trig: Trig::Cos,
            factor: 0,
            coord,
            harmonic,
        }
    }

    pub fn sin(coord: u32, harmonic: u32) -> Self {
        Self {
            trig: Trig::Sin,
            factor: 0,
            coord,
            harmonic,
        }
    }

    pub fn on(mut self, factor: usize) -> Self {
        self.factor = factor;
        self
    }

    /// `2 pi h 2^n`: `|theta_n(a) - theta_n(b)|_arc <= 2^n rho(a, b)`.
    pub fn lipschitz(&self) -> f64 {
        TAU * self.harmonic as f64 * (1u64 << self.coord) as f64
    }

    pub fn eval(&self, x: &Location) -> Result<f64> {
        let p = x
            .factor(self.factor)
            .ok_or(Error::SpaceMismatch("test function factor"))?;
        let theta = p
            .coordinate_f64(self.coord as usize)
            .ok_or(Error::InsufficientPrecision {
                needed: self.coord as usize,
                available: p.depth().unwrap_or(0),
            })?;
        let a = TAU * self.harmonic as f64 * theta;
        Ok(match self.trig {
            Trig::Cos => a.cos(),
            Trig::Sin => a.sin(),
        })
    }
}

impl fmt::Display for CoordFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.trig {
            Trig::Cos => "cos",
            Trig::Sin => "sin",
        };
        write!(f, "{t}{}[{}]@{}", self.harmonic, self.coord, self.factor)
    }
}

/// A coordinate harmonic or a product of two.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    factors: Vec<CoordFn>,
}

impl TestFunction {
    pub fn single(f: CoordFn) -> Self {
        Self { factors: vec![f] }
    }

    pub fn product(f: CoordFn, g: CoordFn) -> Self {
        Self {
            factors: vec![f, g],
        }
    }

    pub fn factors(&self) -> &[CoordFn] {
        &self.factors
    }

    /// Factors are bounded by 1, so `Lip(fg) <= Lip(f) + Lip(g)`.
    pub fn lipschitz(&self) -> f64 {
        self.factors.iter().map(CoordFn::lipschitz).sum()
    }

    pub fn space(&self) -> Space {
        if self.factors.iter().any(|f| f.factor > 0) {
            Space::SolenoidSquare
        } else {
            Space::Solenoid
        }
    }

    pub fn eval(&self, x: &Location) -> Result<f64> {
        self.factors
            .iter()
            .try_fold(1.0, |acc, f| Ok(acc * f.eval(x)?))
    }

    pub fn label(&self) -> String {
        self.factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Coordinates `0..=4`, harmonics `1..=3`, cosine and sine, on each factor;
/// on the square also the products `cos*cos` and `sin*sin` of matching
/// coordinates `0..=2` across factors.
pub fn default_family(space: Space) -> Vec<TestFunction> {
    let factors = match space {
        Space::Solenoid => 1,
        Space::SolenoidSquare => 2,
    };
    let mut out = Vec::new();
    for factor in 0..factors {
        for coord in 0..=4 {
            for harmonic in 1..=3 {
                out.push(TestFunction::single(
                    CoordFn::cos(coord, harmonic).on(factor),
                ));
                out.push(TestFunction::single(
                    CoordFn::sin(coord, harmonic).on(factor),
                ));
            }
        }
    }
    if factors == 2 {
        for coord in 0..=2 {
            out.push(TestFunction::product(
                CoordFn::cos(coord, 1),
                CoordFn::cos(coord, 1).on(1),
            ));
            out.push(TestFunction::product(
                CoordFn::sin(coord, 1),
                CoordFn::sin(coord, 1).on(1),
            ));
        }
    }
    out
}
