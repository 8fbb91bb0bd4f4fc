use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{to_f64, unitarity_residual};
use crate::scalar::{CMatrix, Real};

#[derive(Clone, Debug)]
pub struct Generator<T: Real> {
    pub label: String,
    pub matrix: CMatrix<T>,
}

type Evaluator<G, T> = Arc<dyn Fn(&G) -> Result<CMatrix<T>> + Send + Sync>;

/// A unitary (possibly projective) representation: images of declared
/// generators plus an evaluator on arbitrary group elements.
#[derive(Clone)]
pub struct UnitaryRep<G, T: Real = f64> {
    dimension: usize,
    generators: Vec<Generator<T>>,
    eval: Evaluator<G, T>,
}

impl<G, T: Real> fmt::Debug for UnitaryRep<G, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnitaryRep")
            .field("dimension", &self.dimension)
            .field(
                "generators",
                &self
                    .generators
                    .iter()
                    .map(|g| g.label.as_str())
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl<G, T: Real> UnitaryRep<G, T> {
    pub fn new(
        dimension: usize,
        generators: Vec<Generator<T>>,
        eval: impl Fn(&G) -> Result<CMatrix<T>> + Send + Sync + 'static,
    ) -> Self {
        Self {
            dimension,
            generators,
            eval: Arc::new(eval),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generators(&self) -> &[Generator<T>] {
        &self.generators
    }

    pub fn generator(&self, label: &str) -> Option<&CMatrix<T>> {
        self.generators
            .iter()
            .find(|g| g.label == label)
            .map(|g| &g.matrix)
    }

    pub fn image(&self, g: &G) -> Result<CMatrix<T>> {
        let m = (self.eval)(g)?;
        if m.nrows() != self.dimension || m.ncols() != self.dimension {
            return Err(Error::Dimension(format!(
                "image is {}x{}, expected {}",
                m.nrows(),
                m.ncols(),
                self.dimension
            )));
        }
        Ok(m)
    }

    /// `max ||U* U - I||_2` over generator images.
    pub fn unitarity_residual(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| unitarity_residual(&g.matrix).to_f64())
            .fold(0.0, f64::max)
    }

    pub fn export(&self) -> RepJson {
        RepJson {
            dimension: self.dimension,
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorJson {
                    label: g.label.clone(),
                    matrix: to_f64(&g.matrix.transpose())
                        .iter()
                        .map(|z| [z.re, z.im])
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.export()).expect("representation serializes")
    }
}

/// `{dimension, generators: [{label, matrix: [[re, im], ...]}]}`, matrices
/// flattened row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepJson {
    pub dimension: usize,
    pub generators: Vec<GeneratorJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub label: String,
    pub matrix: Vec<[f64; 2]>,
}

impl RepJson {
    pub fn matrix(&self, label: &str) -> Option<CMatrix<f64>> {
        let g = self.generators.iter().find(|g| g.label == label)?;
        let n = self.dimension;
        (g.matrix.len() == n * n).then(|| {
            CMatrix::from_row_iterator(
                n,
                n,
                g.matrix
                    .iter()
                    .map(|p| num_complex::Complex::new(p[0], p[1])),
            )
        })
    }
}
