use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{hs_norm, unitarity_residual};
use crate::repsynth::{Cocycle, DyadicPair, GroupElement, UnitaryRep};
use crate::scalar::{CMatrix, Real};

/// Tolerance on the unitarity of approximate-representation images.
pub const APPROX_UNITARY_TOLERANCE: f64 = 1e-8;

/// A map from a finite window of group elements to unitaries.
#[derive(Clone, Debug)]
pub struct ApproxRep<G: GroupElement, T: Real = f64> {
    dimension: usize,
    images: HashMap<G, CMatrix<T>>,
}

impl<G: GroupElement, T: Real> ApproxRep<G, T> {
    pub fn new(
        dimension: usize,
        images: impl IntoIterator<Item = (G, CMatrix<T>)>,
    ) -> Result<Self> {
        let images: HashMap<_, _> = images.into_iter().collect();
        for (g, m) in &images {
            if m.nrows() != dimension || m.ncols() != dimension {
                return Err(Error::Dimension(format!("image of {g} has the wrong size")));
            }
            let r = unitarity_residual(m).to_f64();
            if r > APPROX_UNITARY_TOLERANCE {
                return Err(Error::InvalidArgument(format!(
                    "image of {g} is not unitary (residual {r:e})"
                )));
            }
        }
        Ok(Self { dimension, images })
    }

    /// Restriction of a representation to a window.
    pub fn from_rep(rep: &UnitaryRep<G, T>, window: &[G]) -> Result<Self> {
        let images = window
            .iter()
            .map(|g| Ok((g.clone(), rep.image(g)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rep.dimension(), images)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn image(&self, g: &G) -> Option<&CMatrix<T>> {
        self.images.get(g)
    }

    /// Applies `f` to every image (e.g. a perturbation or a conjugation).
    pub fn map_images(&self, mut f: impl FnMut(&G, &CMatrix<T>) -> CMatrix<T>) -> Result<Self> {
        Self::new(
            self.dimension,
            self.images.iter().map(|(g, m)| (g.clone(), f(g, m))),
        )
    }
}

/// `max ||phi(g1 g2) - phi(g1) phi(g2)||_2` over the pairs.
pub fn defect<G: GroupElement, T: Real>(rep: &ApproxRep<G, T>, pairs: &[(G, G)]) -> Result<f64> {
    pairs.iter().try_fold(0.0f64, |m, (a, b)| {
        let get = |g: &G| {
            rep.image(g)
                .ok_or_else(|| Error::Unresolvable(g.to_string()))
        };
        let ab = a.mul(b);
        let d = hs_norm(&(get(&ab)? - get(a)? * get(b)?))?;
        Ok(m.max(d.to_f64()))
    })
}

/// [`defect`] through the evaluator of a genuine representation.
pub fn rep_defect<G: GroupElement, T: Real>(
    rep: &UnitaryRep<G, T>,
    pairs: &[(G, G)],
) -> Result<f64> {
    pairs.iter().try_fold(0.0f64, |m, (a, b)| {
        let d = hs_norm(&(rep.image(&a.mul(b))? - rep.image(a)? * rep.image(b)?))?;
        Ok(m.max(d.to_f64()))
    })
}

/// `max ||u_g u_h - sigma(g, h) u_{g+h}||_2` for a `sigma`-representation.
pub fn twisted_defect<T: Real>(
    rep: &UnitaryRep<DyadicPair, T>,
    sigma: &Cocycle,
    pairs: &[(DyadicPair, DyadicPair)],
) -> Result<f64> {
    pairs.iter().try_fold(0.0f64, |m, (g, h)| {
        let s = sigma.eval(g, h).value::<T>();
        let d = hs_norm(&(rep.image(g)? * rep.image(h)? - rep.image(&g.add(h))? * s))?;
        Ok(m.max(d.to_f64()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{OddModulus, RootOfUnity};
    use crate::linalg::random_unitary;
    use crate::repsynth::{enumerate_mod_k, heisenberg_rep};
    use num_complex::Complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup() -> (
        ApproxRep<crate::repsynth::ModHeisenberg>,
        Vec<(
            crate::repsynth::ModHeisenberg,
            crate::repsynth::ModHeisenberg,
        )>,
    ) {
        let k = OddModulus::new(3).unwrap();
        let rep = heisenberg_rep::<f64>(3, &RootOfUnity::from_signed(1, 3).unwrap()).unwrap();
        let all = enumerate_mod_k(&k);
        let pairs = all
            .iter()
            .flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        (ApproxRep::from_rep(&rep, &all).unwrap(), pairs)
    }

    #[test]
    fn exact_rep_has_zero_defect() {
        let (a, pairs) = setup();
        assert!(defect(&a, &pairs).unwrap() < 1e-12);
    }

    #[test]
    fn phase_perturbation_grows_continuously() {
        // oracle: with phi(g) = e^{i eps s(g)} pi(g), the defect is
        // max |e^{i eps (s(ab) - s(a) - s(b))} - 1|
        let (a, pairs) = setup();
        let s = |g: &crate::repsynth::ModHeisenberg| {
            use num_traits::ToPrimitive;
            g.x.value().to_f64().unwrap() + 0.5 * g.z.value().to_f64().unwrap()
        };
        let mut last = 0.0;
        for eps in [0.0, 1e-6, 1e-3, 1e-1] {
            let p = a
                .map_images(|g, m| m * Complex::from_polar(1.0, eps * s(g)))
                .unwrap();
            let d = defect(&p, &pairs).unwrap();
            let expect = pairs
                .iter()
                .map(|(x, y)| {
                    (Complex::from_polar(1.0, eps * (s(&x.mul(y)) - s(x) - s(y))) - 1.0).norm()
                })
                .fold(0.0, f64::max);
            assert!((d - expect).abs() < 1e-12, "eps={eps}");
            assert!(d >= last);
            last = d;
        }
    }

    #[test]
    fn conjugation_invariance() {
        let (a, pairs) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let w = random_unitary(&mut rng, 3);
        let p = a
            .map_images(|g, m| m * Complex::from_polar(1.0, 1e-2 * g.y.value().bits() as f64))
            .unwrap();
        let q = p.map_images(|_, m| &w * m * w.adjoint()).unwrap();
        assert!((defect(&p, &pairs).unwrap() - defect(&q, &pairs).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn missing_product_is_unresolvable() {
        let k = OddModulus::new(3).unwrap();
        let g = crate::repsynth::HeisenbergElement::from_u64(1, 0, 0, &k);
        let a = ApproxRep::new(3, [(g.clone(), crate::linalg::identity::<f64>(3))]).unwrap();
        assert!(matches!(
            defect(&a, &[(g.clone(), g)]),
            Err(Error::Unresolvable(_))
        ));
    }
}
