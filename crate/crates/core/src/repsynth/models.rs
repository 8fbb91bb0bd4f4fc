use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::cocycle::{Cocycle, SpectrumPoint};
use super::group::{DyadicHeisenberg, DyadicPair, HeisenbergElement, ModHeisenberg};
use super::rep::{Generator, UnitaryRep};
use crate::arith::{pi_k, Dyadic, OddModulus, Residue, RootOfUnity};
use crate::error::{Error, Result};
use crate::scalar::{CMatrix, Cx, Real};
use crate::solenoid::{ExactPoint, SolenoidPoint};

/// Default depth of dyadic-root generators.
pub const DEFAULT_N_MAX: u32 = 6;

/// `phase * S^b * diag(zeta^{a j})`, i.e. `e_j -> phase zeta^{a j} e_{j+b}`.
pub fn monomial<T: Real>(
    k: usize,
    b: usize,
    zeta: &RootOfUnity,
    a: u64,
    phase: &RootOfUnity,
) -> CMatrix<T> {
    let mut m = DMatrix::from_element(k, k, Cx::zero());
    let step = zeta.pow_big(&BigUint::from(a));
    let mut w = phase.clone();
    for j in 0..k {
        m[((j + b) % k, j)] = w.value();
        w = &w * &step;
    }
    m
}

fn residue_u64(r: &Residue) -> u64 {
    r.value().to_u64().expect("small level")
}

fn check_phase(zeta: &RootOfUnity, k: u64) -> Result<()> {
    if !zeta.order_divides(&BigUint::from(k)) {
        return Err(Error::PhaseOrder {
            order: zeta.order().to_string(),
            k,
        });
    }
    Ok(())
}

/// The `k`-dimensional model of `H3(Z/kZ)`:
/// `pi(x, y, z) = omega^z S^y C^x` with `C = diag(omega^j)`.
pub fn heisenberg_rep<T: Real>(
    k: u64,
    omega: &RootOfUnity,
) -> Result<UnitaryRep<ModHeisenberg, T>> {
    let m = OddModulus::new(k)?;
    check_phase(omega, k)?;
    let n = k as usize;
    let om = omega.clone();
    let km = m.clone();
    let eval = move |g: &ModHeisenberg| -> Result<CMatrix<T>> {
        if g.x.modulus() != &km || g.y.modulus() != &km || g.z.modulus() != &km {
            return Err(Error::InvalidArgument(format!(
                "element {g} is not over Z/{km}"
            )));
        }
        let phase = om.pow_big(g.z.value());
        Ok(monomial(
            n,
            residue_u64(&g.y) as usize,
            &om,
            residue_u64(&g.x),
            &phase,
        ))
    };
    let gens = [("x", (1, 0, 0)), ("y", (0, 1, 0)), ("z", (0, 0, 1))]
        .into_iter()
        .map(|(l, (x, y, z))| {
            Ok(Generator {
                label: l.to_string(),
                matrix: eval(&HeisenbergElement::from_u64(x, y, z, &m))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UnitaryRep::new(n, gens, eval))
}

/// Generators `(1/2^j, 0)` and `(0, 1/2^j)`, `j <= n_max`, of `Z[1/2]^2`.
pub fn plane_generators(n_max: u32) -> Vec<(String, DyadicPair)> {
    let mut out = Vec::new();
    for j in 0..=n_max {
        let t = Dyadic::inv_pow2(j);
        out.push((
            format!("a[{t}]"),
            DyadicPair::new(t.clone(), Dyadic::int(0)),
        ));
        out.push((format!("b[{t}]"), DyadicPair::new(Dyadic::int(0), t)));
    }
    out
}

/// Generators `(1/2^j, 0, 0)`, `(0, 1/2^j, 0)`, `j <= n_max`, and `(0, 0, 1)`.
pub fn heisenberg_generators(n_max: u32) -> Vec<(String, DyadicHeisenberg)> {
    let zero = Dyadic::int(0);
    let mut out = Vec::new();
    for j in 0..=n_max {
        let t = Dyadic::inv_pow2(j);
        out.push((
            format!("x[{t}]"),
            HeisenbergElement::new(t.clone(), zero.clone(), zero.clone()),
        ));
        out.push((
            format!("y[{t}]"),
            HeisenbergElement::new(zero.clone(), t, zero.clone()),
        ));
    }
    out.push(("z".to_string(), DyadicHeisenberg::ints(0, 0, 1)));
    out
}

fn validate_level(k: u64, spectrum: &SpectrumPoint) -> Result<OddModulus> {
    let m = OddModulus::new(k)?;
    if spectrum.level != k {
        return Err(Error::InvalidArgument(format!(
            "spectrum level {} differs from {k}",
            spectrum.level
        )));
    }
    Ok(m)
}

/// The irreducible `sigma_chi`-representation of `Z[1/2]^2` at level `k`,
/// `chi(t) = zeta^{pi_k(t)}`:
///
/// `u_(a, b) = q1(a) q2(b) chi(ab) S^{pi_k(b)} D^{pi_k(a)}`, `D = diag(chi(2)^j)`,
///
/// with `(q1, q2)` lifting the spectrum point. Then
/// `u_g u_h = sigma_chi(g, h) u_{g+h}`.
pub fn clock_shift_rep<T: Real>(
    k: u64,
    zeta: &RootOfUnity,
    spectrum: &SpectrumPoint,
    n_max: u32,
) -> Result<UnitaryRep<DyadicPair, T>> {
    let m = validate_level(k, spectrum)?;
    check_phase(zeta, k)?;
    let chi = Cocycle::from_phase(zeta).character().clone();
    let (q1, q2) = spectrum.lift();
    let zeta2 = zeta.pow(2);
    let n = k as usize;
    let eval = move |g: &DyadicPair| -> Result<CMatrix<T>> {
        let phase = &(&q1.character(&g.a) * &q2.character(&g.b)) * &chi.character(&(&g.a * &g.b));
        let a = residue_u64(&pi_k(&g.a, &m));
        let b = residue_u64(&pi_k(&g.b, &m));
        Ok(monomial(n, b as usize, &zeta2, a, &phase))
    };
    let gens = plane_generators(n_max)
        .into_iter()
        .map(|(label, g)| {
            Ok(Generator {
                label,
                matrix: eval(&g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UnitaryRep::new(n, gens, eval))
}

/// The central character `chi` given as an exact point, checked to factor
/// through `Z/kZ`; returns `zeta = chi(1)`.
pub fn level_phase(chi: &SolenoidPoint, k: u64) -> Result<RootOfUnity> {
    let p = chi
        .as_exact()
        .ok_or_else(|| Error::InvalidPoint("central character must be exact".into()))?;
    let zeta = p.character(&Dyadic::int(1));
    check_phase(&zeta, k)?;
    Ok(zeta)
}

/// The fiber representation of `H3(Z[1/2])` over the spectrum point `I`:
/// `pi_I(x, y, z) = q1(x) q2(y) chi(z) S^{pi_k(y)} C^{pi_k(x)}`,
/// `C = diag(zeta^j)`, `zeta = chi(1)`.
pub fn fiber_rep<T: Real>(
    k: u64,
    zeta: &RootOfUnity,
    spectrum: &SpectrumPoint,
    n_max: u32,
) -> Result<UnitaryRep<DyadicHeisenberg, T>> {
    let m = validate_level(k, spectrum)?;
    check_phase(zeta, k)?;
    let chi = Cocycle::from_phase(zeta).character().clone();
    let (q1, q2) = spectrum.lift();
    let z = zeta.clone();
    let n = k as usize;
    let eval = move |g: &DyadicHeisenberg| -> Result<CMatrix<T>> {
        let phase = &(&q1.character(&g.x) * &q2.character(&g.y)) * &chi.character(&g.z);
        let a = residue_u64(&pi_k(&g.x, &m));
        let b = residue_u64(&pi_k(&g.y, &m));
        Ok(monomial(n, b as usize, &z, a, &phase))
    };
    let gens = heisenberg_generators(n_max)
        .into_iter()
        .map(|(label, g)| {
            Ok(Generator {
                label,
                matrix: eval(&g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UnitaryRep::new(n, gens, eval))
}

/// The character of `Z[1/2]` as an exact point with angle `zeta`.
pub fn phase_point(zeta: &RootOfUnity) -> ExactPoint {
    ExactPoint::new(zeta.index().clone(), zeta.order().clone()).expect("odd order")
}

/// True when `zeta` has order exactly `k` (`k = 1` included).
pub fn is_primitive(zeta: &RootOfUnity, k: u64) -> bool {
    *zeta.order() == BigUint::from(k) || (k == 1 && zeta.index().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hs_norm, identity, normalized_trace};
    use crate::repsynth::group::{enumerate_mod_k, GroupElement};

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn heisenberg_rep_k3_exhaustive() {
        let k = OddModulus::new(3).unwrap();
        let w = RootOfUnity::from_signed(1, 3).unwrap();
        let rep = heisenberg_rep::<f64>(3, &w).unwrap();
        let all = enumerate_mod_k(&k);
        assert!(
            hs_norm(
                &(rep.image(&HeisenbergElement::identity_mod(&k)).unwrap() - identity::<f64>(3))
            )
            .unwrap()
                < 1e-15
        );
        assert!(
            normalized_trace(
                &rep.image(&HeisenbergElement::from_u64(1, 0, 0, &k))
                    .unwrap()
            )
            .norm()
                < 1e-15
        );
        for a in &all {
            let ia = rep.image(a).unwrap();
            for b in &all {
                let lhs = rep.image(&a.mul(b)).unwrap();
                let rhs = &ia * rep.image(b).unwrap();
                assert!(hs_norm(&(lhs - rhs)).unwrap() < 1e-12);
            }
            // trace vanishes off the center, equals omega^z on it
            let t = normalized_trace(&ia);
            let expect = if a.is_central() {
                w.pow_big(a.z.value()).value::<f64>()
            } else {
                Cx::zero()
            };
            assert!((t - expect).norm() < 1e-12);
        }
        assert!(rep.unitarity_residual() < 1e-15);
    }

    #[test]
    fn rejects_bad_levels() {
        let w = RootOfUnity::from_signed(1, 3).unwrap();
        assert!(matches!(
            heisenberg_rep::<f64>(4, &w),
            Err(Error::EvenModulus(_))
        ));
        assert!(matches!(
            heisenberg_rep::<f64>(5, &w),
            Err(Error::PhaseOrder { .. })
        ));
    }

    #[test]
    fn clock_shift_k1_is_a_character() {
        let s = SpectrumPoint::new(
            SolenoidPoint::exact(1, 5).unwrap(),
            SolenoidPoint::identity(),
            1,
        )
        .unwrap();
        let rep = clock_shift_rep::<f64>(1, &RootOfUnity::one(), &s, 3).unwrap();
        assert_eq!(rep.dimension(), 1);
        let u = rep.image(&DyadicPair::new(d("1"), d("0"))).unwrap();
        assert!(
            (u[(0, 0)] - RootOfUnity::from_signed(1, 5).unwrap().value::<f64>()).norm() < 1e-15
        );
    }

    #[test]
    fn clock_shift_commutator_and_roots() {
        let z = RootOfUnity::from_signed(1, 3).unwrap();
        let rep = clock_shift_rep::<f64>(3, &z, &SpectrumPoint::trivial(3).unwrap(), 4).unwrap();
        let u10 = rep.generator("a[1]").unwrap();
        let u01 = rep.generator("b[1]").unwrap();
        // u_(0,1) u_(1,0) = chi(-2) u_(1,0) u_(0,1)
        let c = z.pow(-2).value::<f64>();
        assert!(hs_norm(&(u01 * u10 - u10 * u01 * c)).unwrap() < 1e-12);
        let half = rep.generator("a[1/2]").unwrap();
        assert!(hs_norm(&(half * half - u10)).unwrap() < 1e-12);
        let quarter = rep.generator("b[1/4]").unwrap();
        assert!(hs_norm(&(quarter * quarter - rep.generator("b[1/2]").unwrap())).unwrap() < 1e-12);
    }

    #[test]
    fn fiber_rep_is_multiplicative() {
        let z = RootOfUnity::from_signed(2, 5).unwrap();
        let s = SpectrumPoint::new(
            SolenoidPoint::exact(1, 3).unwrap(),
            SolenoidPoint::exact(4, 7).unwrap(),
            5,
        )
        .unwrap();
        let rep = fiber_rep::<f64>(5, &z, &s, 3).unwrap();
        let els: Vec<DyadicHeisenberg> = ["1/2", "3", "-1/4", "0"]
            .iter()
            .flat_map(|a| {
                ["1", "-3/8"]
                    .iter()
                    .map(move |b| HeisenbergElement::new(d(a), d(b), d("5/2")))
            })
            .collect();
        for a in &els {
            for b in &els {
                let lhs = rep.image(&a.mul(b)).unwrap();
                let rhs = rep.image(a).unwrap() * rep.image(b).unwrap();
                assert!(hs_norm(&(lhs - rhs)).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn json_export_roundtrip() {
        let w = RootOfUnity::from_signed(1, 3).unwrap();
        let rep = heisenberg_rep::<f64>(3, &w).unwrap();
        let j: crate::repsynth::RepJson = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(j.dimension, 3);
        assert_eq!(j.generators.len(), 3);
        assert_eq!(j.generators[1].matrix.len(), 9);
        let y = j.matrix("y").unwrap();
        assert!(hs_norm(&(y - rep.generator("y").unwrap())).unwrap() < 1e-15);
        // row-major: entry (1, 0) of the shift is the fourth number
        assert_eq!(j.generators[1].matrix[3], [1.0, 0.0]);
    }
}
