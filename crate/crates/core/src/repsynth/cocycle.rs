use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::group::DyadicPair;
use crate::arith::{split_odd, Dyadic, OddModulus, RootOfUnity};
use crate::error::{Error, Result};
use crate::solenoid::{shift_backward, shift_forward, ExactPoint, SolenoidPoint};

/// `sigma_chi(g, h) = chi(g_1 h_2 - g_2 h_1)` on `Z[1/2]^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    chi: ExactPoint,
}

impl Cocycle {
    pub fn new(chi: &SolenoidPoint) -> Result<Self> {
        let chi = chi
            .as_exact()
            .ok_or_else(|| Error::InvalidPoint("cocycle needs an exact character".into()))?;
        Ok(Self { chi: chi.clone() })
    }

    /// The character `t -> zeta^{pi_k(t)}` determined by `zeta = chi(1)`.
    pub fn from_phase(zeta: &RootOfUnity) -> Self {
        Self {
            chi: ExactPoint::new(zeta.index().clone(), zeta.order().clone()).expect("odd order"),
        }
    }

    pub fn character(&self) -> &ExactPoint {
        &self.chi
    }

    pub fn eval(&self, g: &DyadicPair, h: &DyadicPair) -> RootOfUnity {
        self.chi.character(&g.symplectic(h))
    }
}

/// A point of the spectrum at level `k`: two characters of `k Z[1/2]`, each
/// read in scaled coordinates (`psi(k t) = p(t)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub first: SolenoidPoint,
    pub second: SolenoidPoint,
    pub level: u64,
}

fn exact(p: &SolenoidPoint) -> Result<&ExactPoint> {
    p.as_exact()
        .ok_or_else(|| Error::InvalidPoint("spectrum characters must be exact".into()))
}

/// A character `q` of `Z[1/2]` with `q(k t) = p(t)`: `j k^{-1} / d` when
/// `k` is prime to `d`, else `j / (k d)`.
fn lift(p: &ExactPoint, k: &BigUint) -> ExactPoint {
    let d = p.denominator();
    let g = k.gcd(d);
    if g.is_one() {
        let di = BigInt::from(d.clone());
        let inv = BigInt::from(k % d)
            .modinv(&di)
            .unwrap_or_else(BigInt::zero)
            .mod_floor(&di);
        ExactPoint::new(
            (p.numerator() * inv.to_biguint().expect("non-negative")) % d,
            d.clone(),
        )
        .expect("odd")
    } else {
        ExactPoint::new(p.numerator().clone(), d * k).expect("odd")
    }
}

impl SpectrumPoint {
    pub fn new(first: SolenoidPoint, second: SolenoidPoint, level: u64) -> Result<Self> {
        OddModulus::new(level)?;
        exact(&first)?;
        exact(&second)?;
        Ok(Self {
            first,
            second,
            level,
        })
    }

    pub fn trivial(level: u64) -> Result<Self> {
        Self::new(SolenoidPoint::identity(), SolenoidPoint::identity(), level)
    }

    /// Characters of `Z[1/2]` restricting to the pair on `k Z[1/2]`.
    pub fn lift(&self) -> (ExactPoint, ExactPoint) {
        let k = BigUint::from(self.level);
        (
            lift(exact(&self.first).expect("validated"), &k),
            lift(exact(&self.second).expect("validated"), &k),
        )
    }

    /// The dual action `alpha-hat x alpha-hat^{-1}` of `beta`.
    pub fn beta_hat(&self) -> Self {
        Self {
            first: shift_forward(&self.first),
            second: shift_backward(&self.second).expect("exact points shift"),
            level: self.level,
        }
    }

    /// Least `p <= limit` with `beta-hat^p` fixing the point.
    pub fn period(&self, limit: u64) -> Option<u64> {
        let a = exact(&self.first).ok()?.min_period(limit)?;
        let b = exact(&self.second).ok()?.min_period(limit)?;
        let l = a.lcm(&b);
        (l <= limit).then_some(l)
    }

    /// `psi_i(x)` for `x` in `k Z[1/2]`, `None` otherwise.
    pub fn restricted(&self, factor: usize, x: &Dyadic) -> Option<RootOfUnity> {
        let t = divide_by_level(x, self.level)?;
        let p = if factor == 0 {
            &self.first
        } else {
            &self.second
        };
        Some(exact(p).ok()?.character(&t))
    }
}

/// `x / k` when it lies in `Z[1/2]`.
pub fn divide_by_level(x: &Dyadic, k: u64) -> Option<Dyadic> {
    let (odd, twos) = split_odd(x.numerator());
    let k = BigInt::from(k);
    if x.is_zero() {
        return Some(Dyadic::int(0));
    }
    if !odd.is_multiple_of(&k) {
        return None;
    }
    Some(Dyadic::new(odd / k, 0).scale_pow2(twos as i64 - x.exponent() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn dp(a: &str, b: &str) -> DyadicPair {
        DyadicPair::new(d(a), d(b))
    }

    #[test]
    fn cocycle_identity_on_triples() {
        let s = Cocycle::new(&SolenoidPoint::exact(2, 9).unwrap()).unwrap();
        let els = [
            dp("1", "0"),
            dp("0", "1"),
            dp("1/2", "3/4"),
            dp("-5/8", "2"),
            dp("7", "-1/2"),
        ];
        for g in &els {
            for h in &els {
                assert!(s.eval(g, g).is_one());
                for l in &els {
                    let lhs = &s.eval(g, h) * &s.eval(&g.add(h), l);
                    let rhs = &s.eval(h, l) * &s.eval(g, &h.add(l));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn lifts_restrict_correctly() {
        for (j, dd, k) in [(1i64, 5u64, 3u64), (2, 9, 3), (4, 7, 7), (0, 1, 5)] {
            let s = SpectrumPoint::new(
                SolenoidPoint::exact(j, dd).unwrap(),
                SolenoidPoint::identity(),
                k,
            )
            .unwrap();
            let (q, _) = s.lift();
            for t in ["1", "1/2", "3/8", "-5/4"] {
                let kt = d(t).scale(&BigInt::from(k));
                assert_eq!(
                    q.character(&kt),
                    s.restricted(0, &kt).unwrap(),
                    "j={j} d={dd} k={k} t={t}"
                );
            }
        }
    }

    #[test]
    fn level_division() {
        assert_eq!(divide_by_level(&d("3/2"), 3), Some(d("1/2")));
        assert_eq!(divide_by_level(&d("6"), 3), Some(d("2")));
        assert_eq!(divide_by_level(&d("1/2"), 3), None);
        assert_eq!(divide_by_level(&d("0"), 5), Some(d("0")));
    }

    #[test]
    fn beta_hat_period() {
        let s = SpectrumPoint::new(
            SolenoidPoint::exact(1, 3).unwrap(),
            SolenoidPoint::exact(1, 7).unwrap(),
            3,
        )
        .unwrap();
        assert_eq!(s.period(64), Some(6));
        let mut t = s.clone();
        for _ in 0..6 {
            t = t.beta_hat();
        }
        assert_eq!(t, s);
        assert_eq!(SpectrumPoint::trivial(5).unwrap().period(1), Some(1));
    }
}
