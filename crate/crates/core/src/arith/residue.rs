use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Dyadic;
use crate::error::{Error, Result};

/// A validated odd positive modulus.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct OddModulus(BigUint);

impl OddModulus {
    pub fn new(k: impl Into<BigInt>) -> Result<Self> {
        let k: BigInt = k.into();
        match k.to_biguint() {
            Some(u) if u.is_odd() => Ok(Self(u)),
            _ => Err(Error::EvenModulus(k.to_string())),
        }
    }

    pub fn from_biguint(k: BigUint) -> Result<Self> {
        Self::new(BigInt::from(k))
    }

    pub fn get(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// The inverse of 2, i.e. `(k + 1) / 2`.
    pub fn half(&self) -> BigUint {
        (&self.0 + 1u32) >> 1
    }

    /// `2^{-n} mod k`.
    pub fn inv_pow2(&self, n: u64) -> BigUint {
        self.half().modpow(&BigUint::from(n), &self.0)
    }

    pub fn reduce(&self, n: &BigInt) -> BigUint {
        let k = BigInt::from_biguint(Sign::Plus, self.0.clone());
        n.mod_floor(&k)
            .to_biguint()
            .expect("mod_floor is non-negative")
    }
}

impl fmt::Display for OddModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `Z / kZ` for odd `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Residue {
    value: BigUint,
    modulus: OddModulus,
}

impl Residue {
    pub fn new(value: impl Into<BigInt>, modulus: &OddModulus) -> Self {
        Self {
            value: modulus.reduce(&value.into()),
            modulus: modulus.clone(),
        }
    }

    pub fn zero(modulus: &OddModulus) -> Self {
        Self {
            value: BigUint::zero(),
            modulus: modulus.clone(),
        }
    }

    pub fn one(modulus: &OddModulus) -> Self {
        Self::new(1, modulus)
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &OddModulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Doubling, the automorphism `x -> x + x` of `Z/kZ`.
    pub fn double(&self) -> Self {
        self + self
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "residues with different moduli"
        );
    }
}

/// The unique `s` with `s + s = r`.
pub fn half_mod(r: &Residue) -> Residue {
    let m = r.modulus();
    Residue {
        value: (&r.value * m.half()) % m.get(),
        modulus: m.clone(),
    }
}

/// The ring homomorphism `Z[1/2] -> Z/kZ` sending 1 to 1.
pub fn pi_k(x: &Dyadic, k: &OddModulus) -> Residue {
    let n = k.reduce(x.numerator());
    Residue {
        value: (n * k.inv_pow2(x.exponent() as u64)) % k.get(),
        modulus: k.clone(),
    }
}

impl Add for &Residue {
    type Output = Residue;
    fn add(self, rhs: &Residue) -> Residue {
        self.check(rhs);
        let mut v = &self.value + &rhs.value;
        if &v >= self.modulus.get() {
            v -= self.modulus.get();
        }
        Residue {
            value: v,
            modulus: self.modulus.clone(),
        }
    }
}

impl Sub for &Residue {
    type Output = Residue;
    fn sub(self, rhs: &Residue) -> Residue {
        self.check(rhs);
        let v = if self.value >= rhs.value {
            &self.value - &rhs.value
        } else {
            &self.value + self.modulus.get() - &rhs.value
        };
        Residue {
            value: v,
            modulus: self.modulus.clone(),
        }
    }
}

impl Mul for &Residue {
    type Output = Residue;
    fn mul(self, rhs: &Residue) -> Residue {
        self.check(rhs);
        Residue {
            value: (&self.value * &rhs.value) % self.modulus.get(),
            modulus: self.modulus.clone(),
        }
    }
}

impl Neg for &Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::zero(&self.modulus) - self.clone()
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        &self + &rhs
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        &self - &rhs
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        &self * &rhs
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        -&self
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Multiplicative order of 2 modulo an odd `d`, if it is at most `limit`.
pub fn order_of_two(d: &BigUint, limit: u64) -> Option<u64> {
    if d.is_one() {
        return Some(1);
    }
    let two = BigUint::from(2u32);
    let mut x = two.clone() % d;
    for n in 1..=limit {
        if x.is_one() {
            return Some(n);
        }
        x = (x * &two) % d;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(k: i64) -> OddModulus {
        OddModulus::new(k).unwrap()
    }

    /// Brute-force `x` with `2^n x = a (mod k)`.
    fn brute_inverse(a: u64, n: u32, k: u64) -> u64 {
        (0..k).find(|x| (x << n) % k == a % k).unwrap()
    }

    #[test]
    fn pi_k_examples() {
        assert!(pi_k(&Dyadic::int(0), &m(3)).is_zero());
        assert_eq!(brute_inverse(1, 1, 3), 2);
        assert_eq!(
            pi_k(&"1/2".parse().unwrap(), &m(3)).value(),
            &BigUint::from(2u32)
        );
        assert_eq!(brute_inverse(1, 2, 5), 4);
        assert_eq!(
            pi_k(&"1/4".parse().unwrap(), &m(5)).value(),
            &BigUint::from(4u32)
        );
        assert_eq!(
            pi_k(&"-1/2".parse().unwrap(), &m(3)).value(),
            &BigUint::from(1u32)
        );
    }

    #[test]
    fn rejects_even_and_nonpositive() {
        assert!(OddModulus::new(4).is_err());
        assert!(OddModulus::new(0).is_err());
        assert!(OddModulus::new(-3).is_err());
        assert!(OddModulus::new(1).is_ok());
    }

    #[test]
    fn half_mod_examples() {
        assert!(half_mod(&Residue::zero(&m(3))).is_zero());
        assert_eq!(half_mod(&Residue::new(1, &m(3))), Residue::new(2, &m(3)));
        assert_eq!(half_mod(&Residue::new(1, &m(5))), Residue::new(3, &m(5)));
    }

    #[test]
    fn morefaithful_on_small_moduli() {
        for k in (1..40).step_by(2) {
            let km = m(k);
            for a in 1..k {
                for n in 0..6 {
                    assert!(
                        !pi_k(&Dyadic::new(a, n), &km).is_zero(),
                        "k={k} a={a} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn pi_k_matches_brute_force() {
        for k in [3u64, 5, 7, 9, 15, 21] {
            for a in -10i64..10 {
                for n in 0..5u32 {
                    let want = brute_inverse(a.rem_euclid(k as i64) as u64, n, k);
                    let got = pi_k(&Dyadic::new(a, n), &m(k as i64));
                    assert_eq!(got.value().to_u64().unwrap(), want, "k={k} a={a} n={n}");
                }
            }
        }
    }

    #[test]
    fn order_of_two_small() {
        assert_eq!(order_of_two(&BigUint::from(7u32), 100), Some(3));
        assert_eq!(order_of_two(&BigUint::from(127u32), 100), Some(7));
        assert_eq!(order_of_two(&BigUint::from(1u32), 1), Some(1));
        assert_eq!(order_of_two(&BigUint::from(23u32), 5), None);
    }
}
