use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element `numerator / 2^exponent` of the ring of dyadic rationals.
///
/// Always stored in canonical form: either `exponent == 0` or the numerator is
/// odd. Equality and hashing are therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        Self::canonical(num.into(), exp)
    }

    pub fn int(n: i64) -> Self {
        Self {
            num: BigInt::from(n),
            exp: 0,
        }
    }

    /// `1 / 2^n`.
    pub fn inv_pow2(n: u32) -> Self {
        Self {
            num: BigInt::one(),
            exp: n,
        }
    }

    fn canonical(mut num: BigInt, mut exp: u32) -> Self {
        if num.is_zero() {
            return Self { num, exp: 0 };
        }
        if exp > 0 {
            let tz = num.trailing_zeros().unwrap_or(0).min(exp as u64) as u32;
            if tz > 0 {
                num >>= tz;
                exp -= tz;
            }
        }
        Self { num, exp }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    /// `self / 2`.
    pub fn half(&self) -> Self {
        Self::canonical(self.num.clone(), self.exp + 1)
    }

    /// `self * 2^k` for signed `k`.
    pub fn scale_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            let k = k as u32;
            if k <= self.exp {
                Self::canonical(self.num.clone(), self.exp - k)
            } else {
                Self::canonical(&self.num << (k - self.exp), 0)
            }
        } else {
            Self::canonical(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Multiplies by an integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        Self::canonical(&self.num * k, self.exp)
    }

    /// Lifts both values to the common exponent and returns the numerators.
    pub(crate) fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        (
            &self.num << (e - self.exp),
            &other.num << (e - other.exp),
            e,
        )
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::int(0)
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::canonical(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::canonical(a - b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::canonical(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

/// Accepts `a`, `a/b` with `b` a power of two, and `a/2^n`.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseDyadic(s.to_string());
        let s = s.trim();
        let Some((n, d)) = s.split_once('/') else {
            return BigInt::from_str(s)
                .map(|n| Dyadic::new(n, 0))
                .map_err(|_| bad());
        };
        let num = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = d.trim();
        let exp = if let Some(p) = d.strip_prefix("2^") {
            p.parse::<u32>().map_err(|_| bad())?
        } else {
            let den = BigInt::from_str(d).map_err(|_| bad())?;
            if !den.is_positive() || !(&den & (&den - 1u32)).is_zero() {
                return Err(bad());
            }
            den.trailing_zeros().unwrap_or(0) as u32
        };
        Ok(Dyadic::new(num, exp))
    }
}

/// Serialized as a string such as `"3/4"`; integers are also accepted.
impl serde::Serialize for Dyadic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Dyadic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(Dyadic::int(n)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Odd part of a nonzero integer together with its 2-adic valuation.
pub(crate) fn split_odd(n: &BigInt) -> (BigInt, u64) {
    let tz = n.trailing_zeros().unwrap_or(0);
    (n >> tz, tz)
}
