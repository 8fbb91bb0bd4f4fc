use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{order_of_two, Dyadic, OddModulus, RootOfUnity};
use crate::error::{Error, Result};

/// Consistency tolerance for truncated coordinate prefixes.
pub const PREFIX_TOLERANCE: f64 = 1e-9;

/// A torsion point of the dyadic solenoid, given by its zeroth angle `j / d`
/// with `d` odd. Coordinate `n` is `j * 2^{-n} mod d` over `d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ExactRepr", into = "ExactRepr")]
pub struct ExactPoint {
    num: BigUint,
    den: BigUint,
}

#[derive(Serialize, Deserialize)]
struct ExactRepr {
    #[serde(with = "crate::bignum")]
    num: BigUint,
    #[serde(with = "crate::bignum")]
    den: BigUint,
}

impl TryFrom<ExactRepr> for ExactPoint {
    type Error = Error;
    fn try_from(r: ExactRepr) -> Result<Self> {
        ExactPoint::new(r.num, r.den)
    }
}

impl From<ExactPoint> for ExactRepr {
    fn from(p: ExactPoint) -> Self {
        ExactRepr {
            num: p.num,
            den: p.den,
        }
    }
}

impl ExactPoint {
    /// The point with zeroth angle `num / den`; `den` must be odd.
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() || den.is_even() {
            return Err(Error::InvalidPoint(format!("denominator {den} is not odd")));
        }
        Ok(Self::reduced(num.into() % &den, den))
    }

    pub fn from_signed(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidPoint("zero denominator".into()));
        }
        Self::new(num.rem_euclid(den as i64) as u64, den)
    }

    pub(crate) fn reduced(num: BigUint, den: BigUint) -> Self {
        let g = num.gcd(&den);
        if g.is_zero() || g.is_one() {
            return Self { num, den };
        }
        Self {
            num: num / &g,
            den: den / &g,
        }
    }

    pub fn identity() -> Self {
        Self {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn is_identity(&self) -> bool {
        self.num.is_zero()
    }

    fn modulus(&self) -> OddModulus {
        OddModulus::from_biguint(self.den.clone()).expect("denominator is odd")
    }

    /// Numerator of coordinate `n` over the common denominator.
    pub fn coordinate_numerator(&self, n: u64) -> BigUint {
        (&self.num * self.modulus().inv_pow2(n)) % &self.den
    }

    pub fn coordinate(&self, n: u64) -> BigRational {
        BigRational::new(self.coordinate_numerator(n).into(), self.den.clone().into())
    }

    pub fn coordinate_f64(&self, n: u64) -> f64 {
        self.coordinate(n).to_f64().unwrap_or(f64::NAN)
    }

    pub fn forward(&self) -> Self {
        Self::reduced((&self.num << 1u32) % &self.den, self.den.clone())
    }

    pub fn backward(&self) -> Self {
        Self::reduced(
            (&self.num * self.modulus().half()) % &self.den,
            self.den.clone(),
        )
    }

    /// Applies the forward shift `i` times (backward for negative `i`).
    pub fn shift(&self, i: i64) -> Self {
        let m = self.modulus();
        let f = if i >= 0 {
            BigUint::from(2u32).modpow(&BigUint::from(i as u64), &self.den)
        } else {
            m.inv_pow2(i.unsigned_abs())
        };
        Self::reduced((&self.num * f) % &self.den, self.den.clone())
    }

    /// True iff the forward shift has period dividing `n`, i.e. `d | 2^n - 1`.
    pub fn is_periodic(&self, n: u64) -> bool {
        let two_n = BigUint::from(2u32).modpow(&BigUint::from(n), &self.den);
        (two_n + &self.den - 1u32) % &self.den == BigUint::zero()
    }

    /// Least period, if it is at most `limit`.
    pub fn min_period(&self, limit: u64) -> Option<u64> {
        order_of_two(&self.den, limit)
    }

    /// Value of the character on `t`, as an exact root of unity.
    pub fn character(&self, t: &Dyadic) -> RootOfUnity {
        let m = self.modulus();
        let a = m.reduce(t.numerator());
        let idx = (a * self.coordinate_numerator(t.exponent() as u64)) % &self.den;
        RootOfUnity::new(idx, self.den.clone()).expect("denominator is positive")
    }

    /// Coordinatewise `k`-th power: the restriction to `k Z[1/2]` read in
    /// scaled coordinates.
    pub fn pow(&self, k: &BigInt) -> Self {
        let m = self.modulus();
        Self::reduced((&self.num * m.reduce(k)) % &self.den, self.den.clone())
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A finite coordinate prefix `theta_0 .. theta_K` of an arbitrary point;
/// coordinates beyond `K` are unknown.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "TruncatedRepr", into = "TruncatedRepr")]
pub struct TruncatedPoint {
    prefix: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct TruncatedRepr {
    prefix: Vec<f64>,
}

impl TryFrom<TruncatedRepr> for TruncatedPoint {
    type Error = Error;
    fn try_from(r: TruncatedRepr) -> Result<Self> {
        TruncatedPoint::new(r.prefix)
    }
}

impl From<TruncatedPoint> for TruncatedRepr {
    fn from(p: TruncatedPoint) -> Self {
        TruncatedRepr { prefix: p.prefix }
    }
}

pub(crate) fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

pub(crate) fn arc_f64(a: f64, b: f64) -> f64 {
    let t = frac(a - b);
    t.min(1.0 - t)
}

impl TruncatedPoint {
    pub fn new(prefix: Vec<f64>) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::InvalidPoint("empty prefix".into()));
        }
        if prefix
            .iter()
            .any(|t| !t.is_finite() || *t < 0.0 || *t >= 1.0)
        {
            return Err(Error::InvalidPoint("angles must lie in [0, 1)".into()));
        }
        for (n, w) in prefix.windows(2).enumerate() {
            if arc_f64(w[0], 2.0 * w[1]) > PREFIX_TOLERANCE {
                return Err(Error::InvalidPoint(format!(
                    "theta_{n} is not twice theta_{} modulo 1",
                    n + 1
                )));
            }
        }
        Ok(Self { prefix })
    }

    /// Builds the prefix ending at `theta_k` by repeated doubling.
    pub fn from_last(theta_k: f64, k: usize) -> Result<Self> {
        let mut prefix = vec![0.0; k + 1];
        prefix[k] = frac(theta_k);
        for n in (0..k).rev() {
            prefix[n] = frac(2.0 * prefix[n + 1]);
        }
        Self::new(prefix)
    }

    /// Index `K` of the last known coordinate.
    pub fn depth(&self) -> usize {
        self.prefix.len() - 1
    }

    pub fn prefix(&self) -> &[f64] {
        &self.prefix
    }

    pub fn coordinate(&self, n: usize) -> Option<f64> {
        self.prefix.get(n).copied()
    }

    /// Bound on the metric contribution of the unknown tail, `2^{-K-1}`.
    pub fn tail_bound(&self) -> f64 {
        0.5f64.powi(self.depth() as i32 + 1)
    }

    pub fn forward(&self) -> Self {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(frac(2.0 * self.prefix[0]));
        prefix.extend_from_slice(&self.prefix);
        Self { prefix }
    }

    pub fn backward(&self) -> Result<Self> {
        if self.prefix.len() < 2 {
            return Err(Error::PrefixExhausted);
        }
        Ok(Self {
            prefix: self.prefix[1..].to_vec(),
        })
    }
}

impl PartialEq for TruncatedPoint {
    fn eq(&self, other: &Self) -> bool {
        self.prefix.len() == other.prefix.len()
            && self
                .prefix
                .iter()
                .zip(&other.prefix)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl Eq for TruncatedPoint {}

impl Ord for TruncatedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.prefix.iter().zip(&other.prefix) {
            match a.total_cmp(b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.prefix.len().cmp(&other.prefix.len())
    }
}

impl PartialOrd for TruncatedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point of the dual group of `Z[1/2]`.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SolenoidPoint {
    Exact(ExactPoint),
    Truncated(TruncatedPoint),
}

impl SolenoidPoint {
    pub fn identity() -> Self {
        Self::Exact(ExactPoint::identity())
    }

    pub fn exact(num: i64, den: u64) -> Result<Self> {
        ExactPoint::from_signed(num, den).map(Self::Exact)
    }

    pub fn as_exact(&self) -> Option<&ExactPoint> {
        match self {
            Self::Exact(p) => Some(p),
            Self::Truncated(_) => None,
        }
    }

    /// Coordinate `n` as a float, when known.
    pub fn coordinate_f64(&self, n: usize) -> Option<f64> {
        match self {
            Self::Exact(p) => Some(p.coordinate_f64(n as u64)),
            Self::Truncated(t) => t.coordinate(n),
        }
    }

    /// Coordinate `n` as an exact rational (truncated floats are read exactly).
    pub fn coordinate_exact(&self, n: usize) -> Option<BigRational> {
        match self {
            Self::Exact(p) => Some(p.coordinate(n as u64)),
            Self::Truncated(t) => t.coordinate(n).and_then(BigRational::from_float),
        }
    }

    /// Last known coordinate index; `None` for exact points.
    pub fn depth(&self) -> Option<usize> {
        match self {
            Self::Exact(_) => None,
            Self::Truncated(t) => Some(t.depth()),
        }
    }
}

impl fmt::Display for SolenoidPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(p) => write!(f, "{p}"),
            Self::Truncated(t) => write!(f, "trunc[K={}; {:.6}..]", t.depth(), t.prefix[0]),
        }
    }
}

impl From<ExactPoint> for SolenoidPoint {
    fn from(p: ExactPoint) -> Self {
        Self::Exact(p)
    }
}

/// A point of the product of two solenoids.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SolenoidPair {
    pub first: SolenoidPoint,
    pub second: SolenoidPoint,
}

impl SolenoidPair {
    pub fn new(first: SolenoidPoint, second: SolenoidPoint) -> Self {
        Self { first, second }
    }

    pub fn identity() -> Self {
        Self::new(SolenoidPoint::identity(), SolenoidPoint::identity())
    }
}

impl fmt::Display for SolenoidPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_points_are_reduced() {
        let p = ExactPoint::new(3u32, 9u32).unwrap();
        assert_eq!(p, ExactPoint::new(1u32, 3u32).unwrap());
        assert_eq!(ExactPoint::new(5u32, 5u32).unwrap(), ExactPoint::identity());
        assert!(ExactPoint::new(1u32, 4u32).is_err());
    }

    #[test]
    fn coordinates_square_to_previous() {
        let p = ExactPoint::new(4u32, 45u32).unwrap();
        for n in 0..20 {
            let prev = p.coordinate_numerator(n);
            let next = p.coordinate_numerator(n + 1);
            assert_eq!((next << 1u32) % p.denominator(), prev);
        }
    }

    #[test]
    fn truncated_validation() {
        assert!(TruncatedPoint::new(vec![0.5, 0.25, 0.125]).is_ok());
        assert!(TruncatedPoint::new(vec![0.5, 0.75]).is_ok());
        assert!(TruncatedPoint::new(vec![0.5, 0.3]).is_err());
        assert!(TruncatedPoint::new(vec![]).is_err());
        assert!(TruncatedPoint::new(vec![1.0]).is_err());
        let t = TruncatedPoint::from_last(0.123, 7).unwrap();
        assert_eq!(t.depth(), 7);
        assert_eq!(t.tail_bound(), 0.5f64.powi(8));
    }

    #[test]
    fn shifts() {
        let third = ExactPoint::new(1u32, 3u32).unwrap();
        let two_thirds = ExactPoint::new(2u32, 3u32).unwrap();
        assert_eq!(third.forward(), two_thirds);
        assert_eq!(third.backward(), two_thirds);
        assert_eq!(ExactPoint::identity().forward(), ExactPoint::identity());
        assert_eq!(
            third.shift(5),
            third.forward().forward().forward().forward().forward()
        );
        assert_eq!(third.shift(-3), third.backward().backward().backward());
        let t = TruncatedPoint::new(vec![0.5]).unwrap();
        assert_eq!(t.backward(), Err(Error::PrefixExhausted));
        assert_eq!(t.forward().depth(), 1);
    }

    #[test]
    fn character_values() {
        let p = ExactPoint::new(1u32, 3u32).unwrap();
        assert_eq!(
            p.character(&Dyadic::int(1)),
            RootOfUnity::new(1u32, 3u32).unwrap()
        );
        // chi(1/2)^2 = chi(1)
        let h = p.character(&"1/2".parse().unwrap());
        assert_eq!(&h * &h, p.character(&Dyadic::int(1)));
        assert!(p.character(&Dyadic::int(3)).is_one());
    }

    #[test]
    fn json_shapes() {
        let p = SolenoidPoint::exact(2, 3).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"num":2,"den":3}"#);
        let q: SolenoidPoint = serde_json::from_str(r#"{"num":"2","den":3}"#).unwrap();
        assert_eq!(p, q);
        let t: SolenoidPoint = serde_json::from_str(r#"{"prefix":[0.5,0.25]}"#).unwrap();
        assert_eq!(t.depth(), Some(1));
        assert!(serde_json::from_str::<SolenoidPoint>(r#"{"num":1,"den":2}"#).is_err());
    }
}
