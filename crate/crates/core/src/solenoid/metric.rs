use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::point::{ExactPoint, SolenoidPoint};

/// Number of coordinates summed exactly before bounding the tail.
pub const DEFAULT_DEPTH: u64 = 128;

/// Joint periods up to this length are summed in closed form.
pub const EXACT_PERIOD_LIMIT: u64 = 256;

/// A certified enclosure `lower <= rho(a, b) <= upper`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoBound {
    pub lower: BigRational,
    pub upper: BigRational,
}

impl RhoBound {
    fn exact(v: BigRational) -> Self {
        Self {
            lower: v.clone(),
            upper: v,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn upper_f64(&self) -> f64 {
        self.upper.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn lower_f64(&self) -> f64 {
        self.lower.to_f64().unwrap_or(0.0)
    }
}

fn pow2(n: u64) -> BigInt {
    BigInt::one() << n
}

/// Exact arc distance `min(|x - y|, 1 - |x - y|)` for angles in `[0, 1)`.
pub fn arc_distance(x: &BigRational, y: &BigRational) -> BigRational {
    let one = BigRational::one();
    let mut t = x - y;
    if t < BigRational::zero() {
        t += &one;
    }
    let s = &one - &t;
    if s < t {
        s
    } else {
        t
    }
}

/// Integer numerators `r_n` with `d(a_n, b_n) = r_n / L`, `L = lcm(d_a, d_b)`.
struct ArcNumerators {
    l: BigUint,
    xa: BigUint,
    xb: BigUint,
    ha: BigUint,
    hb: BigUint,
    da: BigUint,
    db: BigUint,
    sa: BigUint,
    sb: BigUint,
}

impl ArcNumerators {
    fn new(a: &ExactPoint, b: &ExactPoint) -> Self {
        let da = a.denominator().clone();
        let db = b.denominator().clone();
        let l = da.lcm(&db);
        Self {
            sa: &l / &da,
            sb: &l / &db,
            ha: (&da + 1u32) >> 1,
            hb: (&db + 1u32) >> 1,
            xa: a.numerator().clone(),
            xb: b.numerator().clone(),
            l,
            da,
            db,
        }
    }

    fn next(&mut self) -> BigUint {
        let a = &self.xa * &self.sa;
        let b = &self.xb * &self.sb;
        let diff = if a >= b { a - b } else { b - a };
        let other = &self.l - &diff;
        self.xa = (&self.xa * &self.ha) % &self.da;
        self.xb = (&self.xb * &self.hb) % &self.db;
        diff.min(other)
    }
}

/// u64 fast path of [`ArcNumerators`] for `L < 2^63`.
struct ArcNumerators64 {
    l: u64,
    xa: u64,
    xb: u64,
    ha: u64,
    hb: u64,
    da: u64,
    db: u64,
    sa: u64,
    sb: u64,
}

impl ArcNumerators64 {
    fn new(a: &ExactPoint, b: &ExactPoint) -> Option<Self> {
        let da = a.denominator().to_u64()?;
        let db = b.denominator().to_u64()?;
        let l = (da as u128).lcm(&(db as u128));
        if l >= 1 << 63 {
            return None;
        }
        let l = l as u64;
        Some(Self {
            l,
            xa: a.numerator().to_u64()?,
            xb: b.numerator().to_u64()?,
            ha: da.div_ceil(2),
            hb: db.div_ceil(2),
            da,
            db,
            sa: l / da,
            sb: l / db,
        })
    }

    fn next(&mut self) -> u64 {
        let a = self.xa as u128 * self.sa as u128;
        let b = self.xb as u128 * self.sb as u128;
        let diff = a.abs_diff(b) as u64;
        self.xa = ((self.xa as u128 * self.ha as u128) % self.da as u128) as u64;
        self.xb = ((self.xb as u128 * self.hb as u128) % self.db as u128) as u64;
        diff.min(self.l - diff)
    }
}

/// `sum_{n < terms} r_n 2^{terms-1-n}` together with `L`.
fn horner(a: &ExactPoint, b: &ExactPoint, terms: u64) -> (BigUint, BigUint) {
    let mut acc = BigUint::zero();
    if let Some(mut it) = ArcNumerators64::new(a, b) {
        for _ in 0..terms {
            acc = (acc << 1u32) + it.next();
        }
        return (acc, BigUint::from(it.l));
    }
    let mut it = ArcNumerators::new(a, b);
    for _ in 0..terms {
        acc = (acc << 1u32) + it.next();
    }
    (acc, it.l)
}

/// `rho` between exact points: in closed form when the joint coordinate
/// sequence has period at most [`EXACT_PERIOD_LIMIT`], otherwise summed to
/// `depth` coordinates with the tail bounded by `2^{-depth}`.
pub fn rho_exact_points(a: &ExactPoint, b: &ExactPoint, depth: u64) -> RhoBound {
    let l = a.denominator().lcm(b.denominator());
    if let Some(p) = crate::arith::order_of_two(&l, EXACT_PERIOD_LIMIT) {
        // periodic: rho = (sum_{n<p} 2^{-n} r_n / L) / (1 - 2^{-p}) = 2 I / (L (2^p - 1))
        let (i, l) = horner(a, b, p);
        let num = BigInt::from(i) * 2;
        let den = BigInt::from(l) * (pow2(p) - 1);
        return RhoBound::exact(BigRational::new(num, den));
    }
    let depth = depth.max(1);
    let (i, l) = horner(a, b, depth);
    let lower = BigRational::new(i.into(), BigInt::from(l) * pow2(depth - 1));
    let upper = &lower + BigRational::new(BigInt::one(), pow2(depth));
    RhoBound { lower, upper }
}

/// The metric `rho(a, b) = sum_n 2^{-n} d(a_n, b_n)` with `d` the arc distance
/// on the circle (range `[0, 1/2]`), returned as a certified enclosure.
pub fn rho(a: &SolenoidPoint, b: &SolenoidPoint) -> RhoBound {
    rho_with_depth(a, b, DEFAULT_DEPTH)
}

pub fn rho_with_depth(a: &SolenoidPoint, b: &SolenoidPoint, depth: u64) -> RhoBound {
    if let (SolenoidPoint::Exact(x), SolenoidPoint::Exact(y)) = (a, b) {
        return rho_exact_points(x, y, depth);
    }
    let k = a
        .depth()
        .unwrap_or(usize::MAX)
        .min(b.depth().unwrap_or(usize::MAX));
    let mut lower = BigRational::zero();
    for n in 0..=k {
        let x = a.coordinate_exact(n).expect("coordinate within depth");
        let y = b.coordinate_exact(n).expect("coordinate within depth");
        lower += arc_distance(&x, &y) / BigRational::from_integer(pow2(n as u64));
    }
    // unknown coordinates contribute at most sum_{n > K} 2^{-n} / 2
    let upper = &lower + BigRational::new(BigInt::one(), pow2(k as u64 + 1));
    RhoBound { lower, upper }
}

/// Convenience float value: the certified upper bound.
pub fn rho_f64(a: &SolenoidPoint, b: &SolenoidPoint) -> f64 {
    rho(a, b).upper_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solenoid::TruncatedPoint;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(n: i64, d: u64) -> SolenoidPoint {
        SolenoidPoint::exact(n, d).unwrap()
    }

    /// Summation oracle: partial sums of the defining series with exact
    /// coordinates, tail bounded by 2^{-M}.
    fn series_oracle(a: &ExactPoint, b: &ExactPoint, m: u64) -> (BigRational, BigRational) {
        let mut s = BigRational::zero();
        for n in 0..m {
            let d = arc_distance(&a.coordinate(n), &b.coordinate(n));
            s += d / BigRational::from_integer(pow2(n));
        }
        let t = &s + BigRational::new(BigInt::one(), pow2(m));
        (s, t)
    }

    #[test]
    fn identity_to_two_thirds_closed_form() {
        // coordinates of 2/3 alternate 2/3, 1/3, ...; every arc distance is 1/3,
        // so rho = (1/3) * sum 2^{-n} = 2/3.
        let r = rho(&SolenoidPoint::identity(), &p(2, 3));
        assert!(r.is_exact());
        assert_eq!(r.lower, q(2, 3));
        let a = ExactPoint::identity();
        let b = ExactPoint::new(2u32, 3u32).unwrap();
        let (lo, hi) = series_oracle(&a, &b, 60);
        assert!(lo <= r.lower && r.upper <= hi);
    }

    #[test]
    fn self_distance_is_zero() {
        for (n, d) in [(0, 1), (3, 7), (11, 45), (12345, 99999)] {
            let x = p(n, d);
            assert!(rho(&x, &x).upper <= BigRational::zero() || rho(&x, &x).lower.is_zero());
            assert!(rho(&x, &x).lower.is_zero());
        }
    }

    #[test]
    fn closed_form_matches_series() {
        let pairs = [((1, 7), (3, 31)), ((5, 9), (2, 15)), ((1, 127), (64, 127))];
        for ((a, b), (c, d)) in pairs {
            let x = ExactPoint::from_signed(a, b).unwrap();
            let y = ExactPoint::from_signed(c, d).unwrap();
            let r = rho_exact_points(&x, &y, DEFAULT_DEPTH);
            assert!(r.is_exact());
            let (lo, hi) = series_oracle(&x, &y, 200);
            assert!(lo <= r.lower && r.upper <= hi);
        }
    }

    #[test]
    fn long_period_enclosure_contains_series() {
        // 2 has order 1018 modulo 1019 * ... choose a prime with large order of 2
        let x = ExactPoint::from_signed(17, 1019).unwrap();
        let y = ExactPoint::from_signed(3, 7).unwrap();
        let r = rho_exact_points(&x, &y, 64);
        assert!(!r.is_exact());
        let (lo, hi) = series_oracle(&x, &y, 300);
        assert!(r.lower <= lo && hi <= r.upper);
    }

    #[test]
    fn coordinate_estimate_holds() {
        // d(a_k, b_k) <= 2 d(a_{k+1}, b_{k+1})
        let pts = [(1, 3), (4, 45), (77, 1023), (5, 11), (100, 257)];
        for &(a, b) in &pts {
            for &(c, d) in &pts {
                let x = ExactPoint::from_signed(a, b).unwrap();
                let y = ExactPoint::from_signed(c, d).unwrap();
                for k in 0..30 {
                    let lhs = arc_distance(&x.coordinate(k), &y.coordinate(k));
                    let rhs = arc_distance(&x.coordinate(k + 1), &y.coordinate(k + 1))
                        * BigRational::from_integer(2.into());
                    assert!(lhs <= rhs);
                }
            }
        }
    }

    #[test]
    fn truncated_interval() {
        let t = TruncatedPoint::from_last(0.3, 5).unwrap();
        let a = SolenoidPoint::Truncated(t.clone());
        let r = rho(&a, &a);
        assert!(r.lower.is_zero());
        assert_eq!(r.upper, q(1, 64));
        let b = SolenoidPoint::identity();
        let r = rho(&a, &b);
        assert!(r.upper > r.lower);
        assert!(&r.upper - &r.lower <= q(1, 32));
    }
}
