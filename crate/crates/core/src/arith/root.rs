use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{turn, Cx, Real};

/// The root of unity `e^{2 pi i j / m}`, kept with `j / m` in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RootOfUnity {
    index: BigUint,
    order: BigUint,
}

impl RootOfUnity {
    pub fn new(index: impl Into<BigUint>, order: impl Into<BigUint>) -> Result<Self> {
        let order = order.into();
        if order.is_zero() {
            return Err(Error::ZeroOrder);
        }
        Ok(Self::reduced(index.into() % &order, order))
    }

    /// Signed index, reduced modulo the order.
    pub fn from_signed(index: i64, order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Self::new(index.rem_euclid(order as i64) as u64, order)
    }

    pub fn one() -> Self {
        Self {
            index: BigUint::zero(),
            order: BigUint::one(),
        }
    }

    fn reduced(index: BigUint, order: BigUint) -> Self {
        let g = index.gcd(&order);
        if g.is_zero() || g.is_one() {
            return Self { index, order };
        }
        Self {
            index: index / &g,
            order: order / &g,
        }
    }

    pub fn index(&self) -> &BigUint {
        &self.index
    }

    /// Exact multiplicative order.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn is_one(&self) -> bool {
        self.index.is_zero()
    }

    /// Angle `j / m` in turns, in `[0, 1)`.
    pub fn angle(&self) -> BigRational {
        BigRational::new(self.index.clone().into(), self.order.clone().into())
    }

    pub fn angle_f64(&self) -> f64 {
        self.angle().to_f64().unwrap_or(f64::NAN)
    }

    pub fn pow(&self, e: i64) -> Self {
        let m = &self.order;
        let e_abs = BigUint::from(e.unsigned_abs()) % m;
        let idx = (&self.index * e_abs) % m;
        let idx = if e < 0 && !idx.is_zero() {
            m - idx
        } else {
            idx
        };
        Self::reduced(idx, m.clone())
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        Self::reduced((&self.index * e) % &self.order, self.order.clone())
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    pub fn value<T: Real>(&self) -> Cx<T> {
        turn(self.angle_f64())
    }

    /// True when the order divides `k`.
    pub fn order_divides(&self, k: &BigUint) -> bool {
        (k % &self.order).is_zero()
    }
}

impl Mul for &RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: &RootOfUnity) -> RootOfUnity {
        let l = self.order.lcm(&rhs.order);
        let a = &self.index * (&l / &self.order);
        let b = &rhs.index * (&l / &rhs.order);
        RootOfUnity::reduced((a + b) % &l, l)
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        &self * &rhs
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2pi i {}/{})", self.index, self.order)
    }
}
