use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::arith::{pi_k, Dyadic, OddModulus, Residue};
use crate::error::Result;

/// The coefficient rings used here: `Z[1/2]` and `Z/kZ`.
pub trait RingElem: Clone + Eq + Hash + fmt::Debug + fmt::Display {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// The zero of the same ring (same modulus).
    fn zero_like(&self) -> Self;
}

impl RingElem for Dyadic {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Dyadic::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Dyadic::int(0)
    }
}

impl RingElem for Residue {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Residue::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Residue::zero(self.modulus())
    }
}

/// Group elements with the operations needed by defects and traces.
pub trait GroupElement: Clone + Eq + Hash + fmt::Debug + fmt::Display {
    fn mul(&self, o: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn identity_like(&self) -> Self;
    fn is_identity(&self) -> bool;

    fn conjugate_by(&self, a: &Self) -> Self {
        a.mul(self).mul(&a.inverse())
    }
}

/// `(x, y, z)` with `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+xy')`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HeisenbergElement<R> {
    pub x: R,
    pub y: R,
    pub z: R,
}

pub type DyadicHeisenberg = HeisenbergElement<Dyadic>;
pub type ModHeisenberg = HeisenbergElement<Residue>;

impl<R: RingElem> HeisenbergElement<R> {
    pub fn new(x: R, y: R, z: R) -> Self {
        Self { x, y, z }
    }

    pub fn is_central(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl HeisenbergElement<Dyadic> {
    pub fn identity() -> Self {
        Self::ints(0, 0, 0)
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(Dyadic::int(x), Dyadic::int(y), Dyadic::int(z))
    }

    /// `beta^m (x, y, z) = (2^m x, 2^{-m} y, z)`.
    pub fn beta_pow(&self, m: i64) -> Self {
        Self::new(self.x.scale_pow2(m), self.y.scale_pow2(-m), self.z.clone())
    }
}

impl HeisenbergElement<Residue> {
    pub fn identity_mod(k: &OddModulus) -> Self {
        Self::new(Residue::zero(k), Residue::zero(k), Residue::zero(k))
    }

    pub fn from_u64(x: u64, y: u64, z: u64, k: &OddModulus) -> Self {
        Self::new(Residue::new(x, k), Residue::new(y, k), Residue::new(z, k))
    }
}

impl<R: RingElem> GroupElement for HeisenbergElement<R> {
    fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.x.add(&o.x),
            self.y.add(&o.y),
            self.z.add(&o.z).add(&self.x.mul(&o.y)),
        )
    }

    fn inverse(&self) -> Self {
        Self::new(
            self.x.neg(),
            self.y.neg(),
            self.x.mul(&self.y).add(&self.z.neg()),
        )
    }

    fn identity_like(&self) -> Self {
        let z = self.x.zero_like();
        Self::new(z.clone(), z.clone(), z)
    }

    fn is_identity(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl<R: fmt::Display> fmt::Display for HeisenbergElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// The separating homomorphism `H3(Z[1/2]) -> H3(Z/kZ)`, coordinatewise `pi_k`.
pub fn heisenberg_mod_k(g: &DyadicHeisenberg, k: u64) -> Result<ModHeisenberg> {
    let m = OddModulus::new(k)?;
    Ok(HeisenbergElement::new(
        pi_k(&g.x, &m),
        pi_k(&g.y, &m),
        pi_k(&g.z, &m),
    ))
}

/// All `k^3` elements of `H3(Z/kZ)`, lexicographic in `(x, y, z)`.
pub fn enumerate_mod_k(k: &OddModulus) -> Vec<ModHeisenberg> {
    let n = k.to_u64().expect("small modulus");
    let mut out = Vec::with_capacity((n * n * n) as usize);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                out.push(HeisenbergElement::from_u64(x, y, z, k));
            }
        }
    }
    out
}

/// `(g, m)` in `H3(Z[1/2]) x_beta Z`, multiplied as
/// `(g, m)(g', m') = (g beta^m(g'), m + m')`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SemidirectElement {
    pub g: DyadicHeisenberg,
    pub m: i64,
}

impl SemidirectElement {
    pub fn new(g: DyadicHeisenberg, m: i64) -> Self {
        Self { g, m }
    }

    pub fn identity() -> Self {
        Self::new(DyadicHeisenberg::identity(), 0)
    }

    /// The implementing generator `u = (e, 1)`.
    pub fn u() -> Self {
        Self::new(DyadicHeisenberg::identity(), 1)
    }
}

impl GroupElement for SemidirectElement {
    fn mul(&self, o: &Self) -> Self {
        Self::new(self.g.mul(&o.g.beta_pow(self.m)), self.m + o.m)
    }

    fn inverse(&self) -> Self {
        Self::new(self.g.inverse().beta_pow(-self.m), -self.m)
    }

    fn identity_like(&self) -> Self {
        Self::identity()
    }

    fn is_identity(&self) -> bool {
        self.m == 0 && self.g.is_identity()
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, u^{})", self.g, self.m)
    }
}

/// An element of `Z[1/2]^2`, indexing the twisted group algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DyadicPair {
    pub a: Dyadic,
    pub b: Dyadic,
}

impl DyadicPair {
    pub fn new(a: Dyadic, b: Dyadic) -> Self {
        Self { a, b }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.a + &o.a, &self.b + &o.b)
    }

    /// `g_1 h_2 - g_2 h_1`.
    pub fn symplectic(&self, o: &Self) -> Dyadic {
        &(&self.a * &o.b) - &(&self.b * &o.a)
    }
}

impl fmt::Display for DyadicPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}
