use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::dyadic::split_odd;
use super::Dyadic;
use crate::error::{Error, Result};

/// A finitely described subgroup of the dyadic rationals.
///
/// With `closed_under_halving` set the subgroup is generated by
/// `g / 2^n` for every listed `g` and every `n >= 0`; otherwise it is
/// generated by the listed elements alone.
#[derive(Clone, Debug)]
pub struct SubgroupSpec {
    pub generators: Vec<Dyadic>,
    pub closed_under_halving: bool,
}

impl SubgroupSpec {
    pub fn finite(generators: Vec<Dyadic>) -> Self {
        Self {
            generators,
            closed_under_halving: false,
        }
    }

    pub fn halving_closed(generators: Vec<Dyadic>) -> Self {
        Self {
            generators,
            closed_under_halving: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupClass {
    /// Cyclic, generated by the positive element given.
    Cyclic(Dyadic),
    /// Equal to `k0 * Z[1/2]`; `k0` is the least positive integer in it.
    FullScaled(BigInt),
}

/// Decides whether the subgroup is cyclic or of the form `k0 * Z[1/2]`.
pub fn classify_subgroup(spec: &SubgroupSpec) -> Result<SubgroupClass> {
    let nonzero: Vec<&Dyadic> = spec.generators.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::TrivialGenerators);
    }
    if spec.closed_under_halving {
        // a * Z[1/2] = odd(a) * Z[1/2], and a sum of such ideals is generated by the gcd.
        let k0 = nonzero
            .iter()
            .map(|g| split_odd(&g.numerator().abs()).0)
            .fold(BigInt::zero(), |acc, o| acc.gcd(&o));
        return Ok(SubgroupClass::FullScaled(k0));
    }
    let e = nonzero.iter().map(|g| g.exponent()).max().unwrap_or(0);
    let g = nonzero
        .iter()
        .map(|x| x.numerator().abs() << (e - x.exponent()))
        .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
    Ok(SubgroupClass::Cyclic(Dyadic::new(g, e)))
}
