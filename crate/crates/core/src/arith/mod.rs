//! Exact scalars: dyadic rationals, residues modulo odd integers, and roots
//! of unity, together with the separating homomorphisms `pi_k`.

mod dyadic;
mod residue;
mod root;
mod subgroup;

pub(crate) use dyadic::split_odd;
pub use dyadic::Dyadic;
pub use residue::{half_mod, order_of_two, pi_k, OddModulus, Residue};
pub use root::RootOfUnity;
pub use subgroup::{classify_subgroup, SubgroupClass, SubgroupSpec};

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn dyadic() -> impl Strategy<Value = Dyadic> {
        (-1000i64..1000, 0u32..12).prop_map(|(n, e)| Dyadic::new(n, e))
    }

    fn odd() -> impl Strategy<Value = OddModulus> {
        (0i64..60).prop_map(|h| OddModulus::new(2 * h + 1).unwrap())
    }

    proptest! {
        #[test]
        fn pi_k_is_ring_homomorphism(x in dyadic(), y in dyadic(), k in odd()) {
            prop_assert_eq!(pi_k(&(&x + &y), &k), &pi_k(&x, &k) + &pi_k(&y, &k));
            prop_assert_eq!(pi_k(&(&x * &y), &k), &pi_k(&x, &k) * &pi_k(&y, &k));
            prop_assert_eq!(pi_k(&Dyadic::int(1), &k), Residue::one(&k));
        }

        #[test]
        fn pi_k_commutes_with_halving(x in dyadic(), k in odd()) {
            prop_assert_eq!(pi_k(&x.half(), &k), half_mod(&pi_k(&x, &k)));
        }

        #[test]
        fn half_mod_inverts_doubling(v in 0i64..1000, k in odd()) {
            let r = Residue::new(v, &k);
            prop_assert_eq!(half_mod(&r.double()), r.clone());
            prop_assert_eq!(half_mod(&r).double(), r);
        }

        #[test]
        fn roots_multiply_like_complex_numbers(a in 0u64..50, m in 1u64..50, b in 0u64..50, n in 1u64..50, c in 0u64..50, p in 1u64..50) {
            let x = RootOfUnity::new(a, m).unwrap();
            let y = RootOfUnity::new(b, n).unwrap();
            let z = RootOfUnity::new(c, p).unwrap();
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            let num = (&x * &y).value::<f64>() - x.value::<f64>() * y.value::<f64>();
            prop_assert!(num.norm() < 1e-12);
        }
    }
}
