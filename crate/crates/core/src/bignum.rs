//! Serde helpers for big integers: JSON numbers when they fit in `u64`,
//! decimal strings otherwise.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;

pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match n.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    struct V;
    impl Visitor<'_> for V {
        type Value = BigUint;
        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a non-negative integer or decimal string")
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigUint, E> {
            Ok(BigUint::from(v))
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigUint, E> {
            u64::try_from(v)
                .map(BigUint::from)
                .map_err(|_| E::custom("negative integer"))
        }
        fn visit_str<E: de::Error>(self, v: &str) -> Result<BigUint, E> {
            v.trim()
                .parse()
                .map_err(|_| E::custom(format!("bad integer {v:?}")))
        }
    }
    d.deserialize_any(V)
}
