//! Exact rational string encoding (`"p/q"`, or `"p"` for integers) and the
//! serde adapters built on it.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub fn rational_to_string(x: &BigRational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| Error::InvalidInput(format!("{s}: {e}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| Error::InvalidInput(format!("{s}: {e}")))?;
        if d == BigInt::from(0) {
            return Err(Error::InvalidInput(format!("{s}: zero denominator")));
        }
        Ok(BigRational::new(n, d))
    } else {
        BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|e| Error::InvalidInput(format!("{s}: {e}")))
    }
}

/// `#[serde(with = "crate::codec::rational_vec")]`
pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&rational_to_string(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// `#[serde(with = "crate::codec::rational")]`
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}
