//! Serde helpers: big integers as decimal strings, rationals as "num/den".
//! Keeps every JSON artifact human-readable and lossless.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serializer};
use std::str::FromStr;

pub fn rat_to_string(x: &BigRational) -> String {
    if x.denom() == &BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat_from_str(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|e| e.to_string())?;
            let d = BigInt::from_str(d.trim()).map_err(|e| e.to_string())?;
            if d == BigInt::from(0) {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(s).map_err(|e| e.to_string())?;
            Ok(BigRational::from(n))
        }
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_str(&s).map_err(serde::de::Error::custom)
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(rat_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let ss: Vec<String> = Vec::deserialize(d)?;
        ss.iter().map(|s| rat_from_str(s).map_err(serde::de::Error::custom)).collect()
    }
}

pub mod rational_mat {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|row| row.iter().map(rat_to_string).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<Vec<BigRational>>, D::Error> {
        let ss: Vec<Vec<String>> = Vec::deserialize(d)?;
        ss.iter()
            .map(|row| {
                row.iter()
                    .map(|s| rat_from_str(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

pub mod biguint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let ss: Vec<String> = Vec::deserialize(d)?;
        ss.iter()
            .map(|s| BigUint::from_str(s.trim()).map_err(serde::de::Error::custom))
            .collect()
    }
}
