//! Serde adapters that write integers as plain JSON numbers when they fit in
//! an `i64` and as decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(i64),
    Big(String),
}

fn to_repr(x: &BigInt) -> Repr {
    match x.to_i64() {
        Some(v) => Repr::Small(v),
        None => Repr::Big(x.to_string()),
    }
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
    match r {
        Repr::Small(v) => Ok(v.into()),
        Repr::Big(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
    }
}

pub mod rows {
    use super::*;

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        rows.iter()
            .map(|r| r.iter().map(to_repr).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<Repr>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(from_repr).collect())
            .collect()
    }
}

/// Rationals as `"p/q"` strings (or plain integers when the denominator is 1).
pub mod rational {
    use super::*;
    use num_rational::BigRational;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        if x.is_integer() {
            to_repr(x.numer()).serialize(s)
        } else {
            format!("{}/{}", x.numer(), x.denom()).serialize(s)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Small(v) => Ok(BigRational::from_integer(v.into())),
            Repr::Big(s) => match s.split_once('/') {
                Some((n, q)) => {
                    let n: BigInt = n.parse().map_err(D::Error::custom)?;
                    let q: BigInt = q.parse().map_err(D::Error::custom)?;
                    if q == BigInt::from(0) {
                        return Err(D::Error::custom("zero denominator"));
                    }
                    Ok(BigRational::new(n, q))
                }
                None => Ok(BigRational::from_integer(s.parse().map_err(D::Error::custom)?)),
            },
        }
    }
}
