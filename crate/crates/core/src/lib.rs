//! Knot Floer computations for L-space knots and their connected sums:
//! Alexander polynomials, staircase complexes, `V_k` invariants, correction
//! terms of rational surgeries, and the metabolizer obstruction built on
//! them.

pub mod cfk;
pub mod dinv;
mod f2;
pub mod laurent;
pub mod linking;
pub mod obstruction;
pub mod reduced;
pub mod staircase;

use num_bigint::BigInt;
use thiserror::Error;

pub use laurent::{Coefficient, LaurentPoly};
pub use staircase::StaircaseList;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Alexander polynomials with arbitrary-precision coefficients.
pub type AlexanderPoly = LaurentPoly<BigInt>;

/// Exact rationals used for d-invariants and linking forms.
pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Laurent(#[from] laurent::LaurentError),
    #[error(transparent)]
    Staircase(#[from] staircase::StaircaseError),
    #[error(transparent)]
    Cfk(#[from] cfk::CfkError),
    #[error(transparent)]
    Dinv(#[from] dinv::DinvError),
    #[error(transparent)]
    Linking(#[from] linking::LinkingError),
    #[error(transparent)]
    Obstruction(#[from] obstruction::ObstructionError),
}

/// Serde adapters writing rationals as strings such as `"-4/9"`.
pub mod qserde {
    use std::str::FromStr;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    fn parse<'de, D: Deserializer<'de>>(s: &str) -> Result<Rational, D::Error> {
        Rational::from_str(s).map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}")))
    }

    pub mod scalar {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
            s.collect_str(x)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
            parse::<D>(&String::deserialize(d)?)
        }
    }

    pub mod map {
        use std::collections::BTreeMap;

        use serde::ser::SerializeMap;

        use super::*;

        pub fn serialize<S: Serializer>(
            m: &BTreeMap<u64, Rational>,
            s: S,
        ) -> Result<S::Ok, S::Error> {
            let mut out = s.serialize_map(Some(m.len()))?;
            for (k, v) in m {
                out.serialize_entry(&k.to_string(), &v.to_string())?;
            }
            out.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<BTreeMap<u64, Rational>, D::Error> {
            BTreeMap::<String, String>::deserialize(d)?
                .into_iter()
                .map(|(k, v)| {
                    let k = k
                        .parse::<u64>()
                        .map_err(|e| D::Error::custom(format!("bad key {k:?}: {e}")))?;
                    Ok((k, parse::<D>(&v)?))
                })
                .collect()
        }
    }
}
