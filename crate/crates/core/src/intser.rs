//! Serde adapters for integer vectors and matrices, using the same encoding
//! as Laurent coefficients.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::laurent::BigIntValue;
use crate::matrix::Matrix;

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let wrapped: Vec<BigIntValue> = xs.iter().cloned().map(BigIntValue).collect();
        wrapped.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let wrapped: Vec<BigIntValue> = Vec::deserialize(d)?;
        Ok(wrapped.into_iter().map(|x| x.0).collect())
    }
}

pub mod matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Matrix<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<BigIntValue>> = m
            .rows()
            .iter()
            .map(|r| r.iter().cloned().map(BigIntValue).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix<BigInt>, D::Error> {
        let rows: Vec<Vec<BigIntValue>> = Vec::deserialize(d)?;
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect())
            .map_err(serde::de::Error::custom)
    }
}

pub mod opt_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        xs.as_ref()
            .map(|v| v.iter().cloned().map(BigIntValue).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        let wrapped: Option<Vec<BigIntValue>> = Option::deserialize(d)?;
        Ok(wrapped.map(|v| v.into_iter().map(|x| x.0).collect()))
    }
}

pub mod opt_matrix {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Wrap(#[serde(with = "super::matrix")] Matrix<BigInt>);

    pub fn serialize<S: Serializer>(m: &Option<Matrix<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        m.clone().map(Wrap).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Matrix<BigInt>>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}
