//! Serde helpers writing `BigInt` values as plain JSON numbers of any size.

use num_bigint::BigInt;
use serde::ser::Error;
use serde::{Serialize, Serializer};

pub(crate) fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    let number: serde_json::Number = value.to_string().parse().map_err(S::Error::custom)?;
    number.serialize(serializer)
}

pub(crate) mod option {
    use super::*;

    pub(crate) fn serialize<S: Serializer>(
        value: &Option<BigInt>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => super::serialize(v, serializer),
            None => serializer.serialize_none(),
        }
    }
}
