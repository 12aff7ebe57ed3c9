//! Helpers for decoding the crate's canonical JSON forms.
//!
//! Emission is hand-formatted at each call site (the schemas are tiny and
//! byte-stability matters); decoding goes through `serde_json` with
//! arbitrary-precision numbers so big integers survive exactly.

use std::str::FromStr;

use num_bigint::BigUint;
use serde_json::Value;

use crate::{Error, Result};

pub(crate) fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::parse(e.column().saturating_sub(1), format!("invalid JSON: {e}")))
}

pub(crate) fn as_array<'a>(value: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| Error::Invalid(format!("{what} must be a JSON array")))
}

fn field<'a>(value: &'a Value, name: &str) -> Result<&'a Value> {
    value
        .get(name)
        .ok_or_else(|| Error::Invalid(format!("missing field {name:?}")))
}

pub(crate) fn field_biguint(value: &Value, name: &str) -> Result<BigUint> {
    let v = field(value, name)?;
    let n = v
        .as_number()
        .ok_or_else(|| Error::Invalid(format!("field {name:?} must be a number")))?;
    BigUint::from_str(&n.to_string())
        .map_err(|_| Error::Invalid(format!("field {name:?} must be a nonnegative integer")))
}

pub(crate) fn field_u64(value: &Value, name: &str) -> Result<u64> {
    let v = field_biguint(value, name)?;
    u64::try_from(&v).map_err(|_| Error::Invalid(format!("field {name:?} exceeds 64 bits")))
}

pub(crate) fn field_u32(value: &Value, name: &str) -> Result<u32> {
    let v = field_u64(value, name)?;
    u32::try_from(v).map_err(|_| Error::Invalid(format!("field {name:?} exceeds 32 bits")))
}

pub(crate) fn field_str<'a>(value: &'a Value, name: &str) -> Result<&'a str> {
    field(value, name)?
        .as_str()
        .ok_or_else(|| Error::Invalid(format!("field {name:?} must be a string")))
}

pub(crate) fn field_bool(value: &Value, name: &str) -> Result<bool> {
    field(value, name)?
        .as_bool()
        .ok_or_else(|| Error::Invalid(format!("field {name:?} must be a boolean")))
}

pub(crate) fn field_rational(value: &Value, name: &str) -> Result<crate::numerics::Rational> {
    field_str(value, name)?.parse()
}
