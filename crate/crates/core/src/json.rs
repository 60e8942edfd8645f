//! JSON helpers shared by the serializable types.
//!
//! Integers that fit in 53 bits are written as JSON numbers; anything larger
//! becomes a decimal string so that consumers parsing into doubles never
//! truncate silently.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum IntRepr {
    Num(i64),
    Str(String),
}

impl IntRepr {
    pub(crate) fn from_big(c: &BigInt) -> Self {
        match c.to_i64() {
            Some(v) if v.unsigned_abs() < (1u64 << 53) => IntRepr::Num(v),
            _ => IntRepr::Str(c.to_string()),
        }
    }

    pub(crate) fn into_big(self) -> Result<BigInt, String> {
        match self {
            IntRepr::Num(v) => Ok(BigInt::from(v)),
            IntRepr::Str(s) => BigInt::from_str(&s).map_err(|e| format!("{s:?}: {e}")),
        }
    }
}

/// Integer as a JSON number when it fits in 53 bits, else a decimal string.
pub fn int_value(c: &BigInt) -> Value {
    match IntRepr::from_big(c) {
        IntRepr::Num(v) => Value::from(v),
        IntRepr::Str(s) => Value::from(s),
    }
}

/// Integer always as a decimal string.
pub fn int_string(c: &BigInt) -> Value {
    Value::from(c.to_string())
}

/// Rational as `"p/q"` (or `"p"` when integral).
pub fn rational_string(q: &BigRational) -> Value {
    Value::from(q.to_string())
}
