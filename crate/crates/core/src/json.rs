//! Helpers for exact integers and rationals in JSON documents.
//!
//! Integers are written as bare JSON numbers of arbitrary length, so a value
//! read back is bit-for-bit the value written.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result};

pub fn int_value(n: &BigInt) -> Value {
    // arbitrary_precision keeps the digit string verbatim
    serde_json::from_str(&n.to_string()).expect("integer literal is valid JSON")
}

pub fn i64_value(n: i64) -> Value {
    Value::from(n)
}

pub fn as_int(v: &Value, ctx: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            BigInt::from_str(&s).map_err(|_| Error::input(ctx, format!("expected an integer, got {s}")))
        }
        other => Err(Error::input(ctx, format!("expected an integer, got {other}"))),
    }
}

pub fn as_i64(v: &Value, ctx: &str) -> Result<i64> {
    let n = as_int(v, ctx)?;
    i64::try_from(&n).map_err(|_| Error::input(ctx, format!("integer {n} out of range")))
}

pub fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::input(ctx, format!("expected an array, got {v}")))
}

pub fn field<'a>(v: &'a Value, key: &str, ctx: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::input(ctx, format!("missing field \"{key}\"")))
}

/// `[num, den]`
pub fn rat_value(r: &BigRational) -> Value {
    Value::Array(vec![int_value(r.numer()), int_value(r.denom())])
}

pub fn as_rat(v: &Value, ctx: &str) -> Result<BigRational> {
    let a = as_array(v, ctx)?;
    if a.len() != 2 {
        return Err(Error::input(ctx, "rational must be a [num, den] pair"));
    }
    let num = as_int(&a[0], ctx)?;
    let den = as_int(&a[1], ctx)?;
    if den.is_zero() {
        return Err(Error::input(ctx, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}
