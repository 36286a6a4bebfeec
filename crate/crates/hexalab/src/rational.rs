//! Exact rational scalars shared by every module.
//!
//! All weights, distances and masses in the library are [`Q`] values; floats
//! appear only in power-mean output, the DFT diagnostic evaluator and the
//! Monte Carlo samplers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

/// Exact rational scalar.
pub type Q = BigRational;

/// Builds a rational from small integers. Panics if `denom == 0`.
pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds an integer-valued rational.
pub fn q_int(value: i64) -> Q {
    Q::from_integer(BigInt::from(value))
}

/// Renders a rational as `numer/denom`, always with an explicit denominator.
pub fn format_q(value: &Q) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Lossy conversion used for display and Monte Carlo comparisons.
pub fn to_f64(value: &Q) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational `{input}`: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `p/q` or a bare integer `p`. Decimal notation is rejected.
pub fn parse_q(text: &str) -> Result<Q, ParseRationalError> {
    let trimmed = text.trim();
    let err = |reason| ParseRationalError {
        input: text.to_owned(),
        reason,
    };
    if trimmed.is_empty() {
        return Err(err("empty string"));
    }
    if trimmed.contains('.') {
        return Err(err("decimal notation is not accepted, use numer/denom"));
    }
    let mut parts = trimmed.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|_| err("numerator is not an integer"))?;
    let denom: BigInt = match parts.next() {
        Some(d) => d
            .trim()
            .parse()
            .map_err(|_| err("denominator is not an integer"))?,
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return Err(err("denominator is zero"));
    }
    Ok(Q::new(numer, denom))
}
