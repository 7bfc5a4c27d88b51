use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An extended real number (never NaN). `+∞` is the value of a divergence
/// whose support conditions fail; it absorbs additions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivergenceValue(f64);

impl DivergenceValue {
    pub const INFINITY: DivergenceValue = DivergenceValue(f64::INFINITY);
    pub const ZERO: DivergenceValue = DivergenceValue(0.0);

    /// Panics on NaN; a NaN reaching this point is a bug.
    pub fn new(v: f64) -> Self {
        assert!(!v.is_nan(), "divergence value is NaN");
        Self(v)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0 == f64::INFINITY
    }

    /// `self - other`; `∞ - ∞` is indeterminate.
    pub fn checked_sub(self, other: DivergenceValue) -> Result<f64> {
        if self.0.is_infinite() && other.0.is_infinite() && self.0.signum() == other.0.signum() {
            return Err(Error::IndeterminateValue("infinity minus infinity"));
        }
        Ok(self.0 - other.0)
    }

    /// Violation of `self ≤ other`: positive when the inequality fails.
    /// `∞ ≤ ∞` holds with violation zero.
    pub fn excess_over(self, other: DivergenceValue) -> f64 {
        if self.0 == other.0 {
            0.0
        } else {
            self.0 - other.0
        }
    }
}

impl Eq for DivergenceValue {}

impl PartialOrd for DivergenceValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DivergenceValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).expect("never NaN")
    }
}

impl Add for DivergenceValue {
    type Output = DivergenceValue;

    fn add(self, rhs: Self) -> Self {
        DivergenceValue::new(self.0 + rhs.0)
    }
}

impl From<f64> for DivergenceValue {
    fn from(v: f64) -> Self {
        DivergenceValue::new(v)
    }
}

impl fmt::Display for DivergenceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            write!(f, "inf")
        } else if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Rounds to 12 significant digits, the precision used for all printed output.
pub fn round_sig12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

/// JSON form of an extended real: a number, or the strings `"inf"`/`"-inf"`.
pub fn ext_to_json(v: f64) -> serde_json::Value {
    if v == f64::INFINITY {
        serde_json::Value::String("inf".into())
    } else if v == f64::NEG_INFINITY {
        serde_json::Value::String("-inf".into())
    } else {
        serde_json::json!(round_sig12(v))
    }
}

pub fn ext_from_json(v: &serde_json::Value) -> Option<f64> {
    match v {
        serde_json::Value::Number(n) => n.as_f64(),
        serde_json::Value::String(s) if s == "inf" => Some(f64::INFINITY),
        serde_json::Value::String(s) if s == "-inf" => Some(f64::NEG_INFINITY),
        _ => None,
    }
}

impl Serialize for DivergenceValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ext_to_json(self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivergenceValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        ext_from_json(&v)
            .map(DivergenceValue::new)
            .ok_or_else(|| serde::de::Error::custom("expected a number or \"inf\""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_and_orders() {
        let one = DivergenceValue::new(1.0);
        assert!((one + DivergenceValue::INFINITY).is_infinite());
        assert!(one < DivergenceValue::INFINITY);
        assert_eq!(DivergenceValue::INFINITY.to_string(), "inf");
    }

    #[test]
    fn infinity_minus_infinity_is_indeterminate() {
        assert!(matches!(
            DivergenceValue::INFINITY.checked_sub(DivergenceValue::INFINITY),
            Err(Error::IndeterminateValue(_))
        ));
        assert_eq!(DivergenceValue::INFINITY.excess_over(DivergenceValue::INFINITY), 0.0);
    }

    #[test]
    fn json_spelling() {
        assert_eq!(serde_json::to_string(&DivergenceValue::INFINITY).unwrap(), "\"inf\"");
        let v: DivergenceValue = serde_json::from_str("\"inf\"").unwrap();
        assert!(v.is_infinite());
        assert_eq!(round_sig12(1.0 / 3.0), 0.333333333333);
    }
}
