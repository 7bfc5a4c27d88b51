use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::divergence::{ClassicalDivergence, Divergence};
use crate::error::{Error, Result};

/// Smallest and largest dimension a suite may draw.
pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 16;

/// Everything needed to reproduce a suite run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: String,
    pub trials: usize,
    /// Trial `i` runs in dimension `dims[i % dims.len()]`.
    pub dims: Vec<usize>,
    pub seed: u64,
    /// A trial passes iff its measured violation is at most `slack`.
    pub slack: f64,
    /// Suite-specific parameters (α lists, ε lists, `n_max`, ...).
    #[serde(default)]
    pub extra: BTreeMap<String, Value>,
}

impl SuiteConfig {
    /// The registry defaults for `suite` with the given master seed.
    pub fn defaults(suite: &str, seed: u64) -> Result<Self> {
        let info = super::registry::lookup(suite)?;
        Ok(Self {
            suite: info.name.to_string(),
            trials: info.default_trials,
            dims: info.default_dims.to_vec(),
            seed,
            slack: info.default_slack,
            extra: BTreeMap::new(),
        })
    }

    pub fn with_extra(mut self, key: &str, value: Value) -> Self {
        self.extra.insert(key.to_string(), value);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::BadConfig("trials must be at least 1".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::BadConfig("dims must not be empty".into()));
        }
        if let Some(d) = self.dims.iter().find(|d| !(MIN_DIM..=MAX_DIM).contains(*d)) {
            return Err(Error::BadConfig(format!("dimension {d} outside [{MIN_DIM}, {MAX_DIM}]")));
        }
        if !(self.slack > 0.0) || !self.slack.is_finite() {
            return Err(Error::BadConfig(format!("slack must be positive, got {}", self.slack)));
        }
        Ok(())
    }

    pub fn dim_for_trial(&self, trial: usize) -> usize {
        self.dims[trial % self.dims.len()]
    }

    fn bad(key: &str, expected: &str) -> Error {
        Error::BadConfig(format!("extra.{key}: expected {expected}"))
    }

    pub fn extra_f64(&self, key: &str, default: f64) -> Result<f64> {
        match self.extra.get(key) {
            None => Ok(default),
            Some(v) => number(v).ok_or_else(|| Self::bad(key, "a number")),
        }
    }

    pub fn extra_usize(&self, key: &str, default: usize) -> Result<usize> {
        match self.extra.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| Self::bad(key, "a non-negative integer")),
        }
    }

    pub fn extra_bool(&self, key: &str, default: bool) -> Result<bool> {
        match self.extra.get(key) {
            None => Ok(default),
            Some(v) => v.as_bool().ok_or_else(|| Self::bad(key, "true or false")),
        }
    }

    pub fn extra_f64_list(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        match self.extra.get(key) {
            None => Ok(default.to_vec()),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| number(v).ok_or_else(|| Self::bad(key, "a list of numbers")))
                .collect(),
            Some(_) => Err(Self::bad(key, "a list of numbers")),
        }
    }

    pub fn extra_pairs(&self, key: &str, default: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
        match self.extra.get(key) {
            None => Ok(default.to_vec()),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| match v.as_array().map(|a| a.as_slice()) {
                    Some([a, b]) => match (number(a), number(b)) {
                        (Some(a), Some(b)) => Ok((a, b)),
                        _ => Err(Self::bad(key, "a list of [x, y] pairs")),
                    },
                    _ => Err(Self::bad(key, "a list of [x, y] pairs")),
                })
                .collect(),
            Some(_) => Err(Self::bad(key, "a list of [x, y] pairs")),
        }
    }

    pub fn extra_strings(&self, key: &str, default: &[&str]) -> Result<Vec<String>> {
        match self.extra.get(key) {
            None => Ok(default.iter().map(|s| s.to_string()).collect()),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Self::bad(key, "a list of strings"))
                })
                .collect(),
            Some(_) => Err(Self::bad(key, "a list of strings")),
        }
    }

    /// Divergences given as `name` or `name:alpha` (alpha may be `inf`).
    pub fn extra_divergences(&self, key: &str, default: &[&str]) -> Result<Vec<Divergence>> {
        self.extra_strings(key, default)?
            .iter()
            .map(|s| parse_divergence_spec(s).map_err(|e| Error::BadConfig(format!("extra.{key}: {e}"))))
            .collect()
    }

    /// Classical divergences given as `kl`, `tv` or `renyi:alpha`.
    pub fn extra_classical(&self, key: &str, default: &[&str]) -> Result<Vec<ClassicalDivergence>> {
        self.extra_strings(key, default)?
            .iter()
            .map(|s| {
                let (name, alpha) = split_spec(s)?;
                ClassicalDivergence::parse(name, alpha).map_err(|e| Error::BadConfig(format!("extra.{key}: {e}")))
            })
            .collect()
    }
}

fn number(v: &Value) -> Option<f64> {
    crate::divergence::ext_from_json(v)
}

fn split_spec(spec: &str) -> Result<(&str, Option<f64>)> {
    match spec.split_once(':') {
        None => Ok((spec, None)),
        Some((name, alpha)) => {
            let alpha = match alpha.trim() {
                "inf" => f64::INFINITY,
                a => a
                    .parse()
                    .map_err(|_| Error::BadConfig(format!("bad order {alpha:?} in {spec:?}")))?,
            };
            Ok((name, Some(alpha)))
        }
    }
}

/// Parses `umegaki`, `dmax`, `sandwiched:0.5`, `geometric:2`, `sandwiched:inf`, ...
pub fn parse_divergence_spec(spec: &str) -> Result<Divergence> {
    let (name, alpha) = split_spec(spec)?;
    Divergence::parse(name, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn validation() {
        let mut c = SuiteConfig::defaults("sandwich", 1).unwrap();
        assert!(c.validate().is_ok());
        c.dims = vec![1];
        assert!(c.validate().is_err());
        c.dims = vec![2];
        c.slack = 0.0;
        assert!(c.validate().is_err());
        c.slack = 1e-8;
        c.trials = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn extra_accessors() {
        let c = SuiteConfig::defaults("sandwich", 1)
            .unwrap()
            .with_extra("alphas", json!([0.5, "inf"]))
            .with_extra("divergences", json!(["umegaki", "sandwiched:inf", "geometric:2"]))
            .with_extra("pairs", json!([[0.1, 0.05]]));
        assert_eq!(c.extra_f64_list("alphas", &[]).unwrap(), vec![0.5, f64::INFINITY]);
        assert_eq!(c.extra_divergences("divergences", &[]).unwrap().len(), 3);
        assert_eq!(c.extra_pairs("pairs", &[]).unwrap(), vec![(0.1, 0.05)]);
        assert_eq!(c.extra_usize("missing", 7).unwrap(), 7);
        let bad = c.clone().with_extra("alphas", json!("x"));
        assert!(bad.extra_f64_list("alphas", &[]).is_err());
        assert!(parse_divergence_spec("geometric:1").is_err());
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(SuiteConfig::defaults("nope", 0), Err(Error::UnknownSuite { .. })));
    }
}
