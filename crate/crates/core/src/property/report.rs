use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::config::SuiteConfig;
use crate::divergence::{round_sig12, DivergenceValue};
use crate::error::Result;

/// Outcome of one trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// Seed of the trial's random stream; regenerates every input.
    pub seed: u64,
    pub dim: usize,
    /// Largest violation over all checks in the trial.
    pub slack: DivergenceValue,
    pub pass: bool,
    /// Name of the check that attained `slack`.
    pub worst_check: String,
    /// Largest violation per check name.
    pub checks: BTreeMap<String, DivergenceValue>,
    /// Values computed along the way.
    pub diagnostics: BTreeMap<String, DivergenceValue>,
    /// Set when the trial aborted with an error; such a trial fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub max_violation: DivergenceValue,
    /// Not serialized, so that reports of identical configurations are
    /// byte-identical.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl Aggregate {
    pub fn from_records(records: &[TrialRecord], wall_time: Duration) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        let max_violation = records
            .iter()
            .map(|r| r.slack)
            .max()
            .unwrap_or(DivergenceValue::ZERO);
        Self {
            total: records.len(),
            passed,
            failed: records.len() - passed,
            max_violation,
            wall_time,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub records: Vec<TrialRecord>,
    pub aggregate: Aggregate,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.aggregate.failed == 0
    }

    /// `"<passed>/<total> pass"`.
    pub fn summary(&self) -> String {
        format!("{}/{} pass", self.aggregate.passed, self.aggregate.total)
    }

    /// Largest value of a named check over all trials.
    pub fn max_check(&self, name: &str) -> Option<f64> {
        self.records
            .iter()
            .filter_map(|r| r.checks.get(name))
            .map(|v| v.value())
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    /// One row per trial: `suite, trial, seed, slack, pass`, then every
    /// diagnostic (sorted by name). Missing values are left empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let keys: BTreeSet<&str> = self
            .records
            .iter()
            .flat_map(|r| r.diagnostics.keys().map(String::as_str))
            .collect();
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["suite", "trial", "seed", "slack", "pass"];
        header.extend(keys.iter().copied());
        w.write_record(&header)?;
        for r in &self.records {
            let mut row = vec![
                self.suite.clone(),
                r.trial.to_string(),
                r.seed.to_string(),
                format_value(r.slack),
                r.pass.to_string(),
            ];
            row.extend(
                keys.iter()
                    .map(|k| r.diagnostics.get(*k).map(|v| format_value(*v)).unwrap_or_default()),
            );
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_csv_file(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }
}

/// Twelve significant digits; `inf` for `+∞`.
pub fn format_value(v: DivergenceValue) -> String {
    let x = v.value();
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        let r = round_sig12(x);
        if r != 0.0 && !(1e-4..1e15).contains(&r.abs()) {
            format!("{r:e}")
        } else {
            r.to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_print_with_twelve_digits() {
        assert_eq!(format_value(DivergenceValue::INFINITY), "inf");
        assert_eq!(format_value(DivergenceValue::ZERO), "0");
        assert_eq!(format_value(DivergenceValue::new(1.0 / 3.0)), "0.333333333333");
        assert_eq!(format_value(DivergenceValue::new(2.0181586974123456e-14)), "2.01815869741e-14");
    }
}
