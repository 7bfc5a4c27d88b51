use std::collections::BTreeMap;

use crate::divergence::DivergenceValue;
use crate::qstate::random::StateRng;

/// Per-trial context handed to a suite: the trial's dimension and random
/// stream, plus accumulators for check violations and diagnostic values.
pub struct Trial {
    pub index: usize,
    pub dim: usize,
    pub rng: StateRng,
    checks: BTreeMap<String, f64>,
    diagnostics: BTreeMap<String, f64>,
}

impl Trial {
    pub(crate) fn new(index: usize, dim: usize, rng: StateRng) -> Self {
        Self {
            index,
            dim,
            rng,
            checks: BTreeMap::new(),
            diagnostics: BTreeMap::new(),
        }
    }

    /// Records a non-negative violation under `name` (keeping the maximum).
    pub fn violation(&mut self, name: impl Into<String>, v: f64) {
        let v = if v.is_nan() { f64::INFINITY } else { v.max(0.0) };
        let slot = self.checks.entry(name.into()).or_insert(0.0);
        *slot = slot.max(v);
    }

    /// Check `a ≤ b` over the extended reals (`∞ ≤ ∞` holds).
    pub fn le(&mut self, name: impl Into<String>, a: f64, b: f64) {
        let v = if a == b { 0.0 } else { a - b };
        self.violation(name, v);
    }

    /// Check `a = b`; equal infinities agree.
    pub fn close(&mut self, name: impl Into<String>, a: f64, b: f64) {
        let v = if a == b { 0.0 } else { (a - b).abs() };
        self.violation(name, v);
    }

    /// Check a boolean condition: violation `0` or `∞`.
    pub fn holds(&mut self, name: impl Into<String>, ok: bool) {
        self.violation(name, if ok { 0.0 } else { f64::INFINITY });
    }

    pub fn diag(&mut self, name: impl Into<String>, v: f64) {
        self.diagnostics.insert(name.into(), if v.is_nan() { f64::INFINITY } else { v });
    }

    pub(crate) fn finish(self) -> (BTreeMap<String, DivergenceValue>, BTreeMap<String, DivergenceValue>) {
        let wrap = |m: BTreeMap<String, f64>| m.into_iter().map(|(k, v)| (k, DivergenceValue::new(v))).collect();
        (wrap(self.checks), wrap(self.diagnostics))
    }
}

/// A property suite: one randomized check per trial.
pub(crate) trait Suite: Sync {
    fn run(&self, trial: &mut Trial) -> crate::Result<()>;
}
