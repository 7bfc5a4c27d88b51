//! Finite-n regularization `n ↦ (1/n) Q(ρ^{⊗n} ‖ σ^{⊗n})`.

use serde::{Deserialize, Serialize};

use super::classical::{maximal_classical_extension_ansatz, minimal_classical_extension_lower};
use crate::divergence::{d_h_epsilon, d_s_epsilon, ClassicalDivergence, Divergence, DivergenceValue, MeasurementStrategy};
use crate::error::{Error, Result};
use crate::qstate::state::same_dim;
use crate::qstate::{tensor_power, DensityState, DIM_CAP};

/// Quantity whose rate is traced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "quantity", rename_all = "snake_case")]
pub enum RateQuantity {
    Divergence(Divergence),
    InformationSpectrum { epsilon: f64 },
    HypothesisTesting { epsilon: f64 },
    /// Measured lower bound on the minimal extension.
    MeasuredLower { kind: ClassicalDivergence, strategy: MeasurementStrategy },
    /// Eigenbasis ansatz for the maximal extension.
    MaximalAnsatz { kind: ClassicalDivergence },
}

impl RateQuantity {
    fn evaluate(&self, rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
        match self {
            RateQuantity::Divergence(d) => d.evaluate(rho, sigma),
            RateQuantity::InformationSpectrum { epsilon } => d_s_epsilon(rho, sigma, *epsilon),
            RateQuantity::HypothesisTesting { epsilon } => d_h_epsilon(rho, sigma, *epsilon),
            RateQuantity::MeasuredLower { kind, strategy } => {
                Ok(minimal_classical_extension_lower(*kind, rho, sigma, strategy)?.value)
            }
            RateQuantity::MaximalAnsatz { kind } => Ok(maximal_classical_extension_ansatz(*kind, rho, sigma)?.value),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub n: usize,
    pub rate: f64,
}

/// Rates for `n = 1, ..., n_max`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RegularizationTrace {
    pub points: Vec<RatePoint>,
}

impl RegularizationTrace {
    pub fn rate(&self, n: usize) -> Option<f64> {
        self.points.iter().find(|p| p.n == n).map(|p| p.rate)
    }

    pub fn first(&self) -> Option<RatePoint> {
        self.points.first().copied()
    }

    pub fn last(&self) -> Option<RatePoint> {
        self.points.last().copied()
    }
}

/// `(n, Q(ρ^{⊗n}‖σ^{⊗n})/n)` for `n = 1..=n_max`; requires `dim^{n_max} ≤ 4096`.
pub fn regularized_rate(
    quantity: &RateQuantity,
    rho: &DensityState,
    sigma: &DensityState,
    n_max: usize,
) -> Result<RegularizationTrace> {
    let d = same_dim(rho, sigma)?;
    if n_max == 0 {
        return Err(Error::BadConfig("n_max must be at least 1".into()));
    }
    let top = d.saturating_pow(n_max.min(u32::MAX as usize) as u32);
    if top > DIM_CAP {
        return Err(Error::DimCap { dim: top, cap: DIM_CAP });
    }
    let mut points = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let rn = tensor_power(rho, n)?;
        let sn = tensor_power(sigma, n)?;
        let v = quantity.evaluate(&rn, &sn)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteRate { n });
        }
        points.push(RatePoint {
            n,
            rate: v.value() / n as f64,
        });
    }
    Ok(RegularizationTrace { points })
}
