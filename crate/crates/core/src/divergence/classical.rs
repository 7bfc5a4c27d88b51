//! Divergences between probability vectors (log base 2, `0 log 0 = 0`).

use std::fmt;

use serde::{Deserialize, Serialize};

use super::value::DivergenceValue;
use crate::error::{Error, Result};
use crate::qstate::ClassicalDistribution;

/// A classical divergence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassicalDivergence {
    /// Kullback-Leibler divergence.
    Kl,
    /// Rényi divergence of order `alpha ∈ [0, ∞]`; order 1 is KL, order ∞
    /// is the max-divergence.
    Renyi { alpha: f64 },
    /// Total variation distance `½ Σ |p - q|`; a divergence but not a relative
    /// entropy.
    TotalVariation,
}

impl ClassicalDivergence {
    pub fn renyi(alpha: f64) -> Self {
        ClassicalDivergence::Renyi { alpha }
    }

    /// Additive and normalized.
    pub fn is_relative_entropy(&self) -> bool {
        !matches!(self, ClassicalDivergence::TotalVariation)
    }

    /// Orders for which the eigenbasis of `σ^{-1/2} ρ σ^{-1/2}` attains the
    /// maximal quantum extension.
    pub fn ansatz_is_optimal(&self) -> bool {
        match *self {
            ClassicalDivergence::Kl => true,
            ClassicalDivergence::Renyi { alpha } => alpha > 0.0 && alpha <= 2.0,
            ClassicalDivergence::TotalVariation => false,
        }
    }

    pub fn parse(name: &str, alpha: Option<f64>) -> Result<Self> {
        match name {
            "kl" | "umegaki" => Ok(ClassicalDivergence::Kl),
            "renyi" => {
                let alpha = alpha.ok_or(Error::BadField {
                    field: "alpha".into(),
                    message: "required for renyi".into(),
                })?;
                if !(alpha >= 0.0) {
                    return Err(Error::AlphaOutOfRange {
                        alpha,
                        variant: "classical renyi",
                    });
                }
                Ok(ClassicalDivergence::Renyi { alpha })
            }
            "tv" | "total-variation" => Ok(ClassicalDivergence::TotalVariation),
            other => Err(Error::UnknownDivergence(other.to_string())),
        }
    }
}

impl fmt::Display for ClassicalDivergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalDivergence::Kl => write!(f, "kl"),
            ClassicalDivergence::Renyi { alpha } => write!(f, "renyi({alpha})"),
            ClassicalDivergence::TotalVariation => write!(f, "total-variation"),
        }
    }
}

/// Evaluates a classical divergence on raw probability slices.
pub fn classical_divergence_raw(kind: ClassicalDivergence, p: &[f64], q: &[f64]) -> Result<DivergenceValue> {
    if p.len() != q.len() {
        return Err(Error::DimMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let pairs = p.iter().copied().zip(q.iter().copied());
    let v = match kind {
        ClassicalDivergence::TotalVariation => 0.5 * pairs.map(|(a, b)| (a - b).abs()).sum::<f64>(),
        ClassicalDivergence::Kl => kl(p, q),
        ClassicalDivergence::Renyi { alpha } => {
            if !(alpha >= 0.0) {
                return Err(Error::AlphaOutOfRange {
                    alpha,
                    variant: "classical renyi",
                });
            }
            if alpha == 1.0 {
                kl(p, q)
            } else if alpha == f64::INFINITY {
                let mut worst = f64::NEG_INFINITY;
                for (a, b) in pairs {
                    if a > 0.0 {
                        if b <= 0.0 {
                            return Ok(DivergenceValue::INFINITY);
                        }
                        worst = worst.max((a / b).log2());
                    }
                }
                worst
            } else if alpha == 0.0 {
                let mass: f64 = pairs.filter(|(a, _)| *a > 0.0).map(|(_, b)| b).sum();
                if mass <= 0.0 {
                    return Ok(DivergenceValue::INFINITY);
                }
                -mass.log2()
            } else {
                let mut sum = 0.0;
                for (a, b) in pairs {
                    if a <= 0.0 {
                        continue;
                    }
                    if b <= 0.0 {
                        if alpha > 1.0 {
                            return Ok(DivergenceValue::INFINITY);
                        }
                        continue;
                    }
                    sum += a.powf(alpha) * b.powf(1.0 - alpha);
                }
                if sum <= 0.0 {
                    return Ok(DivergenceValue::INFINITY);
                }
                sum.log2() / (alpha - 1.0)
            }
        }
    };
    Ok(DivergenceValue::new(v))
}

fn kl(p: &[f64], q: &[f64]) -> f64 {
    let mut sum = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a <= 0.0 {
            continue;
        }
        if b <= 0.0 {
            return f64::INFINITY;
        }
        sum += a * (a / b).log2();
    }
    sum
}

/// Classical divergence between two distributions.
pub fn classical_divergence(
    kind: ClassicalDivergence,
    p: &ClassicalDistribution,
    q: &ClassicalDistribution,
) -> Result<DivergenceValue> {
    classical_divergence_raw(kind, p.probs(), q.probs())
}
