use serde::{Deserialize, Serialize};

use crate::divergence::DivergenceValue;
use crate::qstate::Povm;

/// How a returned value relates to the quantity it estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Exact closed form.
    Exact,
    /// A feasible point of an infimum.
    Upper,
    /// A feasible point of a supremum.
    Lower,
}

/// Description of whatever achieved the returned value.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    /// `(1, 0)` against `(s, 1-s)`.
    BinaryPair { s: f64 },
    /// Outcome weights `r_x` and probabilities `q_x` of a decomposition
    /// `σ^{-1/2} ρ σ^{-1/2} = Σ r_x E_x`.
    Decomposition { r: Vec<f64>, q: Vec<f64> },
    /// Randomized search over decompositions.
    Search {
        trials: usize,
        feasible: usize,
        ansatz_value: DivergenceValue,
        /// `ansatz - best`; positive when the search found a strictly better point.
        improvement: f64,
    },
    /// Outcome distributions of the measurement used.
    Measurement {
        p: Vec<f64>,
        q: Vec<f64>,
        #[serde(skip)]
        povm: Option<Povm>,
    },
    /// Ensemble found by a decomposition search.
    Ensemble {
        weights: Vec<f64>,
        values: Vec<f64>,
        trials: usize,
    },
}

/// A value with its direction relative to the target extension.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionBound {
    pub value: DivergenceValue,
    pub direction: Direction,
    pub witness: Witness,
}

impl ExtensionBound {
    pub fn new(value: DivergenceValue, direction: Direction, witness: Witness) -> Self {
        Self {
            value,
            direction,
            witness,
        }
    }

    pub fn value(&self) -> f64 {
        self.value.value()
    }
}
