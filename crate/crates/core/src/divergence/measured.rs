//! Measured divergences: a classical divergence evaluated on the outcome
//! distributions of one measurement. Every strategy yields a lower bound on
//! the supremum over all measurements.

use serde::{Deserialize, Serialize};

use super::classical::{classical_divergence_raw, ClassicalDivergence};
use super::value::DivergenceValue;
use crate::error::{Error, Result};
use crate::qstate::linalg::{self, eigh_unchecked, ComplexMatrix};
use crate::qstate::random::{haar_unitary, rng_from_seed};
use crate::qstate::state::same_dim;
use crate::qstate::{DensityState, Povm};

/// How the measurement is chosen.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
pub enum MeasurementStrategy {
    /// Eigenbasis of `σ`, refined inside each eigenspace of `σ` by the
    /// eigenbasis of the compressed `ρ`. Optimal for commuting pairs.
    PencilEigenbasis,
    /// Best of `count` Haar-random orthonormal bases.
    RandomProjective { count: usize, seed: u64 },
    /// A caller-supplied POVM.
    #[serde(skip)]
    Explicit(Povm),
}

/// Value together with the measurement that produced it.
#[derive(Clone, Debug)]
pub struct MeasuredValue {
    pub value: DivergenceValue,
    pub povm: Povm,
}

/// Orthonormal basis diagonalizing `σ` and the pinching of `ρ` by the
/// eigenspaces of `σ`.
pub fn pinched_eigenbasis(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> ComplexMatrix {
    let d = sigma.nrows();
    let es = eigh_unchecked(sigma);
    let tol = 1e-10 * es.max_eigenvalue().abs().max(f64::MIN_POSITIVE);
    let mut basis = ComplexMatrix::zeros(d, d);
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && (es.eigenvalues[start] - es.eigenvalues[end]).abs() <= tol {
            end += 1;
        }
        let block = es.eigenvectors.columns(start, end - start).into_owned();
        let compressed = block.adjoint() * rho * &block;
        let inner = eigh_unchecked(&compressed);
        let rotated = &block * &inner.eigenvectors;
        basis.columns_mut(start, end - start).copy_from(&rotated);
        start = end;
    }
    basis
}

fn projective(basis: &ComplexMatrix) -> Povm {
    Povm::from_trusted((0..basis.ncols()).map(|j| linalg::outer(&basis.column(j).into_owned())).collect())
}

fn evaluate(kind: ClassicalDivergence, povm: &Povm, rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
    let p = povm.outcome_probabilities(rho)?;
    let q = povm.outcome_probabilities(sigma)?;
    classical_divergence_raw(kind, &p, &q)
}

/// Classical divergence of the outcome distributions of the chosen measurement.
pub fn measured_divergence(
    kind: ClassicalDivergence,
    rho: &DensityState,
    sigma: &DensityState,
    strategy: &MeasurementStrategy,
) -> Result<DivergenceValue> {
    measured_divergence_with_witness(kind, rho, sigma, strategy).map(|m| m.value)
}

pub fn measured_divergence_with_witness(
    kind: ClassicalDivergence,
    rho: &DensityState,
    sigma: &DensityState,
    strategy: &MeasurementStrategy,
) -> Result<MeasuredValue> {
    same_dim(rho, sigma)?;
    match strategy {
        MeasurementStrategy::PencilEigenbasis => {
            let povm = projective(&pinched_eigenbasis(rho.matrix(), sigma.matrix()));
            let value = evaluate(kind, &povm, rho, sigma)?;
            Ok(MeasuredValue { value, povm })
        }
        MeasurementStrategy::RandomProjective { count, seed } => {
            if *count == 0 {
                return Err(Error::BadConfig("random_projective needs at least one basis".into()));
            }
            let mut rng = rng_from_seed(*seed);
            let mut best: Option<MeasuredValue> = None;
            for _ in 0..*count {
                let povm = projective(&haar_unitary(&mut rng, rho.dim()));
                let value = evaluate(kind, &povm, rho, sigma)?;
                if best.as_ref().is_none_or(|b| value > b.value) {
                    best = Some(MeasuredValue { value, povm });
                }
            }
            Ok(best.expect("count ≥ 1"))
        }
        MeasurementStrategy::Explicit(povm) => {
            if povm.dim() != rho.dim() {
                return Err(Error::BadPovm(format!(
                    "POVM acts on dimension {}, states on {}",
                    povm.dim(),
                    rho.dim()
                )));
            }
            let value = evaluate(kind, povm, rho, sigma)?;
            Ok(MeasuredValue {
                value,
                povm: povm.clone(),
            })
        }
    }
}
