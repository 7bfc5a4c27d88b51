//! Extensions of classical divergences to quantum states.
//!
//! The maximal extension is an infimum over classical pairs `(r∘q, q)` that a
//! preparation maps onto `(ρ, σ)`; such pairs correspond to decompositions
//! `σ^{-1/2} ρ σ^{-1/2} = Σ r_x E_x` into a POVM `{E_x}` with
//! `q_x = Tr[E_x σ]`. The minimal extension is a supremum over measurements.

use rand::Rng;
use rayon::prelude::*;

use super::bound::{Direction, ExtensionBound, Witness};
use crate::divergence::classical::classical_divergence_raw;
use crate::divergence::measured::measured_divergence_with_witness;
use crate::divergence::quantum::{d_max, support_contained, Spectral};
use crate::divergence::{ClassicalDivergence, DivergenceValue, MeasurementStrategy};
use crate::error::Result;
use crate::qstate::linalg::{self, eigh_unchecked, left_singular_system, ComplexMatrix, C64};
use crate::qstate::random::{ginibre, trial_rng};
use crate::qstate::state::same_dim;
use crate::qstate::{DensityState, PureState};

/// Outcome probabilities below this are treated as absent.
const NEGLIGIBLE: f64 = 1e-14;

/// Maximal extension on a pure first argument: the classical divergence of
/// `(1, 0)` against `(s, 1-s)` with `s = 2^{-D_max(ψ‖σ)}`.
pub fn maximal_classical_extension_pure(
    kind: ClassicalDivergence,
    psi: &PureState,
    sigma: &DensityState,
) -> Result<ExtensionBound> {
    sigma.require_normalized()?;
    let dmax = d_max(&psi.density(), sigma)?;
    if dmax.is_infinite() {
        return Ok(ExtensionBound::new(DivergenceValue::INFINITY, Direction::Exact, Witness::None));
    }
    let s = (-dmax.value()).exp2().min(1.0);
    let value = classical_divergence_raw(kind, &[1.0, 0.0], &[s, 1.0 - s])?;
    Ok(ExtensionBound::new(value, Direction::Exact, Witness::BinaryPair { s }))
}

/// `(r_x, q_x)` from the eigensystem of `σ^{-1/2} ρ σ^{-1/2}`, or `None` when
/// `ρ` is not supported on `σ`.
fn pencil_decomposition(rho: &DensityState, sigma: &DensityState) -> Option<(Vec<f64>, Vec<f64>)> {
    let ss = Spectral::of(sigma.matrix());
    if ss.is_zero() || !support_contained(rho.matrix(), &ss.projector()) {
        return None;
    }
    let rs = Spectral::of(rho.matrix());
    let c = ss.power(-0.5) * rs.power(0.5);
    let (s, u) = left_singular_system(&c);
    let mut r = Vec::with_capacity(s.len());
    let mut q = Vec::with_capacity(s.len());
    for (i, &sv) in s.iter().enumerate() {
        let qx = linalg::expectation(sigma.matrix(), &u.column(i).into_owned());
        if qx > NEGLIGIBLE {
            r.push(sv * sv);
            q.push(qx);
        }
    }
    Some((r, q))
}

fn classical_value(kind: ClassicalDivergence, r: &[f64], q: &[f64]) -> Result<DivergenceValue> {
    let p: Vec<f64> = r.iter().zip(q).map(|(a, b)| a * b).collect();
    classical_divergence_raw(kind, &p, q)
}

/// The eigenbasis ansatz for the maximal extension. Exact for KL and Rényi
/// orders in `(0, 2]`; an upper bound otherwise.
pub fn maximal_classical_extension_ansatz(
    kind: ClassicalDivergence,
    rho: &DensityState,
    sigma: &DensityState,
) -> Result<ExtensionBound> {
    same_dim(rho, sigma)?;
    rho.require_normalized()?;
    sigma.require_normalized()?;
    let direction = if kind.ansatz_is_optimal() {
        Direction::Exact
    } else {
        Direction::Upper
    };
    let Some((r, q)) = pencil_decomposition(rho, sigma) else {
        return Ok(ExtensionBound::new(DivergenceValue::INFINITY, direction, Witness::None));
    };
    let value = classical_value(kind, &r, &q)?;
    Ok(ExtensionBound::new(value, direction, Witness::Decomposition { r, q }))
}

/// The pair restricted to `supp σ`: `σ_s` (diagonal, full rank) and
/// `Y = σ_s^{-1/2} ρ_s σ_s^{-1/2}`.
struct SupportProblem {
    sigma: ComplexMatrix,
    y: ComplexMatrix,
}

impl SupportProblem {
    fn new(rho: &DensityState, sigma: &DensityState) -> Self {
        let es = eigh_unchecked(sigma.matrix());
        let thr = 1e-10 * es.max_eigenvalue();
        let k = es.eigenvalues.iter().filter(|&&l| l > thr).count();
        let v = es.eigenvectors.columns(0, k).into_owned();
        let sig = ComplexMatrix::from_fn(k, k, |i, j| {
            if i == j {
                C64::new(es.eigenvalues[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let inv_sqrt = ComplexMatrix::from_fn(k, k, |i, j| {
            if i == j {
                C64::new(es.eigenvalues[i].powf(-0.5), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let rho_s = v.adjoint() * rho.matrix() * &v;
        let y = linalg::hermitian_part(&(&inv_sqrt * rho_s * &inv_sqrt));
        Self { sigma: sig, y }
    }

    fn dim(&self) -> usize {
        self.y.nrows()
    }

    /// A random positive dilation `B = [[Y, X], [X†, Z]]` of `Y`. Writing
    /// `B = Σ r_x |u_x⟩⟨u_x|` and `e_x` for the top block of `u_x` gives
    /// `Σ e_x e_x† = I` and `Σ r_x e_x e_x† = Y`, so every draw is a feasible
    /// decomposition; conversely every rank-one decomposition arises this way.
    fn random_point<R: Rng>(&self, kind: ClassicalDivergence, rng: &mut R) -> Option<DivergenceValue> {
        let k = self.dim();
        let extra = (k * k - k).max(1);
        let scale = linalg::operator_norm_hermitian(&self.y).max(f64::MIN_POSITIVE);
        let tau = 10f64.powf(rng.random_range(-2.0..0.5)) * scale.sqrt();
        let tau_l = 10f64.powf(rng.random_range(-2.0..0.5)) * scale;
        let y_sqrt = linalg::power_on_support(&self.y, 0.5, 0.0);
        let kmat = ginibre(rng, k, extra) * C64::new(tau, 0.0);
        let g = ginibre(rng, extra, extra);
        let l = (&g * g.adjoint()) * C64::new(tau_l / extra as f64, 0.0);
        let x = &y_sqrt * &kmat;
        let z = kmat.adjoint() * &kmat + l;
        let m = k + extra;
        let mut b = ComplexMatrix::zeros(m, m);
        b.view_mut((0, 0), (k, k)).copy_from(&self.y);
        b.view_mut((0, k), (k, extra)).copy_from(&x);
        b.view_mut((k, 0), (extra, k)).copy_from(&x.adjoint());
        b.view_mut((k, k), (extra, extra)).copy_from(&z);
        let eig = eigh_unchecked(&linalg::hermitian_part(&b));
        if eig.min_eigenvalue() < -1e-10 * scale {
            return None;
        }
        let mut r = Vec::with_capacity(m);
        let mut q = Vec::with_capacity(m);
        for x in 0..m {
            let e = eig.eigenvectors.view((0, x), (k, 1)).into_owned();
            let qx = (e.adjoint() * &self.sigma * &e)[(0, 0)].re;
            if qx > NEGLIGIBLE {
                r.push(eig.eigenvalues[x].max(0.0));
                q.push(qx);
            }
        }
        classical_value(kind, &r, &q).ok()
    }
}

/// Randomized search over decompositions `Y = Σ r_x E_x` with `k²`-outcome
/// rank-one POVMs drawn as random positive dilations of `Y`. Every evaluated point
/// is feasible, so the result (the minimum together with the ansatz) is an
/// upper bound on the maximal extension.
pub fn maximal_classical_extension_search(
    kind: ClassicalDivergence,
    rho: &DensityState,
    sigma: &DensityState,
    trials: usize,
    seed: u64,
) -> Result<ExtensionBound> {
    let ansatz = maximal_classical_extension_ansatz(kind, rho, sigma)?;
    if ansatz.value.is_infinite() {
        return Ok(ExtensionBound::new(ansatz.value, Direction::Upper, ansatz.witness));
    }
    let problem = SupportProblem::new(rho, sigma);
    let points: Vec<Option<DivergenceValue>> = (0..trials)
        .into_par_iter()
        .map(|i| problem.random_point(kind, &mut trial_rng(seed, i as u64)))
        .collect();
    let feasible = points.iter().flatten().count();
    let best = points.iter().flatten().copied().fold(ansatz.value, DivergenceValue::min);
    let improvement = ansatz.value.value() - best.value();
    Ok(ExtensionBound::new(
        best,
        Direction::Upper,
        Witness::Search {
            trials,
            feasible,
            ansatz_value: ansatz.value,
            improvement,
        },
    ))
}

/// Lower bound on the minimal extension from a single measurement.
pub fn minimal_classical_extension_lower(
    kind: ClassicalDivergence,
    rho: &DensityState,
    sigma: &DensityState,
    strategy: &MeasurementStrategy,
) -> Result<ExtensionBound> {
    let measured = measured_divergence_with_witness(kind, rho, sigma, strategy)?;
    let p = measured.povm.outcome_probabilities(rho)?;
    let q = measured.povm.outcome_probabilities(sigma)?;
    Ok(ExtensionBound::new(
        measured.value,
        Direction::Lower,
        Witness::Measurement {
            p,
            q,
            povm: Some(measured.povm),
        },
    ))
}
