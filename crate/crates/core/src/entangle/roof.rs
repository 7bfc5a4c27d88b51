//! Decomposition searches extending pure-state monotones to mixed states.

use rand::Rng;
use rayon::prelude::*;

use super::schmidt::{BipartiteCut, PureMonotone, SchmidtData, SCHMIDT_CUTOFF};
use crate::divergence::oneshot::check_epsilon;
use crate::divergence::DivergenceValue;
use crate::error::{Error, Result};
use crate::extension::{purified_distance, Direction, ExtensionBound, Witness};
use crate::qstate::linalg::{self, eigh_unchecked, singular_values, ComplexMatrix, ComplexVector, Subsystem, C64};
use crate::qstate::random::{ginibre, haar_isometry, rng_from_seed, trial_rng, trial_seed};
use crate::qstate::{purify, DensityState, TraceClass};

/// Number of perturbed states tried by [`smoothed_extension`] besides `ρ`.
pub const SMOOTHING_CANDIDATES: usize = 16;

/// `ρ = A A†` with `A = [√λ_1 e_1, ..., √λ_r e_r]` over the support.
struct Factor {
    a: ComplexMatrix,
    cut: BipartiteCut,
}

struct Ensemble {
    weights: Vec<f64>,
    values: Vec<f64>,
}

impl Ensemble {
    fn average(&self) -> f64 {
        self.weights.iter().zip(&self.values).map(|(p, v)| p * v).sum()
    }
}

impl Factor {
    fn new(rho: &DensityState, cut: BipartiteCut) -> Self {
        let eig = rho.eigen();
        let thr = linalg::DEFAULT_CUTOFF * eig.max_eigenvalue();
        let r = eig.eigenvalues.iter().filter(|&&l| l > thr).count();
        let a = ComplexMatrix::from_fn(rho.dim(), r, |i, j| eig.eigenvectors[(i, j)] * eig.eigenvalues[j].sqrt());
        Self { a, cut }
    }

    fn rank(&self) -> usize {
        self.a.ncols()
    }

    /// Ensemble `ψ̃_x = Σ_i U_{xi} √λ_i e_i` for a `K x r` isometry `U`.
    fn ensemble(&self, monotone: PureMonotone, u: &ComplexMatrix) -> Ensemble {
        let vectors = &self.a * u.transpose();
        let (da, db) = (self.cut.dim_a, self.cut.dim_b);
        let mut weights = Vec::with_capacity(vectors.ncols());
        let mut values = Vec::with_capacity(vectors.ncols());
        for x in 0..vectors.ncols() {
            let v = vectors.column(x);
            let p = v.norm_squared();
            if p <= 1e-15 {
                continue;
            }
            let scale = C64::new(1.0 / p.sqrt(), 0.0);
            let m = ComplexMatrix::from_fn(da, db, |i, j| v[i * db + j] * scale);
            let coefficients = singular_values(&m);
            let rank = coefficients.iter().filter(|&&c| c > SCHMIDT_CUTOFF).count();
            weights.push(p);
            values.push(monotone.on_schmidt(&SchmidtData { coefficients, rank }));
        }
        Ensemble { weights, values }
    }
}

impl Factor {
    /// Sequential random local search: accept `W U` for near-identity `W`
    /// whenever it improves; the step halves after 25 consecutive misses.
    fn random_local_search(
        &self,
        monotone: PureMonotone,
        mut best_u: ComplexMatrix,
        mut best_value: f64,
        budget: usize,
        seed: u64,
    ) -> ComplexMatrix {
        let mut rng = rng_from_seed(trial_seed(seed, u64::MAX));
        let k = best_u.nrows();
        let mut step = 0.5;
        let mut misses = 0;
        for _ in 0..budget {
            let w = near_identity_unitary(&mut rng, k, step);
            let u = &w * &best_u;
            let v = self.ensemble(monotone, &u).average();
            if v < best_value {
                best_value = v;
                best_u = u;
                misses = 0;
            } else {
                misses += 1;
                if misses >= 25 {
                    step = (step * 0.5).max(1e-4);
                    misses = 0;
                }
            }
        }
        best_u
    }

    /// Average entanglement entropy of the ensemble for `U` and the
    /// anti-Hermitian part `Z_a` of its Riemannian gradient: moving along
    /// `exp(iηZ_a) U` decreases the average at rate `2‖Z_a‖²`.
    fn entropy_and_gradient(&self, u: &ComplexMatrix) -> (f64, ComplexMatrix) {
        let vectors = &self.a * u.transpose();
        let (da, db) = (self.cut.dim_a, self.cut.dim_b);
        let (k, r) = (u.nrows(), u.ncols());
        let mut total = 0.0;
        let mut w = ComplexMatrix::zeros(k, r);
        for x in 0..k {
            let v = vectors.column(x);
            let p = v.norm_squared();
            if p <= 1e-15 {
                continue;
            }
            let m = ComplexMatrix::from_fn(da, db, |i, j| v[i * db + j]);
            let eig = eigh_unchecked(&(&m * m.adjoint()));
            let floor = 1e-14 * p;
            // p·S(ρ_A/p) = -Tr ρ̃ log ρ̃ + p log p for the unnormalized ρ̃ = M M†.
            total += p * p.log2()
                - eig
                    .eigenvalues
                    .iter()
                    .filter(|&&l| l > floor)
                    .map(|&l| l * l.log2())
                    .sum::<f64>();
            let log = eig.map(|l| if l > floor { l.log2() } else { 0.0 });
            let g = (m.scale(p.log2()) - log * &m).map(|z| z.conj());
            for i in 0..r {
                let col = self.a.column(i);
                let mut acc = C64::new(0.0, 0.0);
                for a in 0..da {
                    for b in 0..db {
                        acc += g[(a, b)] * col[a * db + b];
                    }
                }
                w[(x, i)] = acc;
            }
        }
        let z = u * w.transpose();
        let za = (&z - z.adjoint()) * C64::new(0.0, -0.5);
        (total, za)
    }

    /// Gradient descent on the unitary orbit with backtracking, spending at
    /// most `budget` evaluations.
    fn descend_entropy(&self, mut u: ComplexMatrix, budget: usize) -> ComplexMatrix {
        let mut spent = 0;
        let mut eta = 0.5;
        let (mut value, mut za) = self.entropy_and_gradient(&u);
        while spent < budget {
            spent += 1;
            if linalg::frobenius_norm(&za) < 1e-12 {
                break;
            }
            let mut moved = false;
            while spent < budget && eta > 1e-12 {
                spent += 1;
                let cand = unitary_exp(&za, eta) * &u;
                let (v, g) = self.entropy_and_gradient(&cand);
                if v < value {
                    (u, value, za) = (cand, v, g);
                    eta = (eta * 2.0).min(4.0);
                    moved = true;
                    break;
                }
                eta *= 0.5;
            }
            if !moved {
                break;
            }
        }
        u
    }
}

/// `exp(iηH)` for Hermitian `H`.
fn unitary_exp(h: &ComplexMatrix, eta: f64) -> ComplexMatrix {
    let eig = eigh_unchecked(h);
    let mut scaled = eig.eigenvectors.clone();
    for (j, &l) in eig.eigenvalues.iter().enumerate() {
        let phase = C64::from_polar(1.0, eta * l);
        for i in 0..scaled.nrows() {
            scaled[(i, j)] *= phase;
        }
    }
    scaled * eig.eigenvectors.adjoint()
}

/// `exp(i·step·H)` for a random Hermitian `H`.
fn near_identity_unitary<R: Rng>(rng: &mut R, dim: usize, step: f64) -> ComplexMatrix {
    unitary_exp(&linalg::hermitian_part(&ginibre(rng, dim, dim)), step)
}

/// Smallest ensemble average of `monotone` over pure-state decompositions of
/// `ρ` into `ensemble_size` (unnormalized) vectors.
///
/// The first half of the trials are independent Haar-random isometries (trial
/// 0 is the eigendecomposition), evaluated in parallel and reduced in index
/// order; the second half refines the best one, by Riemannian gradient descent
/// for the entanglement entropy and by random local search otherwise.
/// Every point is a valid decomposition, so the result is an upper bound.
pub fn convex_roof_search(
    monotone: PureMonotone,
    rho: &DensityState,
    cut: BipartiteCut,
    ensemble_size: usize,
    trials: usize,
    seed: u64,
) -> Result<ExtensionBound> {
    cut.check(rho.dim())?;
    rho.require_normalized()?;
    let factor = Factor::new(rho, cut);
    let r = factor.rank();
    if ensemble_size < r || ensemble_size == 0 {
        return Err(Error::BadEnsembleSize {
            size: ensemble_size,
            rank: r,
        });
    }
    let k = ensemble_size;
    let trials = trials.max(1);
    let global = trials.div_ceil(2);

    let eigen_basis = ComplexMatrix::from_fn(k, r, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
    let starts: Vec<(f64, ComplexMatrix)> = (0..global)
        .into_par_iter()
        .map(|i| {
            let u = if i == 0 {
                eigen_basis.clone()
            } else {
                haar_isometry(&mut trial_rng(seed, i as u64), k, r)
            };
            (factor.ensemble(monotone, &u).average(), u)
        })
        .collect();
    let (best_value, mut best_u) = starts
        .into_iter()
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("at least one trial");

    let budget = trials - global;
    if monotone == PureMonotone::EntanglementEntropy {
        best_u = factor.descend_entropy(best_u, budget);
    } else {
        best_u = factor.random_local_search(monotone, best_u, best_value, budget, seed);
    }

    let best = factor.ensemble(monotone, &best_u);
    Ok(ExtensionBound::new(
        DivergenceValue::new(best.average().max(0.0)),
        Direction::Upper,
        Witness::Ensemble {
            weights: best.weights,
            values: best.values,
            trials,
        },
    ))
}

/// States near `ρ`: reductions of Gaussian perturbations of its canonical
/// purification at a fixed schedule of strengths.
fn smoothing_candidates(rho: &DensityState, seed: u64) -> Result<Vec<DensityState>> {
    let psi = purify(rho)?;
    let d = rho.dim();
    let mut rng = rng_from_seed(trial_seed(seed, u64::MAX - 1));
    let mut out = Vec::with_capacity(SMOOTHING_CANDIDATES);
    for j in 0..SMOOTHING_CANDIDATES {
        let strength = 0.4 * (j + 1) as f64 / SMOOTHING_CANDIDATES as f64;
        let noise = ginibre(&mut rng, d * d, 1).column(0).into_owned();
        let mut v: ComplexVector = psi.vector() + noise * C64::new(strength / (d as f64), 0.0);
        let norm = v.norm();
        v /= C64::new(norm, 0.0);
        let m = linalg::partial_trace(&linalg::outer(&v), d, d, Subsystem::A);
        out.push(DensityState::from_trusted(linalg::hermitian_part(&m), TraceClass::Normalized));
    }
    Ok(out)
}

/// Convex-roof search minimized additionally over sampled states within
/// purified distance `ε` of `ρ` (`ρ` itself always included). The candidate
/// schedule does not depend on `ε`, so the feasible sets are nested and the
/// value is non-increasing in `ε`. Uses ensembles of size `dim`.
pub fn smoothed_extension(
    monotone: PureMonotone,
    rho: &DensityState,
    cut: BipartiteCut,
    eps: f64,
    trials: usize,
    seed: u64,
) -> Result<ExtensionBound> {
    if eps != 0.0 {
        check_epsilon(eps)?;
    }
    cut.check(rho.dim())?;
    let k = rho.dim();
    let mut best = convex_roof_search(monotone, rho, cut, k, trials, seed)?;
    if eps == 0.0 {
        return Ok(best);
    }
    for candidate in smoothing_candidates(rho, seed)? {
        if purified_distance(&candidate, rho)?.value() > eps {
            continue;
        }
        let b = convex_roof_search(monotone, &candidate, cut, k, trials, seed)?;
        if b.value < best.value {
            best = b;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{random, PureState};

    fn binary_entropy(x: f64) -> f64 {
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }

    /// Entanglement of formation of a two-qubit state from its concurrence.
    fn wootters_eof(rho: &DensityState) -> f64 {
        let y = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => C64::new(0.0, -1.0),
            (1, 0) => C64::new(0.0, 1.0),
            _ => C64::new(0.0, 0.0),
        });
        let yy = linalg::kron(&y, &y);
        let tilde = &yy * rho.matrix().map(|z| z.conj()) * &yy;
        let s = linalg::power_on_support(rho.matrix(), 0.5, 0.0);
        let r = linalg::hermitian_part(&(&s * tilde * &s));
        let mut l: Vec<f64> = eigh_unchecked(&r).eigenvalues.iter().map(|x| x.max(0.0).sqrt()).collect();
        l.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let c = (l[0] - l[1] - l[2] - l[3]).max(0.0);
        binary_entropy((1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0)
    }

    fn werner(p: f64) -> DensityState {
        let phi = PureState::from_real(&[std::f64::consts::FRAC_1_SQRT_2, 0.0, 0.0, std::f64::consts::FRAC_1_SQRT_2]).unwrap().density();
        DensityState::normalized(phi.matrix().scale(p) + linalg::identity(4).scale((1.0 - p) / 4.0)).unwrap()
    }

    const CUT: BipartiteCut = BipartiteCut { dim_a: 2, dim_b: 2 };

    #[test]
    fn pure_states_reduce_exactly() {
        let psi = random::random_pure(4, 1).unwrap();
        let exact = PureMonotone::EntanglementEntropy.evaluate(&psi, CUT).unwrap();
        let b = convex_roof_search(PureMonotone::EntanglementEntropy, &psi.density(), CUT, 3, 20, 2).unwrap();
        assert!((b.value() - exact).abs() < 1e-10);
    }

    #[test]
    fn bell_state_has_unit_roof() {
        let phi = PureState::from_real(&[std::f64::consts::FRAC_1_SQRT_2, 0.0, 0.0, std::f64::consts::FRAC_1_SQRT_2]).unwrap().density();
        let b = convex_roof_search(PureMonotone::EntanglementEntropy, &phi, CUT, 4, 50, 3).unwrap();
        assert!((b.value() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn never_below_wootters() {
        for seed in 0..5 {
            let rho = random::random_density(4, 2, 100 + seed).unwrap();
            let exact = wootters_eof(&rho);
            let b = convex_roof_search(PureMonotone::EntanglementEntropy, &rho, CUT, 4, 400, seed).unwrap();
            assert!(b.value() >= exact - 1e-9, "{} < {exact}", b.value());
            assert!(b.value() <= exact + 0.1, "{} vs {exact}", b.value());
        }
    }

    #[test]
    fn ensemble_size_must_cover_rank() {
        let rho = DensityState::maximally_mixed(4);
        assert!(matches!(
            convex_roof_search(PureMonotone::EntanglementEntropy, &rho, CUT, 3, 10, 0),
            Err(Error::BadEnsembleSize { size: 3, rank: 4 })
        ));
    }

    #[test]
    fn search_is_deterministic() {
        let rho = werner(0.6);
        let a = convex_roof_search(PureMonotone::EntanglementEntropy, &rho, CUT, 4, 100, 9).unwrap();
        let b = convex_roof_search(PureMonotone::EntanglementEntropy, &rho, CUT, 4, 100, 9).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn smoothing_is_monotone_in_epsilon() {
        let rho = werner(0.8);
        let zero = smoothed_extension(PureMonotone::EntanglementEntropy, &rho, CUT, 0.0, 60, 5).unwrap();
        let plain = convex_roof_search(PureMonotone::EntanglementEntropy, &rho, CUT, 4, 60, 5).unwrap();
        assert_eq!(zero.value, plain.value);
        let mut prev = zero.value();
        for eps in [0.05, 0.1, 0.2, 0.4] {
            let v = smoothed_extension(PureMonotone::EntanglementEntropy, &rho, CUT, eps, 60, 5).unwrap().value();
            assert!(v <= prev + 1e-12);
            prev = v;
        }
    }
}
