//! Independent reference computations used by the suites and tests. Each
//! oracle takes a different route from the library function it checks.

use crate::qstate::linalg::{self, eigh_unchecked, ComplexMatrix, ComplexVector, C64};
use crate::qstate::random::{haar_unitary, rng_from_seed};
use crate::qstate::{DensityState, PureState};

/// Information-spectrum divergence of commuting states by enumerating the
/// likelihood ratios: the smallest `log(p_i/q_i)` whose cumulative lower mass
/// exceeds `ε`, or `+∞` when none does.
pub fn classical_information_spectrum(p: &[f64], q: &[f64], eps: f64) -> f64 {
    let mut ratios: Vec<(f64, f64)> = p
        .iter()
        .zip(q)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0)
        .map(|(a, b)| ((a / b).log2(), *a))
        .collect();
    ratios.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut mass = 0.0;
    let mut i = 0;
    while i < ratios.len() {
        let r = ratios[i].0;
        // Ratios equal up to rounding form one level set.
        while i < ratios.len() && ratios[i].0 <= r + 1e-9 * (1.0 + r.abs()) {
            mass += ratios[i].1;
            i += 1;
        }
        if mass > eps {
            return r;
        }
    }
    f64::INFINITY
}

/// Hypothesis-testing divergence of commuting states: the Neyman–Pearson LP
/// solved greedily by decreasing likelihood ratio.
pub fn classical_hypothesis_testing(p: &[f64], q: &[f64], eps: f64) -> f64 {
    let ratio = |i: usize| if q[i] == 0.0 { f64::INFINITY } else { p[i] / q[i] };
    let mut idx: Vec<usize> = (0..p.len()).filter(|&i| p[i] > 0.0).collect();
    idx.sort_by(|&a, &b| ratio(b).total_cmp(&ratio(a)));
    let mut need = 1.0 - eps;
    let mut cost = 0.0;
    for i in idx {
        if need <= 0.0 {
            break;
        }
        let take = if p[i] <= need { 1.0 } else { need / p[i] };
        need -= take * p[i];
        cost += take * q[i];
    }
    -cost.log2()
}

/// `log₂⟨ψ|σ⁻¹|ψ⟩` by solving `σx = ψ` with an LU factorization.
pub fn log_inverse_expectation(psi: &PureState, sigma: &DensityState) -> Option<f64> {
    let x = sigma.matrix().clone().lu().solve(psi.vector())?;
    Some(psi.vector().dotc(&x).re.log2())
}

fn abs_overlap(w: &ComplexMatrix, x: &ComplexMatrix) -> (f64, C64) {
    let z = (w * x).trace();
    (z.norm(), z)
}

/// `exp(-i η B)` for Hermitian `B`.
fn unitary_step(b: &ComplexMatrix, eta: f64) -> ComplexMatrix {
    let eig = eigh_unchecked(b);
    let d = eig.dim();
    let mut scaled = eig.eigenvectors.clone();
    for (j, &lam) in eig.eigenvalues.iter().enumerate() {
        let phase = C64::from_polar(1.0, -eta * lam);
        for i in 0..d {
            scaled[(i, j)] *= phase;
        }
    }
    &scaled * eig.eigenvectors.adjoint()
}

/// Riemannian ascent of `|Tr(W X)|` over unitaries `W`, from `w`.
fn ascend(mut w: ComplexMatrix, x: &ComplexMatrix) -> f64 {
    let (mut best, _) = abs_overlap(&w, x);
    let mut eta = 0.5;
    for _ in 0..2000 {
        let (_, z) = abs_overlap(&w, x);
        if z.norm() == 0.0 {
            break;
        }
        let a = (x * &w) * (z.conj() / z.norm());
        let b = (&a - a.adjoint()) * C64::new(0.0, -0.5);
        if linalg::frobenius_norm(&b) < 1e-14 {
            break;
        }
        let mut improved = false;
        while eta > 1e-12 {
            let cand = &w * unitary_step(&b, eta);
            let (v, _) = abs_overlap(&cand, x);
            if v > best {
                best = v;
                w = cand;
                eta = (eta * 2.0).min(1.0);
                improved = true;
                break;
            }
            eta *= 0.5;
        }
        if !improved {
            break;
        }
    }
    best
}

/// Fidelity as the largest overlap between the canonical purification of
/// `ρ` and the purifications `(I ⊗ U)|ψ_σ⟩` of `σ`, maximized by `restarts`
/// Haar-random unitaries followed by gradient ascent from the best few.
pub fn uhlmann_fidelity(rho: &DensityState, sigma: &DensityState, restarts: usize, seed: u64) -> f64 {
    // With purification matrices A = √ρ and B = √σ the overlap is Tr(A†B Uᵀ).
    let a = linalg::power_on_support(rho.matrix(), 0.5, 0.0);
    let b = linalg::power_on_support(sigma.matrix(), 0.5, 0.0);
    let x = a.adjoint() * b;
    let mut rng = rng_from_seed(seed);
    let d = rho.dim();
    let mut starts: Vec<(f64, ComplexMatrix)> = (0..restarts.max(1))
        .map(|_| {
            let w = haar_unitary(&mut rng, d);
            (abs_overlap(&w, &x).0, w)
        })
        .collect();
    starts.sort_by(|p, q| q.0.total_cmp(&p.0));
    starts
        .into_iter()
        .take(4)
        .map(|(_, w)| ascend(w, &x))
        .fold(0.0, f64::max)
        .min(1.0)
}

/// Purified distance `√(1 - F²)` with `F` from [`uhlmann_fidelity`].
pub fn uhlmann_purified_distance(rho: &DensityState, sigma: &DensityState, restarts: usize, seed: u64) -> f64 {
    let f = uhlmann_fidelity(rho, sigma, restarts, seed);
    (1.0 - f * f).max(0.0).sqrt()
}

fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// Concurrence of a two-qubit state.
pub fn concurrence(rho: &DensityState) -> f64 {
    let y = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 1) => C64::new(0.0, -1.0),
        (1, 0) => C64::new(0.0, 1.0),
        _ => C64::new(0.0, 0.0),
    });
    let yy = linalg::kron(&y, &y);
    let tilde = &yy * rho.matrix().map(|z| z.conj()) * &yy;
    let s = linalg::power_on_support(rho.matrix(), 0.5, 0.0);
    let r = linalg::hermitian_part(&(&s * tilde * &s));
    let mut l: Vec<f64> = eigh_unchecked(&r)
        .eigenvalues
        .iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    l.sort_by(|a, b| b.total_cmp(a));
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

/// Entanglement of formation of a two-qubit state from its concurrence.
pub fn wootters_entanglement_of_formation(rho: &DensityState) -> f64 {
    let c = concurrence(rho);
    binary_entropy((1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0)
}

/// `p φ⁺ + (1 - p) I/4` on two qubits.
pub fn werner_state(p: f64) -> DensityState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let phi = ComplexVector::from_vec(vec![C64::new(h, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(h, 0.0)]);
    let m = linalg::outer(&phi).scale(p) + linalg::identity(4).scale((1.0 - p) / 4.0);
    DensityState::normalized(m).expect("valid for p in [-1/3, 1]")
}
