//! Seeded random ensembles.
//!
//! Every sampler comes in two flavours: `*_with` takes a caller-owned RNG, the
//! plain version takes a seed. Suites derive one independent stream per trial
//! with [`trial_rng`], so trial `i` can be reproduced from `(master, i)` alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use super::channel::{ChannelKind, QuantumChannel};
use super::linalg::{self, ComplexMatrix, ComplexVector, C64};
use super::state::{DensityState, Povm, PureState, TraceClass};
use crate::error::{Error, Result};

pub type StateRng = ChaCha20Rng;

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the independent stream for trial `index` under `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

pub fn rng_from_seed(seed: u64) -> StateRng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn trial_rng(master: u64, index: u64) -> StateRng {
    rng_from_seed(trial_seed(master, index))
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of i.i.d. standard complex Gaussians.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the phases of `R`
/// absorbed into `Q`).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let qr = ginibre(rng, dim, dim).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar-random isometry from `cols` into `rows` dimensions (`rows ≥ cols`).
pub fn haar_isometry<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    haar_unitary(rng, rows).columns(0, cols).into_owned()
}

/// Ginibre-induced mixed state `G G† / Tr[G G†]` with `G` of size `dim x rank`.
pub fn random_density_with<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Result<DensityState> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::BadShape(format!("rank {rank} for dimension {dim}")));
    }
    let g = ginibre(rng, dim, rank);
    let m = &g * g.adjoint();
    let tr = linalg::real_trace(&m);
    let m = linalg::hermitian_part(&m.scale(1.0 / tr));
    Ok(DensityState::from_trusted(m, TraceClass::Normalized))
}

pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityState> {
    random_density_with(&mut rng_from_seed(seed), dim, rank)
}

/// Full-rank state mixed with the maximally mixed state so that its smallest
/// eigenvalue is at least `min_eigenvalue`.
pub fn random_full_rank_with<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    min_eigenvalue: f64,
) -> Result<DensityState> {
    let weight = min_eigenvalue * dim as f64;
    if !(0.0..=1.0).contains(&weight) {
        return Err(Error::BadShape(format!(
            "minimum eigenvalue {min_eigenvalue} impossible in dimension {dim}"
        )));
    }
    let g = random_density_with(rng, dim, dim)?;
    let m = g.matrix().scale(1.0 - weight) + linalg::identity(dim).scale(weight / dim as f64);
    Ok(DensityState::from_trusted(m, TraceClass::Normalized))
}

/// Random state with trace drawn uniformly from `(0, 1]`.
pub fn random_subnormalized_with<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Result<DensityState> {
    let rho = random_density_with(rng, dim, rank)?;
    let t: f64 = 1.0 - rng.random::<f64>();
    Ok(DensityState::from_trusted(rho.matrix().scale(t), TraceClass::Subnormalized))
}

pub fn random_pure_with<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<PureState> {
    if dim == 0 {
        return Err(Error::BadShape("dimension 0".into()));
    }
    let v = ComplexVector::from_fn(dim, |_, _| complex_normal(rng));
    PureState::normalize(v)
}

pub fn random_pure(dim: usize, seed: u64) -> Result<PureState> {
    random_pure_with(&mut rng_from_seed(seed), dim)
}

fn stinespring_kraus(v: &ComplexMatrix, out_dim: usize, env_dim: usize, blocks: usize) -> Vec<ComplexMatrix> {
    // Row index of the isometry is `o * env_dim + e`.
    (0..blocks)
        .map(|e| ComplexMatrix::from_fn(out_dim, v.ncols(), |o, i| v[(o * env_dim + e, i)]))
        .collect()
}

/// CPTP map from a Haar-random Stinespring isometry `in → out ⊗ env`.
pub fn random_channel_with<R: Rng + ?Sized>(
    rng: &mut R,
    in_dim: usize,
    out_dim: usize,
    env_dim: usize,
) -> Result<QuantumChannel> {
    if in_dim == 0 || out_dim == 0 || env_dim == 0 || out_dim * env_dim < in_dim {
        return Err(Error::BadShape(format!(
            "no isometry from {in_dim} into {out_dim}x{env_dim}"
        )));
    }
    let v = haar_isometry(rng, out_dim * env_dim, in_dim);
    QuantumChannel::new(stinespring_kraus(&v, out_dim, env_dim, env_dim), ChannelKind::Cptp)
}

pub fn random_channel(in_dim: usize, out_dim: usize, env_dim: usize, seed: u64) -> Result<QuantumChannel> {
    random_channel_with(&mut rng_from_seed(seed), in_dim, out_dim, env_dim)
}

/// Trace non-increasing CP map: a Stinespring dilation with one extra
/// environment level whose Kraus operator is discarded.
pub fn random_tni_with<R: Rng + ?Sized>(
    rng: &mut R,
    in_dim: usize,
    out_dim: usize,
    env_dim: usize,
) -> Result<QuantumChannel> {
    if in_dim == 0 || out_dim == 0 || env_dim == 0 || out_dim * (env_dim + 1) < in_dim {
        return Err(Error::BadShape(format!(
            "no isometry from {in_dim} into {out_dim}x{}",
            env_dim + 1
        )));
    }
    let v = haar_isometry(rng, out_dim * (env_dim + 1), in_dim);
    QuantumChannel::new(stinespring_kraus(&v, out_dim, env_dim + 1, env_dim), ChannelKind::Tni)
}

/// Coarse-graining of a Haar-random projective measurement into `outcomes`
/// non-empty groups.
pub fn random_povm_with<R: Rng + ?Sized>(rng: &mut R, dim: usize, outcomes: usize) -> Result<Povm> {
    if outcomes == 0 || outcomes > dim {
        return Err(Error::BadShape(format!("{outcomes} outcomes in dimension {dim}")));
    }
    let u = haar_unitary(rng, dim);
    let mut order: Vec<usize> = (0..dim).collect();
    for i in (1..dim).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let mut effects = vec![ComplexMatrix::zeros(dim, dim); outcomes];
    for (slot, &col) in order.iter().enumerate() {
        effects[slot % outcomes] += linalg::outer(&u.column(col).into_owned());
    }
    Povm::new(effects)
}

pub fn random_povm(dim: usize, outcomes: usize, seed: u64) -> Result<Povm> {
    random_povm_with(&mut rng_from_seed(seed), dim, outcomes)
}

/// Projects an arbitrary square matrix onto the nearest PSD matrix of unit
/// trace. Only meant for generating test data; validation never calls it.
pub fn sanitize(m: &ComplexMatrix) -> ComplexMatrix {
    let eig = linalg::eigh_unchecked(&linalg::hermitian_part(m));
    let clipped = eig.map(|l| l.max(0.0));
    let tr = linalg::real_trace(&clipped);
    if tr > 0.0 {
        clipped.scale(1.0 / tr)
    } else {
        clipped
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::linalg::{frobenius_norm, trace_norm_hermitian};
    use crate::qstate::state::validate_state;

    #[test]
    fn random_density_is_valid() {
        for seed in 0..20 {
            let rho = random_density(2, 2, seed).unwrap();
            assert!(validate_state(rho.into_matrix(), TraceClass::Normalized, &Default::default()).is_ok());
        }
        assert!(matches!(random_density(2, 3, 0), Err(Error::BadShape(_))));
    }

    #[test]
    fn random_channel_preserves_validity() {
        for seed in 0..20 {
            let ch = random_channel(2, 2, 2, seed).unwrap();
            let rho = random_density(2, 1, seed + 100).unwrap();
            let out = ch.apply(&rho).unwrap();
            assert!(validate_state(out.into_matrix(), TraceClass::Normalized, &Default::default()).is_ok());
        }
    }

    #[test]
    fn random_tni_outputs_subnormalized_states() {
        for seed in 0..20 {
            let ch = random_tni_with(&mut rng_from_seed(seed), 3, 2, 2).unwrap();
            let rho = random_density(3, 3, seed).unwrap();
            let out = ch.apply(&rho).unwrap();
            assert!(out.trace() < 1.0);
            assert!(validate_state(out.into_matrix(), TraceClass::Subnormalized, &Default::default()).is_ok());
        }
    }

    #[test]
    fn samplers_are_deterministic() {
        assert_eq!(random_density(3, 2, 9).unwrap(), random_density(3, 2, 9).unwrap());
        assert_eq!(random_pure(4, 9).unwrap(), random_pure(4, 9).unwrap());
        assert_ne!(trial_seed(1, 0), trial_seed(1, 1));
        assert_ne!(trial_seed(1, 0), trial_seed(2, 0));
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let u = haar_unitary(&mut rng_from_seed(4), 5);
        assert!(frobenius_norm(&(u.adjoint() * &u - linalg::identity(5))) < 1e-12);
    }

    #[test]
    fn random_povm_is_valid() {
        let povm = random_povm(4, 3, 8).unwrap();
        assert_eq!(povm.outcomes(), 3);
        assert!(random_povm(2, 3, 0).is_err());
    }

    #[test]
    fn ginibre_states_average_to_maximally_mixed() {
        let mut rng = rng_from_seed(2024);
        let mut mean = ComplexMatrix::zeros(2, 2);
        let n = 10_000;
        for _ in 0..n {
            mean += random_density_with(&mut rng, 2, 2).unwrap().matrix();
        }
        mean /= C64::new(n as f64, 0.0);
        let dist = trace_norm_hermitian(&(mean - linalg::identity(2).scale(0.5)));
        assert!(dist < 0.05, "trace distance {dist}");
    }
}
