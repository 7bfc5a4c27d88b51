//! Suite implementations, grouped by the module they exercise.

pub(crate) mod divergences;
pub(crate) mod entanglement;
pub(crate) mod extensions;
pub(crate) mod oneshot;

use rand::Rng;

use super::trial::Trial;
use crate::divergence::{ClassicalDivergence, Divergence};
use crate::error::Result;
use crate::qstate::random::{random_channel_with, random_density_with, random_full_rank_with, random_tni_with, StateRng};
use crate::qstate::{DensityState, QuantumChannel};

/// Relative entropies exercised by default wherever a known result covers the
/// whole family.
pub(crate) const RELATIVE_ENTROPIES: &[&str] = &[
    "umegaki",
    "dmin",
    "dmax",
    "petz:0.5",
    "petz:1.5",
    "petz:2",
    "sandwiched:0.5",
    "sandwiched:0.7",
    "sandwiched:2",
    "sandwiched:5",
    "sandwiched:inf",
    "geometric:0.5",
    "geometric:2",
];

/// Classical relative entropies whose quantum extensions are exercised.
pub(crate) fn classical_relative_entropies() -> [ClassicalDivergence; 4] {
    [
        ClassicalDivergence::Kl,
        ClassicalDivergence::renyi(0.5),
        ClassicalDivergence::renyi(2.0),
        ClassicalDivergence::renyi(3.0),
    ]
}

pub(crate) fn require_relative_entropies(list: &[Divergence], suite: &str) -> Result<()> {
    match list.iter().find(|d| !d.is_relative_entropy()) {
        Some(d) => Err(crate::Error::BadConfig(format!(
            "{suite} applies to relative entropies only; {d} is not one"
        ))),
        None => Ok(()),
    }
}

/// Random state of uniformly random rank.
pub(crate) fn random_state(t: &mut Trial) -> Result<DensityState> {
    let rank = t.rng.random_range(1..=t.dim);
    random_density_with(&mut t.rng, t.dim, rank)
}

/// Random full-rank state (Ginibre, no conditioning).
pub(crate) fn random_faithful(t: &mut Trial) -> Result<DensityState> {
    random_density_with(&mut t.rng, t.dim, t.dim)
}

/// Random full-rank state with smallest eigenvalue at least `0.01`.
pub(crate) fn random_conditioned(t: &mut Trial) -> Result<DensityState> {
    random_full_rank_with(&mut t.rng, t.dim, 0.01)
}

/// Random probability vector; with `sparse`, each entry is zeroed with
/// probability ½ (at least one entry survives).
pub(crate) fn random_distribution(rng: &mut StateRng, dim: usize, sparse: bool) -> Vec<f64> {
    let mut p: Vec<f64> = (0..dim).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    if sparse {
        let keep = rng.random_range(0..dim);
        for (i, x) in p.iter_mut().enumerate() {
            if i != keep && rng.random::<bool>() {
                *x = 0.0;
            }
        }
    }
    let total: f64 = p.iter().sum();
    p.iter().map(|x| x / total).collect()
}

/// Output dimension in `[2, d]` and an environment large enough for a
/// Stinespring isometry (with `extra` spare environment levels).
fn channel_shape(rng: &mut StateRng, d: usize, extra: usize) -> (usize, usize) {
    let out = rng.random_range(2..=d);
    let env_min = d.div_ceil(out).saturating_sub(extra).max(1);
    (out, rng.random_range(env_min..=d.max(env_min)))
}

pub(crate) fn random_cptp(t: &mut Trial) -> Result<QuantumChannel> {
    let (out, env) = channel_shape(&mut t.rng, t.dim, 0);
    random_channel_with(&mut t.rng, t.dim, out, env)
}

pub(crate) fn random_tni(t: &mut Trial) -> Result<QuantumChannel> {
    let (out, env) = channel_shape(&mut t.rng, t.dim, 1);
    random_tni_with(&mut t.rng, t.dim, out, env)
}

/// `(1 - t) ω + t τ`.
pub(crate) fn mix(omega: &DensityState, tau: &DensityState, t: f64) -> DensityState {
    let m = omega.matrix().scale(1.0 - t) + tau.matrix().scale(t);
    DensityState::from_trusted(m, crate::qstate::TraceClass::Normalized)
}
