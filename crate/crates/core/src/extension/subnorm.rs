//! Optimal extensions to subnormalized states.
//!
//! The maximal extension of a divergence to subnormalized inputs is the base
//! divergence on the direct sums `ρ̃ ⊕ (1 - Tr ρ̃)` and `σ̃ ⊕ (1 - Tr σ̃)`; the
//! named distances below are its closed forms.

use crate::divergence::quantum::{d_max_raw, fidelity_raw, support_contained, trace_distance_raw, umegaki_raw, Spectral};
use crate::divergence::{Divergence, DivergenceValue};
use crate::error::Result;
use crate::qstate::linalg::{direct_sum_scalar, DEFAULT_CUTOFF};
use crate::qstate::state::same_dim;
use crate::qstate::{DensityState, TraceClass};

/// Residual traces at or below this count as zero.
const RESIDUAL_TOL: f64 = 1e-12;

fn residual(rho: &DensityState) -> f64 {
    (1.0 - rho.trace()).max(0.0)
}

/// `ρ̃ ⊕ (1 - Tr ρ̃)` on dimension `dim + 1`, the flag being the last basis vector.
pub fn direct_sum_embedding(rho: &DensityState) -> DensityState {
    DensityState::from_trusted(direct_sum_scalar(rho.matrix(), residual(rho)), TraceClass::Normalized)
}

/// Any named divergence evaluated on the direct-sum embeddings.
pub fn extend_subnormalized(
    divergence: &Divergence,
    rho: &DensityState,
    sigma: &DensityState,
) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    divergence.evaluate(&direct_sum_embedding(rho), &direct_sum_embedding(sigma))
}

/// `½‖ρ̃ - σ̃‖₁ + ½|Tr ρ̃ - Tr σ̃|`.
pub fn generalized_trace_distance(rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    let v = 0.5 * trace_distance_raw(rho.matrix(), sigma.matrix()) + 0.5 * (rho.trace() - sigma.trace()).abs();
    Ok(DivergenceValue::new(v))
}

/// `‖√ρ̃ √σ̃‖₁ + √((1 - Tr ρ̃)(1 - Tr σ̃))`.
pub fn generalized_fidelity(rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    Ok(DivergenceValue::new(generalized_fidelity_value(rho, sigma)))
}

fn generalized_fidelity_value(rho: &DensityState, sigma: &DensityState) -> f64 {
    let f = fidelity_raw(rho.matrix(), sigma.matrix()) + (residual(rho) * residual(sigma)).sqrt();
    f.clamp(0.0, 1.0)
}

/// `√(1 - F̄²)` with `F̄` the generalized fidelity.
pub fn purified_distance(rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    let f = generalized_fidelity_value(rho, sigma);
    Ok(DivergenceValue::new((1.0 - f * f).max(0.0).sqrt()))
}

/// `D(ρ̃‖σ̃) + (1 - Tr ρ̃) log((1 - Tr ρ̃)/(1 - Tr σ̃))`, where `D` is the
/// Umegaki expression on unnormalized operators.
pub fn extended_umegaki(rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    let (r, s) = (residual(rho), residual(sigma));
    let ss = Spectral::of(sigma.matrix());
    let rs_zero = Spectral::of(rho.matrix()).is_zero();
    if !rs_zero && (ss.is_zero() || !support_contained(rho.matrix(), &ss.projector())) {
        return Ok(DivergenceValue::INFINITY);
    }
    let flag = if r <= RESIDUAL_TOL {
        0.0
    } else if s <= RESIDUAL_TOL {
        return Ok(DivergenceValue::INFINITY);
    } else {
        r * (r / s).log2()
    };
    let base = umegaki_raw(rho.matrix(), sigma.matrix(), DEFAULT_CUTOFF);
    Ok(DivergenceValue::new(base.value() + flag))
}

/// `log max{2^{D_max(ρ̃‖σ̃)}, (1 - Tr ρ̃)/(1 - Tr σ̃)}`.
pub fn extended_d_max(rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    let base = d_max_raw(rho.matrix(), sigma.matrix()).value();
    let (r, s) = (residual(rho), residual(sigma));
    let flag = if r <= RESIDUAL_TOL {
        f64::NEG_INFINITY
    } else if s <= RESIDUAL_TOL {
        f64::INFINITY
    } else {
        (r / s).log2()
    };
    Ok(DivergenceValue::new(base.max(flag)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergence::{d_max, fidelity, trace_distance, umegaki};
    use crate::qstate::random;

    fn close(a: DivergenceValue, b: f64) -> bool {
        (a.value() - b).abs() < 1e-12
    }

    fn sub(rho: &DensityState, t: f64) -> DensityState {
        rho.scaled(t).unwrap()
    }

    #[test]
    fn reduction_on_normalized_pairs() {
        let r = random::random_density(3, 2, 1).unwrap();
        let s = random::random_density(3, 3, 2).unwrap();
        assert!(close(generalized_trace_distance(&r, &s).unwrap(), trace_distance(&r, &s).unwrap().value()));
        assert!(close(generalized_fidelity(&r, &s).unwrap(), fidelity(&r, &s).unwrap().value()));
        assert!(close(extended_umegaki(&r, &s).unwrap(), umegaki(&r, &s, DEFAULT_CUTOFF).unwrap().value()));
        assert!(close(extended_d_max(&r, &s).unwrap(), d_max(&r, &s).unwrap().value()));
        let f = fidelity(&r, &s).unwrap().value();
        assert!(close(purified_distance(&r, &s).unwrap(), (1.0 - f * f).sqrt()));
    }

    #[test]
    fn zero_operators() {
        let z = DensityState::zero(2);
        assert!(close(extend_subnormalized(&Divergence::Umegaki, &z, &z).unwrap(), 0.0));
        assert!(close(generalized_fidelity(&z, &z).unwrap(), 1.0));
        let s = DensityState::maximally_mixed(2);
        assert!(close(generalized_trace_distance(&z, &s).unwrap(), 1.0));
    }

    #[test]
    fn closed_forms_by_hand() {
        let zero = DensityState::basis(2, 0);
        assert!(close(generalized_trace_distance(&sub(&zero, 0.5), &zero).unwrap(), 0.5));
        let r = random::random_density(3, 3, 3).unwrap();
        assert!(close(generalized_fidelity(&sub(&r, 0.3), &sub(&r, 0.3)).unwrap(), 1.0));
        assert!(close(extended_umegaki(&sub(&r, 0.5), &sub(&r, 0.5)).unwrap(), 0.0));
        let expected = 0.5 * (0.5f64 / 0.75).log2() + 0.5 * (0.5f64 / 0.25).log2();
        let v = extended_umegaki(&sub(&zero, 0.5), &sub(&zero, 0.75)).unwrap();
        assert!((v.value() - expected).abs() < 1e-12);
        assert!((extended_d_max(&sub(&r, 0.5), &sub(&r, 0.75)).unwrap().value() - 1.0).abs() < 1e-9);
        let v = purified_distance(&zero, &DensityState::maximally_mixed(2)).unwrap();
        assert!(close(v, std::f64::consts::FRAC_1_SQRT_2));
    }

    #[test]
    fn closed_forms_agree_with_direct_sum() {
        for seed in 0..10 {
            let mut rng = random::rng_from_seed(seed);
            let r = random::random_subnormalized_with(&mut rng, 3, 2).unwrap();
            let s = random::random_subnormalized_with(&mut rng, 3, 3).unwrap();
            let td = extend_subnormalized(&Divergence::TraceDistance, &r, &s).unwrap();
            assert!((generalized_trace_distance(&r, &s).unwrap().value() - td.value()).abs() < 1e-10);
            let f = extend_subnormalized(&Divergence::Fidelity, &r, &s).unwrap();
            assert!((generalized_fidelity(&r, &s).unwrap().value() - f.value()).abs() < 1e-10);
            let u = extend_subnormalized(&Divergence::Umegaki, &r, &s).unwrap();
            assert!((extended_umegaki(&r, &s).unwrap().value() - u.value()).abs() < 1e-9);
            let m = extend_subnormalized(&Divergence::DMax, &r, &s).unwrap();
            assert!((extended_d_max(&r, &s).unwrap().value() - m.value()).abs() < 1e-9);
        }
    }

    #[test]
    fn extended_d_max_ignores_flag_when_sigma_is_lighter() {
        let r = random::random_density(2, 2, 5).unwrap();
        let s = random::random_density(2, 2, 6).unwrap();
        let (rt, st) = (sub(&r, 0.8), sub(&s, 0.6));
        let plain = d_max(&rt, &st).unwrap().value();
        assert!((extended_d_max(&rt, &st).unwrap().value() - plain).abs() < 1e-12);
    }

    #[test]
    fn extended_umegaki_flag_support() {
        let r = DensityState::maximally_mixed(2);
        assert!(extended_umegaki(&sub(&r, 0.5), &r).unwrap().is_infinite());
    }
}
