//! One-shot quantities: information-spectrum divergence `D_s^ε`,
//! hypothesis-testing divergence `D_h^ε` and the constructive lower bound on
//! the smoothed min-relative entropy.

use super::quantum::{support_contained, Spectral};
use super::value::DivergenceValue;
use crate::error::{Error, Result};
use crate::qstate::linalg::{self, eigh_unchecked, singular_values, ComplexMatrix};
use crate::qstate::state::same_dim;
use crate::qstate::DensityState;

/// Relative offset used to probe just below/above a breakpoint of the pencil.
const PROBE: f64 = 1e-8;
/// Breakpoints closer than this (relative) are merged.
const MERGE: f64 = 1e-7;
const MAX_BISECTIONS: usize = 200;

pub(crate) fn check_epsilon(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::BadEpsilon(eps))
    }
}

/// Eigenvalue threshold separating "zero" from signed eigenvalues of `ρ - tσ`.
fn zero_band(t: f64) -> f64 {
    1e-10 * (1.0 + t)
}

/// `Tr[ρ {ρ ≤ tσ}]`, the mass of `ρ` on the non-positive eigenspace of `ρ - tσ`.
fn lower_mass(rho: &ComplexMatrix, sigma: &ComplexMatrix, t: f64) -> f64 {
    let eig = eigh_unchecked(&(rho - sigma.scale(t)));
    let band = 1e-13 * (1.0 + t);
    eig.eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l <= band)
        .map(|(i, _)| linalg::expectation(rho, &eig.vector(i)))
        .sum()
}

/// `log₂` of the positive generalized eigenvalues of the pencil `(ρ, σ)` on
/// `supp σ`, ascending and with near-duplicates merged.
pub fn pencil_breakpoints(rho: &DensityState, sigma: &DensityState) -> Result<Vec<f64>> {
    same_dim(rho, sigma)?;
    Ok(breakpoints_raw(rho.matrix(), sigma.matrix()))
}

fn breakpoints_raw(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Vec<f64> {
    let ss = Spectral::of(sigma);
    if ss.is_zero() {
        return Vec::new();
    }
    let rs = Spectral::of(rho);
    let c = ss.power(-0.5) * rs.power(0.5);
    let sv = singular_values(&c);
    let top = sv.first().copied().unwrap_or(0.0);
    let mut logs: Vec<f64> = sv
        .iter()
        .filter(|&&s| s > 1e-7 * top && s > 0.0)
        .map(|&s| 2.0 * s.log2())
        .collect();
    logs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let mut merged: Vec<f64> = Vec::with_capacity(logs.len());
    for b in logs {
        match merged.last() {
            Some(&prev) if (b - prev) * std::f64::consts::LN_2 <= MERGE => {}
            _ => merged.push(b),
        }
    }
    merged
}

/// Mass that `ρ` keeps on `{ρ > tσ}` as `t → ∞`: the weight on the support of
/// the compression of `ρ` to `ker σ`.
fn mass_outside_support(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> f64 {
    let ss = Spectral::of(sigma);
    let d = rho.nrows();
    let comp = if ss.is_zero() {
        linalg::identity(d)
    } else {
        linalg::identity(d) - ss.projector()
    };
    let outside = &comp * rho * &comp;
    let eig = eigh_unchecked(&outside);
    if eig.max_eigenvalue() <= 1e-12 {
        return 0.0;
    }
    let proj = eig.projector(|l| l > 1e-12);
    linalg::trace_product(&proj, rho).re
}

/// Information-spectrum divergence `sup{R : Tr[ρ {ρ ≤ 2^R σ}] ≤ ε}`.
///
/// `Tr[ρ {ρ ≤ tσ}]` is nondecreasing in `t` and jumps only at the pencil
/// breakpoints, so the supremum is either a breakpoint (found by binary
/// search over the breakpoints) or, for non-commuting pairs, a crossing inside
/// one interval located by bisection.
pub fn d_s_epsilon(rho: &DensityState, sigma: &DensityState, eps: f64) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    rho.require_normalized()?;
    check_epsilon(eps)?;
    let (r, s) = (rho.matrix(), sigma.matrix());
    let f = |x: f64| lower_mass(r, s, x.exp2());
    let below = |b: f64| f(b + (1.0 - PROBE).log2());
    let above = |b: f64| f(b + (1.0 + PROBE).log2());

    let limit = rho.trace() - mass_outside_support(r, s);
    if limit <= eps {
        return Ok(DivergenceValue::INFINITY);
    }
    let bps = breakpoints_raw(r, s);

    // First breakpoint whose right limit exceeds ε.
    let (mut lo_i, mut hi_i) = (0usize, bps.len());
    while lo_i < hi_i {
        let mid = (lo_i + hi_i) / 2;
        if above(bps[mid]) > eps {
            hi_i = mid;
        } else {
            lo_i = mid + 1;
        }
    }
    let j = lo_i;

    if j < bps.len() && below(bps[j]) <= eps {
        return Ok(DivergenceValue::new(bps[j]));
    }

    // The crossing lies strictly inside an interval on which f is continuous.
    let (mut lo, mut hi) = match (j.checked_sub(1).map(|k| bps[k]), bps.get(j).copied()) {
        (Some(a), Some(b)) => (a + (1.0 + PROBE).log2(), b + (1.0 - PROBE).log2()),
        (None, Some(b)) => {
            let hi = b + (1.0 - PROBE).log2();
            let mut step = 1.0;
            let mut lo = hi - step;
            let mut guard = 0;
            while f(lo) > eps && guard < 64 {
                step *= 2.0;
                lo = hi - step;
                guard += 1;
            }
            (lo, hi)
        }
        (Some(a), None) => {
            let lo = a + (1.0 + PROBE).log2();
            let mut step = 1.0;
            let mut hi = lo + step;
            let mut guard = 0;
            while f(hi) <= eps && guard < 64 {
                step *= 2.0;
                hi = lo + step;
                guard += 1;
            }
            if f(hi) <= eps {
                return Ok(DivergenceValue::INFINITY);
            }
            (lo, hi)
        }
        (None, None) => return Ok(DivergenceValue::INFINITY),
    };
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= 1e-12 * (1.0 + lo.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) <= eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(DivergenceValue::new(lo))
}

/// Optimal Neyman–Pearson test at threshold `t`: the positive eigenspace of
/// `ρ - tσ` plus a uniform fractional weight on its (numerically) zero
/// eigenspace, chosen so that `Tr[ρΠ] = target` when possible.
fn neyman_pearson_test(rho: &ComplexMatrix, sigma: &ComplexMatrix, t: f64, target: f64) -> ComplexMatrix {
    let eig = eigh_unchecked(&(rho - sigma.scale(t)));
    let band = zero_band(t);
    let pos = eig.projector(|l| l > band);
    let zero = eig.projector(|l| l.abs() <= band);
    let a = linalg::trace_product(&pos, rho).re;
    let b = linalg::trace_product(&zero, rho).re;
    let w = if b > 0.0 {
        ((target - a) / b).clamp(0.0, 1.0)
    } else {
        0.0
    };
    pos + zero.scale(w)
}

/// `Tr[ρ {ρ - tσ ≥ 0}]`, nonincreasing in `t`.
fn upper_mass(rho: &ComplexMatrix, sigma: &ComplexMatrix, t: f64) -> f64 {
    let eig = eigh_unchecked(&(rho - sigma.scale(t)));
    let band = zero_band(t);
    eig.eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l >= -band)
        .map(|(i, _)| linalg::expectation(rho, &eig.vector(i)))
        .sum()
}

/// Hypothesis-testing divergence `-log₂ min{Tr[σΠ] : 0 ≤ Π ≤ I, Tr[ρΠ] ≥ 1-ε}`.
pub fn d_h_epsilon(rho: &DensityState, sigma: &DensityState, eps: f64) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    rho.require_normalized()?;
    check_epsilon(eps)?;
    Ok(d_h_raw(rho.matrix(), sigma.matrix(), eps))
}

pub(crate) fn d_h_raw(rho: &ComplexMatrix, sigma: &ComplexMatrix, eps: f64) -> DivergenceValue {
    let target = 1.0 - eps;
    let ss = Spectral::of(sigma);
    if ss.is_zero() {
        return DivergenceValue::INFINITY;
    }
    let outside = linalg::real_trace(rho) - linalg::trace_product(&ss.projector(), rho).re;
    if outside >= target {
        return DivergenceValue::INFINITY;
    }
    let dmax = super::quantum::d_max_raw(rho, sigma).value();
    let mut hi = if dmax.is_finite() { dmax.exp2() + 1.0 } else { 2.0 };
    let mut guard = 0;
    while upper_mass(rho, sigma, hi) >= target && guard < 200 {
        hi *= 2.0;
        guard += 1;
    }
    let mut lo = 0.0;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-14 * hi {
            break;
        }
        if upper_mass(rho, sigma, mid) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let test = neyman_pearson_test(rho, sigma, lo, target);
    let type2 = linalg::trace_product(&test, sigma).re;
    if type2 <= 0.0 {
        return DivergenceValue::INFINITY;
    }
    DivergenceValue::new(-type2.log2())
}

/// Constructive lower bound on the smoothed min-relative entropy `D_min^ε`:
/// with `λ = D_s^{ε²/2}(ρ‖σ)` and `P = {ρ > 2^{λ-δ} σ}`, returns `-log₂ Tr[Pσ]`.
pub fn d_min_epsilon_lower(rho: &DensityState, sigma: &DensityState, eps: f64) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    rho.require_normalized()?;
    check_epsilon(eps)?;
    let ss = Spectral::of(sigma.matrix());
    if ss.is_zero() || !support_contained(rho.matrix(), &ss.projector()) {
        return Err(Error::SupportViolation);
    }
    let lambda = d_s_epsilon(rho, sigma, eps * eps / 2.0)?.value();
    let t = (lambda - 1e-9).exp2();
    let p = lower_test(rho.matrix(), sigma.matrix(), t);
    let mass = linalg::trace_product(&p, sigma.matrix()).re;
    if mass <= 0.0 {
        return Ok(DivergenceValue::INFINITY);
    }
    Ok(DivergenceValue::new(-mass.log2()))
}

/// Projector onto the strictly positive eigenspace of `ρ - tσ`.
fn lower_test(rho: &ComplexMatrix, sigma: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let eig = eigh_unchecked(&(rho - sigma.scale(t)));
    let band = 1e-13 * (1.0 + t);
    eig.projector(|l| l > band)
}
