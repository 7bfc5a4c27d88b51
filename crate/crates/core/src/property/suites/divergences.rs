//! Suites on the named divergences: sandwich bounds, data processing, the
//! binary identity, additivity, the triangle and continuity bounds,
//! faithfulness and the α = 2 geometric/Petz coincidence.

use rand::Rng;

use super::{
    mix, random_conditioned, random_cptp, random_distribution, random_faithful, random_state, random_tni,
    require_relative_entropies, RELATIVE_ENTROPIES,
};
use crate::divergence::{d_max, d_min, trace_distance, Divergence};
use crate::error::{Error, Result};
use crate::extension::{
    extend_subnormalized, extended_d_max, extended_umegaki, generalized_fidelity, generalized_trace_distance,
    purified_distance,
};
use crate::property::config::SuiteConfig;
use crate::property::trial::{Suite, Trial};
use crate::qstate::linalg::{eigh_unchecked, operator_norm_hermitian};
use crate::qstate::random::{haar_isometry, random_density_with, random_subnormalized_with};
use crate::qstate::{tensor, DensityState, TraceClass};

fn eval(d: &Divergence, rho: &DensityState, sigma: &DensityState) -> Result<f64> {
    Ok(d.evaluate(rho, sigma)?.value())
}

/// `D_min ≤ D ≤ D_max` for relative entropies on pairs with common support.
pub(crate) struct Sandwich {
    divergences: Vec<Divergence>,
}

const SANDWICH_DEFAULT: &[&str] = &[
    "umegaki",
    "sandwiched:0.5",
    "sandwiched:0.7",
    "sandwiched:2",
    "sandwiched:5",
    "sandwiched:inf",
    "geometric:0.5",
    "geometric:2",
];

impl Sandwich {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        let divergences = c.extra_divergences("divergences", SANDWICH_DEFAULT)?;
        require_relative_entropies(&divergences, "sandwich")?;
        Ok(Box::new(Self { divergences }))
    }
}

/// Pair sharing a random support of random rank (full rank on even trials).
fn common_support_pair(t: &mut Trial) -> Result<(DensityState, DensityState)> {
    let d = t.dim;
    let r = if t.index.is_multiple_of(2) { d } else { t.rng.random_range(1..=d) };
    let v = haar_isometry(&mut t.rng, d, r);
    let mut embed = || -> Result<DensityState> {
        let inner = random_density_with(&mut t.rng, r, r)?;
        let m = &v * inner.matrix() * v.adjoint();
        Ok(DensityState::from_trusted(
            crate::qstate::linalg::hermitian_part(&m),
            TraceClass::Normalized,
        ))
    };
    Ok((embed()?, embed()?))
}

impl Suite for Sandwich {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let (rho, sigma) = common_support_pair(t)?;
        let lo = d_min(&rho, &sigma)?.value();
        let hi = d_max(&rho, &sigma)?.value();
        t.diag("dmin", lo);
        t.diag("dmax", hi);
        for d in &self.divergences {
            let v = eval(d, &rho, &sigma)?;
            t.diag(d.to_string(), v);
            t.le(format!("dmin<={d}"), lo, v);
            t.le(format!("{d}<=dmax"), v, hi);
        }
        Ok(())
    }
}

/// Data processing under random CPTP maps; optionally, the subnormalized
/// extensions under random trace non-increasing maps.
pub(crate) struct Dpi {
    divergences: Vec<Divergence>,
    tni: bool,
}

/// Divergences whose data processing is asserted for CPTP maps only.
pub const CPTP_ONLY: &[&str] = &["dmin"];

const DPI_DEFAULT: &[&str] = &[
    "trace-distance",
    "fidelity",
    "umegaki",
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

impl Dpi {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        let divergences = c.extra_divergences("divergences", DPI_DEFAULT)?;
        let tni = c.extra_bool("tni", true)?;
        if tni {
            if let Some(d) = divergences.iter().find(|d| CPTP_ONLY.contains(&d.to_string().as_str())) {
                return Err(Error::BadConfig(format!(
                    "unsupported: data processing of {d} is guaranteed only under CPTP maps; set extra.tni = false"
                )));
            }
        }
        Ok(Box::new(Self { divergences, tni }))
    }
}

impl Suite for Dpi {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let rho = random_state(t)?;
        let sigma = random_faithful(t)?;
        let channel = random_cptp(t)?;
        let (out_rho, out_sigma) = (channel.apply(&rho)?, channel.apply(&sigma)?);
        t.diag("out_dim", channel.out_dim() as f64);
        for d in &self.divergences {
            let before = eval(d, &rho, &sigma)?;
            let after = eval(d, &out_rho, &out_sigma)?;
            t.diag(format!("{d}"), before);
            t.diag(format!("{d}:out"), after);
            if d.is_similarity() {
                t.le(d.to_string(), before, after);
            } else {
                t.le(d.to_string(), after, before);
            }
        }
        if !self.tni {
            return Ok(());
        }
        let rank = t.rng.random_range(1..=t.dim);
        let a = random_subnormalized_with(&mut t.rng, t.dim, rank)?;
        let b = random_subnormalized_with(&mut t.rng, t.dim, t.dim)?;
        let map = random_tni(t)?;
        let (fa, fb) = (map.apply(&a)?, map.apply(&b)?);
        type Closed = fn(&DensityState, &DensityState) -> Result<crate::divergence::DivergenceValue>;
        let closed: [(&str, Closed); 4] = [
            ("generalized-trace-distance", generalized_trace_distance),
            ("purified-distance", purified_distance),
            ("extended-umegaki", extended_umegaki),
            ("extended-dmax", extended_d_max),
        ];
        for (name, f) in closed {
            let (before, after) = (f(&a, &b)?.value(), f(&fa, &fb)?.value());
            t.diag(format!("tni:{name}"), before);
            t.le(format!("tni:{name}"), after, before);
        }
        let (before, after) = (generalized_fidelity(&a, &b)?.value(), generalized_fidelity(&fa, &fb)?.value());
        t.diag("tni:generalized-fidelity", before);
        t.le("tni:generalized-fidelity", before, after);
        for d in &self.divergences {
            let before = extend_subnormalized(d, &a, &b)?.value();
            let after = extend_subnormalized(d, &fa, &fb)?.value();
            if d.is_similarity() {
                t.le(format!("tni:{d}"), before, after);
            } else {
                t.le(format!("tni:{d}"), after, before);
            }
        }
        Ok(())
    }
}

/// Every relative entropy maps `(|0⟩⟨0|, diag(1-ε, ε))` to `-log(1-ε)`.
pub(crate) struct BinaryIdentity {
    divergences: Vec<Divergence>,
    epsilons: Vec<f64>,
}

impl BinaryIdentity {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        let divergences = c.extra_divergences("divergences", RELATIVE_ENTROPIES)?;
        require_relative_entropies(&divergences, "eq1")?;
        let epsilons = c.extra_f64_list("epsilons", &[0.1, 0.25, 0.5, 0.9])?;
        if epsilons.is_empty() || epsilons.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
            return Err(Error::BadConfig("extra.epsilons: need values in (0, 1)".into()));
        }
        Ok(Box::new(Self { divergences, epsilons }))
    }
}

impl Suite for BinaryIdentity {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let eps = self.epsilons[t.index % self.epsilons.len()];
        let rho = DensityState::from_diagonal(&[1.0, 0.0])?;
        let sigma = DensityState::from_diagonal(&[1.0 - eps, eps])?;
        let expected = -(1.0 - eps).log2();
        t.diag("epsilon", eps);
        t.diag("expected", expected);
        for d in &self.divergences {
            let v = eval(d, &rho, &sigma)?;
            t.diag(d.to_string(), v);
            t.close(d.to_string(), v, expected);
        }
        for kind in super::classical_relative_entropies() {
            let v = crate::extension::maximal_classical_extension_ansatz(kind, &rho, &sigma)?.value();
            t.close(format!("maximal:{kind}"), v, expected);
            let strategy = crate::divergence::MeasurementStrategy::PencilEigenbasis;
            let v = crate::extension::minimal_classical_extension_lower(kind, &rho, &sigma, &strategy)?.value();
            t.close(format!("minimal:{kind}"), v, expected);
        }
        Ok(())
    }
}

/// `D(ρ₁⊗ρ₂‖σ₁⊗σ₂) = D(ρ₁‖σ₁) + D(ρ₂‖σ₂)`, the second factor a qubit.
pub(crate) struct Additivity {
    divergences: Vec<Divergence>,
}

impl Additivity {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        let divergences = c.extra_divergences("divergences", RELATIVE_ENTROPIES)?;
        require_relative_entropies(&divergences, "additivity")?;
        Ok(Box::new(Self { divergences }))
    }
}

impl Suite for Additivity {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let (r1, s1) = (random_state(t)?, random_faithful(t)?);
        let rank = t.rng.random_range(1..=2);
        let r2 = random_density_with(&mut t.rng, 2, rank)?;
        let s2 = random_density_with(&mut t.rng, 2, 2)?;
        let (r, s) = (tensor(&r1, &r2)?, tensor(&s1, &s2)?);
        for d in &self.divergences {
            let joint = eval(d, &r, &s)?;
            let sum = eval(d, &r1, &s1)? + eval(d, &r2, &s2)?;
            t.diag(d.to_string(), joint);
            t.close(d.to_string(), joint, sum);
        }
        Ok(())
    }
}

/// `D(ρ‖σ) ≤ D(ρ‖ω) + D_max(ω‖σ)`.
pub(crate) struct Triangle {
    divergences: Vec<Divergence>,
}

impl Triangle {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        let divergences = c.extra_divergences("divergences", RELATIVE_ENTROPIES)?;
        require_relative_entropies(&divergences, "triangle")?;
        Ok(Box::new(Self { divergences }))
    }
}

impl Suite for Triangle {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let rho = random_state(t)?;
        let sigma = random_conditioned(t)?;
        let omega = random_conditioned(t)?;
        let dmax = d_max(&omega, &sigma)?.value();
        t.diag("dmax(omega|sigma)", dmax);
        for d in &self.divergences {
            let lhs = eval(d, &rho, &sigma)?;
            let via = eval(d, &rho, &omega)?;
            t.diag(d.to_string(), lhs);
            t.le(d.to_string(), lhs, via + dmax);
        }
        Ok(())
    }
}

/// Continuity bounds in either argument for premise-satisfying triples.
pub(crate) struct Continuity {
    divergences: Vec<Divergence>,
}

impl Continuity {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        let divergences = c.extra_divergences("divergences", RELATIVE_ENTROPIES)?;
        require_relative_entropies(&divergences, "continuity")?;
        Ok(Box::new(Self { divergences }))
    }
}

/// A state `(1-t)ω + tτ` with `‖· - ω‖∞` uniformly below `λ_min(ω)`.
fn perturbation(t: &mut Trial, omega: &DensityState, lambda: f64) -> Result<(DensityState, f64)> {
    let tau = random_state(t)?;
    let spread = operator_norm_hermitian(&(tau.matrix() - omega.matrix()));
    let limit = if spread > 0.0 { (lambda / spread).min(1.0) } else { 1.0 };
    let w = t.rng.random::<f64>() * limit;
    let out = mix(omega, &tau, w);
    let norm = operator_norm_hermitian(&(out.matrix() - omega.matrix()));
    Ok((out, norm))
}

impl Suite for Continuity {
    fn run(&self, t: &mut Trial) -> Result<()> {
        // Second argument: σ near ω.
        let rho = random_state(t)?;
        let omega = random_conditioned(t)?;
        let lam_omega = eigh_unchecked(omega.matrix()).min_eigenvalue();
        let (sigma, norm) = perturbation(t, &omega, lam_omega)?;
        let bound = -(1.0 - norm / lam_omega).log2();
        t.diag("second:norm", norm);
        t.diag("second:bound", bound);
        t.le("second:dmax", d_max(&omega, &sigma)?.value(), bound);
        for d in &self.divergences {
            let (a, b) = (eval(d, &rho, &sigma)?, eval(d, &rho, &omega)?);
            t.le(format!("second:{d}"), a, b + bound);
        }

        // First argument: ρ near ω, σ full rank.
        let sigma = random_conditioned(t)?;
        let omega = random_conditioned(t)?;
        let lam_sigma = eigh_unchecked(sigma.matrix()).min_eigenvalue();
        let lam_omega = eigh_unchecked(omega.matrix()).min_eigenvalue();
        let (rho, norm) = perturbation(t, &omega, lam_omega)?;
        let bound = (1.0 + norm / (lam_omega * lam_sigma)).log2();
        t.diag("first:norm", norm);
        t.diag("first:bound", bound);
        for d in &self.divergences {
            let (a, b) = (eval(d, &rho, &sigma)?, eval(d, &omega, &sigma)?);
            t.le(format!("first:{d}"), a, b + bound);
        }
        Ok(())
    }
}

/// Faithfulness: `D(ρ‖ρ) = 0`, and a value below `value_threshold` forces
/// the trace distance below `distance_threshold`; `D_min` is shown to be
/// unfaithful on classical pairs with equal support.
pub(crate) struct Faithful {
    divergences: Vec<Divergence>,
    value_threshold: f64,
    distance_threshold: f64,
}

const FAITHFUL_DEFAULT: &[&str] = &[
    "umegaki",
    "petz:0.5",
    "petz:2",
    "sandwiched:0.5",
    "sandwiched:2",
    "geometric:0.5",
    "geometric:2",
    "dmax",
];

impl Faithful {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        let divergences = c.extra_divergences("divergences", FAITHFUL_DEFAULT)?;
        if divergences.iter().any(|d| matches!(d, Divergence::DMin)) {
            return Err(Error::BadConfig("dmin is not faithful; it is checked separately".into()));
        }
        Ok(Box::new(Self {
            divergences,
            value_threshold: c.extra_f64("value_threshold", 1e-8)?,
            distance_threshold: c.extra_f64("distance_threshold", 1e-4)?,
        }))
    }
}

impl Suite for Faithful {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let rho = random_state(t)?;
        let tau = random_state(t)?;
        let w = 10f64.powf(t.rng.random_range(-10.0..-2.0));
        let sigma = mix(&rho, &tau, w);
        let td = trace_distance(&rho, &sigma)?.value();
        t.diag("weight", w);
        t.diag("trace_distance", td);
        for d in &self.divergences {
            let zero = eval(d, &rho, &rho)?;
            t.close(format!("self:{d}"), zero, 0.0);
            let v = eval(d, &rho, &sigma)?;
            t.diag(d.to_string(), v);
            t.holds(
                format!("implication:{d}"),
                !(v <= self.value_threshold && td > self.distance_threshold),
            );
        }
        let p = random_distribution(&mut t.rng, t.dim, false);
        let q = random_distribution(&mut t.rng, t.dim, false);
        let dmin = d_min(&DensityState::from_diagonal(&p)?, &DensityState::from_diagonal(&q)?)?.value();
        t.diag("dmin:classical", dmin);
        t.close("dmin:classical-zero", dmin, 0.0);
        Ok(())
    }
}

/// `D̄₂ = D̃₂` (geometric and Petz agree at order 2).
pub(crate) struct GeometricPetz;

impl GeometricPetz {
    pub(crate) fn build(_: &SuiteConfig) -> Result<Box<dyn Suite>> {
        Ok(Box::new(Self))
    }
}

impl Suite for GeometricPetz {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let rho = random_state(t)?;
        let sigma = random_faithful(t)?;
        let g = eval(&Divergence::geometric(2.0), &rho, &sigma)?;
        let p = eval(&Divergence::petz(2.0), &rho, &sigma)?;
        t.diag("geometric", g);
        t.diag("petz", p);
        t.close("geometric=petz", g, p);
        Ok(())
    }
}
