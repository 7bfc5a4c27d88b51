//! Closed-form quantum divergences (log base 2).

use std::fmt;

use serde::{Deserialize, Serialize};

use super::value::DivergenceValue;
use crate::error::{Error, Result};
use crate::qstate::linalg::{
    self, eigh_unchecked, left_singular_system, power_from_eigen, singular_values, support_threshold,
    ComplexMatrix, EigenDecomposition, DEFAULT_CUTOFF,
};
use crate::qstate::state::same_dim;
use crate::qstate::DensityState;

/// `supp ρ ⊆ supp σ` holds when `‖(I-Π_σ) ρ (I-Π_σ)‖_∞` is at most this.
pub const SUPPORT_TOL: f64 = 1e-9;
/// `ρ ⊥ σ` when `Tr[Π_ρ Π_σ]` is at most this.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;
/// `Tr[Π_ρ σ]` at or below this makes `D_min` infinite.
pub const OVERLAP_TOL: f64 = 1e-9;

/// Quantum Rényi family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenyiVariant {
    /// `Tr[ρ^α σ^{1-α}]`.
    Petz,
    /// Minimal (sandwiched) Rényi divergence.
    Sandwiched,
    /// Geometric (maximal) Rényi divergence.
    Geometric,
}

impl RenyiVariant {
    pub fn name(self) -> &'static str {
        match self {
            RenyiVariant::Petz => "petz",
            RenyiVariant::Sandwiched => "sandwiched",
            RenyiVariant::Geometric => "geometric",
        }
    }
}

/// Spectral data of an operator that several formulas reuse.
pub(crate) struct Spectral {
    pub eig: EigenDecomposition,
    pub threshold: f64,
}

impl Spectral {
    pub fn of(m: &ComplexMatrix) -> Self {
        let eig = eigh_unchecked(m);
        let threshold = support_threshold(eig.max_eigenvalue().max(0.0), DEFAULT_CUTOFF);
        Self { eig, threshold }
    }

    pub fn is_zero(&self) -> bool {
        self.eig.max_eigenvalue() <= 1e-300
    }

    pub fn projector(&self) -> ComplexMatrix {
        let thr = self.threshold;
        self.eig.projector(|l| l > thr)
    }

    pub fn power(&self, p: f64) -> ComplexMatrix {
        power_from_eigen(&self.eig, p, DEFAULT_CUTOFF)
    }
}

/// `‖(I-Π_σ) ρ (I-Π_σ)‖_∞ ≤ SUPPORT_TOL`.
pub(crate) fn support_contained(rho: &ComplexMatrix, sigma_support: &ComplexMatrix) -> bool {
    let d = rho.nrows();
    let comp = linalg::identity(d) - sigma_support;
    let outside = &comp * rho * &comp;
    linalg::operator_norm_hermitian(&outside) <= SUPPORT_TOL
}

/// `supp ρ ⊆ supp σ` for two states.
pub fn supports_contained(rho: &DensityState, sigma: &DensityState) -> Result<bool> {
    same_dim(rho, sigma)?;
    let s = Spectral::of(sigma.matrix());
    if s.is_zero() {
        return Ok(Spectral::of(rho.matrix()).is_zero());
    }
    Ok(support_contained(rho.matrix(), &s.projector()))
}

fn orthogonal(rho: &Spectral, sigma: &Spectral) -> bool {
    if rho.is_zero() || sigma.is_zero() {
        return true;
    }
    linalg::trace_product(&rho.projector(), &sigma.projector()).re <= ORTHOGONALITY_TOL
}

/// `½ ‖ρ - σ‖₁` for normalized states.
pub fn trace_distance(rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    rho.require_normalized()?;
    sigma.require_normalized()?;
    Ok(DivergenceValue::new(0.5 * trace_distance_raw(rho.matrix(), sigma.matrix())))
}

pub(crate) fn trace_distance_raw(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    linalg::trace_norm_hermitian(&(a - b))
}

/// `‖√ρ √σ‖₁` for normalized states.
pub fn fidelity(rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    rho.require_normalized()?;
    sigma.require_normalized()?;
    Ok(DivergenceValue::new(fidelity_raw(rho.matrix(), sigma.matrix()).min(1.0)))
}

/// `‖√A √B‖₁` for PSD `A`, `B` of any trace.
pub(crate) fn fidelity_raw(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let sa = linalg::power_on_support(a, 0.5, DEFAULT_CUTOFF);
    let sb = linalg::power_on_support(b, 0.5, DEFAULT_CUTOFF);
    linalg::trace_norm(&(sa * sb))
}

/// Umegaki relative entropy `Tr[ρ log ρ] - Tr[ρ log σ]`, `+∞` unless
/// `supp ρ ⊆ supp σ`.
pub fn umegaki(rho: &DensityState, sigma: &DensityState, cutoff: f64) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    rho.require_normalized()?;
    Ok(umegaki_raw(rho.matrix(), sigma.matrix(), cutoff))
}

/// `Tr[A log A] - Tr[A log B]` for PSD operators of any trace.
pub(crate) fn umegaki_raw(a: &ComplexMatrix, b: &ComplexMatrix, cutoff: f64) -> DivergenceValue {
    let ea = eigh_unchecked(a);
    let amax = ea.max_eigenvalue();
    if amax <= 1e-300 {
        return DivergenceValue::ZERO;
    }
    let eb = eigh_unchecked(b);
    let bmax = eb.max_eigenvalue();
    if bmax <= 1e-300 {
        return DivergenceValue::INFINITY;
    }
    let bthr = support_threshold(bmax, cutoff);
    let bproj = eb.projector(|l| l > bthr);
    if !support_contained(a, &bproj) {
        return DivergenceValue::INFINITY;
    }
    let athr = support_threshold(amax, cutoff);
    let neg_entropy: f64 = ea
        .eigenvalues
        .iter()
        .filter(|&&l| l > athr)
        .map(|&l| l * l.log2())
        .sum();
    let cross: f64 = eb
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > bthr)
        .map(|(j, &l)| l.log2() * linalg::expectation(a, &eb.vector(j)))
        .sum();
    DivergenceValue::new(neg_entropy - cross)
}

/// Min-relative entropy `-log Tr[Π_ρ σ]`.
pub fn d_min(rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    let rs = Spectral::of(rho.matrix());
    if rs.is_zero() {
        return Err(Error::ZeroState);
    }
    let overlap = linalg::trace_product(&rs.projector(), sigma.matrix()).re;
    if overlap <= OVERLAP_TOL {
        return Ok(DivergenceValue::INFINITY);
    }
    Ok(DivergenceValue::new(-overlap.log2()))
}

/// Max-relative entropy `log min{t : tσ ≥ ρ}`; accepts subnormalized inputs.
pub fn d_max(rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    Ok(d_max_raw(rho.matrix(), sigma.matrix()))
}

pub(crate) fn d_max_raw(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> DivergenceValue {
    let rs = Spectral::of(rho);
    if rs.is_zero() {
        return DivergenceValue::new(f64::NEG_INFINITY);
    }
    let ss = Spectral::of(sigma);
    if ss.is_zero() || !support_contained(rho, &ss.projector()) {
        return DivergenceValue::INFINITY;
    }
    let c = ss.power(-0.5) * rs.power(0.5);
    let smax = singular_values(&c).first().copied().unwrap_or(0.0);
    DivergenceValue::new((smax * smax).log2())
}

/// Checks the order against the validity window of the variant.
pub fn check_alpha(variant: RenyiVariant, alpha: f64) -> Result<()> {
    let ok = match variant {
        RenyiVariant::Petz => alpha > 0.0 && alpha <= 2.0,
        RenyiVariant::Sandwiched => alpha >= 0.0,
        RenyiVariant::Geometric => alpha > 0.0 && alpha <= 2.0 && alpha != 1.0,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange {
            alpha,
            variant: variant.name(),
        })
    }
}

/// Quantum Rényi divergence of the requested variant.
///
/// Order 1 is routed to [`umegaki`] for Petz and sandwiched (and rejected for
/// geometric); sandwiched order ∞ is [`d_max`] and order ½ is `-2 log F`.
pub fn renyi(
    variant: RenyiVariant,
    alpha: f64,
    rho: &DensityState,
    sigma: &DensityState,
) -> Result<DivergenceValue> {
    same_dim(rho, sigma)?;
    check_alpha(variant, alpha)?;
    if alpha == 1.0 {
        return umegaki(rho, sigma, DEFAULT_CUTOFF);
    }
    match variant {
        RenyiVariant::Sandwiched if alpha == f64::INFINITY => d_max(rho, sigma),
        RenyiVariant::Sandwiched if alpha == 0.5 => {
            let rs = Spectral::of(rho.matrix());
            let ss = Spectral::of(sigma.matrix());
            if orthogonal(&rs, &ss) {
                return Ok(DivergenceValue::INFINITY);
            }
            let f = fidelity_raw(rho.matrix(), sigma.matrix());
            Ok(DivergenceValue::new(-2.0 * f.log2()))
        }
        RenyiVariant::Sandwiched => Ok(sandwiched_raw(alpha, rho.matrix(), sigma.matrix())),
        RenyiVariant::Petz => Ok(petz_raw(alpha, rho.matrix(), sigma.matrix())),
        RenyiVariant::Geometric => Ok(geometric_raw(alpha, rho.matrix(), sigma.matrix())),
    }
}

fn from_quasi(q: f64, alpha: f64) -> DivergenceValue {
    if !(q > 0.0) {
        return DivergenceValue::INFINITY;
    }
    DivergenceValue::new(q.log2() / (alpha - 1.0))
}

fn sandwiched_raw(alpha: f64, rho: &ComplexMatrix, sigma: &ComplexMatrix) -> DivergenceValue {
    let rs = Spectral::of(rho);
    let ss = Spectral::of(sigma);
    if alpha > 1.0 {
        if ss.is_zero() || !support_contained(rho, &ss.projector()) {
            return DivergenceValue::INFINITY;
        }
    } else if orthogonal(&rs, &ss) {
        return DivergenceValue::INFINITY;
    }
    let q = if alpha >= 0.5 {
        // Tr (σ^s ρ σ^s)^α = Σ a_i^{2α} with a_i the singular values of σ^s ρ^{1/2}.
        let s = (1.0 - alpha) / (2.0 * alpha);
        let a = ss.power(s) * rs.power(0.5);
        singular_values(&a).iter().map(|x| x.powf(2.0 * alpha)).sum::<f64>()
    } else {
        // Tr (ρ^b σ ρ^b)^{1-α} = Σ c_i^{2(1-α)} with c_i the singular values of ρ^b σ^{1/2}.
        let b = alpha / (2.0 * (1.0 - alpha));
        let c = rs.power(b) * ss.power(0.5);
        singular_values(&c).iter().map(|x| x.powf(2.0 * (1.0 - alpha))).sum::<f64>()
    };
    from_quasi(q, alpha)
}

fn petz_raw(alpha: f64, rho: &ComplexMatrix, sigma: &ComplexMatrix) -> DivergenceValue {
    let rs = Spectral::of(rho);
    let ss = Spectral::of(sigma);
    if alpha > 1.0 {
        if ss.is_zero() || !support_contained(rho, &ss.projector()) {
            return DivergenceValue::INFINITY;
        }
    } else if orthogonal(&rs, &ss) {
        return DivergenceValue::INFINITY;
    }
    let q = linalg::trace_product(&rs.power(alpha), &ss.power(1.0 - alpha)).re;
    from_quasi(q, alpha)
}

fn geometric_raw(alpha: f64, rho: &ComplexMatrix, sigma: &ComplexMatrix) -> DivergenceValue {
    let rs = Spectral::of(rho);
    let ss = Spectral::of(sigma);
    if ss.is_zero() || !support_contained(rho, &ss.projector()) {
        return DivergenceValue::INFINITY;
    }
    // σ^{-1/2} ρ σ^{-1/2} = C C† with C = σ^{-1/2} ρ^{1/2}.
    let c = ss.power(-0.5) * rs.power(0.5);
    let (s, u) = left_singular_system(&c);
    let q: f64 = s
        .iter()
        .enumerate()
        .map(|(i, &x)| x.powf(2.0 * alpha) * linalg::expectation(sigma, &u.column(i).into_owned()))
        .sum();
    from_quasi(q, alpha)
}

/// A named quantum divergence (or distance) that can be evaluated on a pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Divergence {
    TraceDistance,
    Fidelity,
    Umegaki,
    DMin,
    DMax,
    Renyi { variant: RenyiVariant, alpha: f64 },
}

impl Divergence {
    pub fn petz(alpha: f64) -> Self {
        Divergence::Renyi {
            variant: RenyiVariant::Petz,
            alpha,
        }
    }

    pub fn sandwiched(alpha: f64) -> Self {
        Divergence::Renyi {
            variant: RenyiVariant::Sandwiched,
            alpha,
        }
    }

    pub fn geometric(alpha: f64) -> Self {
        Divergence::Renyi {
            variant: RenyiVariant::Geometric,
            alpha,
        }
    }

    /// Parses a CLI name (`umegaki`, `dmin`, `dmax`, `trace-distance`,
    /// `fidelity`, `petz`, `sandwiched`, `geometric`).
    pub fn parse(name: &str, alpha: Option<f64>) -> Result<Self> {
        let need_alpha = || {
            alpha.ok_or(Error::BadField {
                field: "alpha".into(),
                message: format!("required for {name}"),
            })
        };
        let d = match name {
            "trace-distance" | "td" => Divergence::TraceDistance,
            "fidelity" => Divergence::Fidelity,
            "umegaki" | "kl" => Divergence::Umegaki,
            "dmin" => Divergence::DMin,
            "dmax" => Divergence::DMax,
            "petz" => Divergence::petz(need_alpha()?),
            "sandwiched" => Divergence::sandwiched(need_alpha()?),
            "geometric" => Divergence::geometric(need_alpha()?),
            other => return Err(Error::UnknownDivergence(other.to_string())),
        };
        if let Divergence::Renyi { variant, alpha } = d {
            check_alpha(variant, alpha)?;
        }
        Ok(d)
    }

    pub fn alpha(&self) -> Option<f64> {
        match self {
            Divergence::Renyi { alpha, .. } => Some(*alpha),
            _ => None,
        }
    }

    /// Additive and normalized on its domain of definition.
    pub fn is_relative_entropy(&self) -> bool {
        match *self {
            Divergence::TraceDistance | Divergence::Fidelity => false,
            Divergence::Renyi {
                variant: RenyiVariant::Sandwiched,
                alpha,
            } => alpha >= 0.5,
            _ => true,
        }
    }

    /// Larger values mean closer states (only the fidelity).
    pub fn is_similarity(&self) -> bool {
        matches!(self, Divergence::Fidelity)
    }

    pub fn evaluate(&self, rho: &DensityState, sigma: &DensityState) -> Result<DivergenceValue> {
        match *self {
            Divergence::TraceDistance => trace_distance(rho, sigma),
            Divergence::Fidelity => fidelity(rho, sigma),
            Divergence::Umegaki => umegaki(rho, sigma, DEFAULT_CUTOFF),
            Divergence::DMin => d_min(rho, sigma),
            Divergence::DMax => d_max(rho, sigma),
            Divergence::Renyi { variant, alpha } => renyi(variant, alpha, rho, sigma),
        }
    }
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divergence::TraceDistance => write!(f, "trace-distance"),
            Divergence::Fidelity => write!(f, "fidelity"),
            Divergence::Umegaki => write!(f, "umegaki"),
            Divergence::DMin => write!(f, "dmin"),
            Divergence::DMax => write!(f, "dmax"),
            Divergence::Renyi { variant, alpha } => write!(f, "{}({alpha})", variant.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::random;

    fn ket0() -> DensityState {
        DensityState::basis(2, 0)
    }
    fn ket1() -> DensityState {
        DensityState::basis(2, 1)
    }
    fn mixed() -> DensityState {
        DensityState::maximally_mixed(2)
    }

    fn close(a: DivergenceValue, b: f64, tol: f64) -> bool {
        (a.value() - b).abs() <= tol
    }

    #[test]
    fn trace_distance_examples() {
        let r = random::random_density(3, 2, 1).unwrap();
        assert!(close(trace_distance(&r, &r).unwrap(), 0.0, 1e-14));
        assert!(close(trace_distance(&ket0(), &ket1()).unwrap(), 1.0, 1e-14));
        assert!(close(trace_distance(&ket0(), &mixed()).unwrap(), 0.5, 1e-14));
    }

    #[test]
    fn fidelity_examples() {
        let r = random::random_density(3, 3, 2).unwrap();
        assert!(close(fidelity(&r, &r).unwrap(), 1.0, 1e-12));
        assert!(close(fidelity(&ket0(), &ket1()).unwrap(), 0.0, 1e-14));
        assert!(close(fidelity(&ket0(), &mixed()).unwrap(), std::f64::consts::FRAC_1_SQRT_2, 1e-14));
    }

    #[test]
    fn umegaki_examples() {
        let r = random::random_density(3, 3, 3).unwrap();
        assert!(close(umegaki(&r, &r, DEFAULT_CUTOFF).unwrap(), 0.0, 1e-12));
        assert!(close(umegaki(&ket0(), &mixed(), DEFAULT_CUTOFF).unwrap(), 1.0, 1e-14));
        assert!(umegaki(&ket0(), &ket1(), DEFAULT_CUTOFF).unwrap().is_infinite());
    }

    #[test]
    fn d_min_examples() {
        let r = random::random_density(3, 3, 4).unwrap();
        assert!(close(d_min(&r, &r).unwrap(), 0.0, 1e-12));
        assert!(close(d_min(&ket0(), &mixed()).unwrap(), 1.0, 1e-14));
        assert!(d_min(&ket0(), &ket1()).unwrap().is_infinite());
    }

    #[test]
    fn d_max_examples() {
        let r = random::random_density(3, 3, 5).unwrap();
        assert!(close(d_max(&r, &r).unwrap(), 0.0, 1e-10));
        assert!(close(d_max(&ket0(), &mixed()).unwrap(), 1.0, 1e-14));
        assert!(d_max(&ket0(), &ket1()).unwrap().is_infinite());
    }

    #[test]
    fn d_max_of_pure_state_is_inverse_expectation() {
        let psi = random::random_pure(3, 6).unwrap();
        let sigma = random::random_density(3, 3, 7).unwrap();
        let inv = linalg::power_on_support(sigma.matrix(), -1.0, DEFAULT_CUTOFF);
        let expected = linalg::expectation(&inv, psi.vector()).log2();
        assert!(close(d_max(&psi.density(), &sigma).unwrap(), expected, 1e-10));
    }

    #[test]
    fn sandwiched_half_is_minus_two_log_fidelity() {
        let v = renyi(RenyiVariant::Sandwiched, 0.5, &ket0(), &mixed()).unwrap();
        assert!(close(v, 1.0, 1e-14));
    }

    #[test]
    fn sandwiched_half_matches_general_formula() {
        let r = random::random_density(3, 2, 8).unwrap();
        let s = random::random_density(3, 3, 9).unwrap();
        let via_fidelity = renyi(RenyiVariant::Sandwiched, 0.5, &r, &s).unwrap();
        let via_formula = sandwiched_raw(0.5, r.matrix(), s.matrix());
        assert!(close(via_fidelity, via_formula.value(), 1e-12));
    }

    #[test]
    fn sandwiched_zero_is_d_min() {
        let r = random::random_density(3, 1, 10).unwrap();
        let s = random::random_density(3, 3, 11).unwrap();
        let a = renyi(RenyiVariant::Sandwiched, 0.0, &r, &s).unwrap();
        let b = d_min(&r, &s).unwrap();
        assert!(close(a, b.value(), 1e-10));
    }

    #[test]
    fn sandwiched_is_continuous_across_one_half() {
        let r = random::random_density(3, 3, 12).unwrap();
        let s = random::random_density(3, 3, 13).unwrap();
        let lo = renyi(RenyiVariant::Sandwiched, 0.5 - 1e-7, &r, &s).unwrap();
        let hi = renyi(RenyiVariant::Sandwiched, 0.5 + 1e-7, &r, &s).unwrap();
        assert!(close(lo, hi.value(), 1e-5));
    }

    #[test]
    fn geometric_two_equals_petz_two() {
        for seed in 0..10 {
            let r = random::random_density(3, 2, 100 + seed).unwrap();
            let s = random::random_density(3, 3, 200 + seed).unwrap();
            let g = renyi(RenyiVariant::Geometric, 2.0, &r, &s).unwrap();
            let p = renyi(RenyiVariant::Petz, 2.0, &r, &s).unwrap();
            assert!(close(g, p.value(), 1e-9), "{g} vs {p}");
        }
    }

    #[test]
    fn commuting_pairs_reduce_to_classical_renyi() {
        let p = [0.5, 0.3, 0.2];
        let q = [0.2, 0.2, 0.6];
        let rho = DensityState::from_diagonal(&p).unwrap();
        let sigma = DensityState::from_diagonal(&q).unwrap();
        for alpha in [0.2, 0.5, 0.7, 1.5, 2.0] {
            let brute: f64 = p.iter().zip(&q).map(|(a, b)| a.powf(alpha) * b.powf(1.0 - alpha)).sum::<f64>().log2()
                / (alpha - 1.0);
            for variant in [RenyiVariant::Petz, RenyiVariant::Sandwiched, RenyiVariant::Geometric] {
                let v = renyi(variant, alpha, &rho, &sigma).unwrap();
                assert!(close(v, brute, 1e-12), "{variant:?} {alpha}: {v} vs {brute}");
            }
        }
    }

    #[test]
    fn alpha_windows() {
        let r = mixed();
        assert!(renyi(RenyiVariant::Geometric, 1.0, &r, &r).is_err());
        assert!(renyi(RenyiVariant::Geometric, 2.5, &r, &r).is_err());
        assert!(renyi(RenyiVariant::Petz, 3.0, &r, &r).is_err());
        assert!(renyi(RenyiVariant::Sandwiched, -0.1, &r, &r).is_err());
        assert!(renyi(RenyiVariant::Sandwiched, f64::INFINITY, &r, &r).is_ok());
        assert!(close(renyi(RenyiVariant::Petz, 1.0, &ket0(), &r).unwrap(), 1.0, 1e-14));
    }

    #[test]
    fn support_conventions_of_sandwiched() {
        let plus = DensityState::normalized(ComplexMatrix::from_element(2, 2, linalg::C64::new(0.5, 0.0))).unwrap();
        // α > 1 needs ρ ≪ σ.
        assert!(renyi(RenyiVariant::Sandwiched, 2.0, &plus, &ket0()).unwrap().is_infinite());
        // α ∈ [½, 1) only needs non-orthogonality.
        assert!(renyi(RenyiVariant::Sandwiched, 0.7, &plus, &ket0()).unwrap().is_finite());
        assert!(renyi(RenyiVariant::Sandwiched, 0.3, &plus, &ket0()).unwrap().is_finite());
        assert!(renyi(RenyiVariant::Sandwiched, 0.3, &ket1(), &ket0()).unwrap().is_infinite());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            umegaki(&mixed(), &DensityState::maximally_mixed(3), DEFAULT_CUTOFF),
            Err(Error::DimMismatch { .. })
        ));
    }
}
