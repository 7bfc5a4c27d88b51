//! Suites on the optimal extensions: reduction, monotonicity, optimality,
//! sub/super-additivity, the metric property of the subnormalized
//! extensions, the purified-distance oracle and the pure-state formula.

use rand::Rng;

use super::{classical_relative_entropies, random_cptp, random_distribution, random_faithful, random_state, random_tni};
use crate::divergence::{
    classical_divergence_raw, fidelity, ClassicalDivergence, Divergence, MeasurementStrategy,
};
use crate::entangle::{
    convex_roof_search, entanglement_entropy, schmidt_decompose, schmidt_number_ppt, BipartiteCut, PureMonotone,
};
use crate::error::Result;
use crate::extension::{
    extend_subnormalized, extended_d_max, extended_umegaki, generalized_fidelity, generalized_trace_distance,
    maximal_classical_extension_ansatz, maximal_classical_extension_pure, maximal_classical_extension_search,
    minimal_classical_extension_lower, purified_distance,
};
use crate::property::config::SuiteConfig;
use crate::property::oracles;
use crate::property::trial::{Suite, Trial};
use crate::qstate::random::{random_pure_with, random_subnormalized_with, trial_seed};
use crate::qstate::{tensor, DensityState, PureState};

const PENCIL: MeasurementStrategy = MeasurementStrategy::PencilEigenbasis;

fn all_classical() -> Vec<ClassicalDivergence> {
    let mut v = classical_relative_entropies().to_vec();
    v.push(ClassicalDivergence::TotalVariation);
    v
}

/// Extensions agree with their base measures on the smaller domain.
pub(crate) struct Reduction {
    subnormalized: Vec<Divergence>,
    search_trials: usize,
}

impl Reduction {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        let subnormalized = c.extra_divergences(
            "divergences",
            &[
                "trace-distance",
                "fidelity",
                "umegaki",
                "dmin",
                "dmax",
                "petz:0.5",
                "sandwiched:2",
                "geometric:2",
            ],
        )?;
        Ok(Box::new(Self {
            subnormalized,
            search_trials: c.extra_usize("search_trials", 8)?,
        }))
    }
}

impl Suite for Reduction {
    fn run(&self, t: &mut Trial) -> Result<()> {
        // Subnormalized extensions on normalized pairs.
        let rho = random_state(t)?;
        let sigma = random_faithful(t)?;
        let td = Divergence::TraceDistance.evaluate(&rho, &sigma)?.value();
        let f = fidelity(&rho, &sigma)?.value();
        t.close("generalized-trace-distance", generalized_trace_distance(&rho, &sigma)?.value(), td);
        t.close("generalized-fidelity", generalized_fidelity(&rho, &sigma)?.value(), f);
        t.close(
            "purified-distance",
            purified_distance(&rho, &sigma)?.value(),
            (1.0 - f * f).max(0.0).sqrt(),
        );
        let u = Divergence::Umegaki.evaluate(&rho, &sigma)?.value();
        t.close("extended-umegaki", extended_umegaki(&rho, &sigma)?.value(), u);
        let m = Divergence::DMax.evaluate(&rho, &sigma)?.value();
        t.close("extended-dmax", extended_d_max(&rho, &sigma)?.value(), m);
        for d in &self.subnormalized {
            let base = d.evaluate(&rho, &sigma)?.value();
            t.close(format!("subnormalized:{d}"), extend_subnormalized(d, &rho, &sigma)?.value(), base);
        }

        // Classical-to-quantum extensions on commuting pairs.
        let p = random_distribution(&mut t.rng, t.dim, true);
        let q = random_distribution(&mut t.rng, t.dim, false);
        let (rp, rq) = (DensityState::from_diagonal(&p)?, DensityState::from_diagonal(&q)?);
        let i = t.rng.random_range(0..t.dim);
        let seed = trial_seed(t.rng.random(), 0);
        for kind in all_classical() {
            let exact = classical_divergence_raw(kind, &p, &q)?.value();
            t.diag(format!("classical:{kind}"), exact);
            let max = maximal_classical_extension_ansatz(kind, &rp, &rq)?.value();
            t.close(format!("maximal:{kind}"), max, exact);
            let min = minimal_classical_extension_lower(kind, &rp, &rq, &PENCIL)?.value();
            t.close(format!("minimal:{kind}"), min, exact);
            // The search may not undercut the classical value.
            let search = maximal_classical_extension_search(kind, &rp, &rq, self.search_trials, seed)?.value();
            t.le(format!("search:{kind}"), exact, search);
            let mut e = vec![0.0; t.dim];
            e[i] = 1.0;
            let pure = maximal_classical_extension_pure(kind, &PureState::basis(t.dim, i), &rq)?.value();
            t.close(format!("pure:{kind}"), pure, classical_divergence_raw(kind, &e, &q)?.value());
        }

        // Entanglement extensions on pure states.
        let cut = BipartiteCut::new(2, t.dim.min(3));
        let psi = random_pure_with(&mut t.rng, cut.dim())?;
        let h = entanglement_entropy(&psi, cut)?;
        let roof = convex_roof_search(PureMonotone::EntanglementEntropy, &psi.density(), cut, 2, 4, seed)?;
        t.close("convex-roof", roof.value(), h);
        let rank = schmidt_decompose(&psi, cut)?.rank;
        let number = schmidt_number_ppt(&psi.density(), cut)?;
        t.close("schmidt-number", number as f64, rank as f64);
        Ok(())
    }
}

/// Extensions never increase under channels: the maximal classical
/// extension under CPTP maps, the subnormalized closed forms under trace
/// non-increasing maps.
pub(crate) struct Monotonicity;

impl Monotonicity {
    pub(crate) fn build(_: &SuiteConfig) -> Result<Box<dyn Suite>> {
        Ok(Box::new(Self))
    }
}

impl Suite for Monotonicity {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let rho = random_state(t)?;
        let sigma = random_faithful(t)?;
        let channel = random_cptp(t)?;
        let (r, s) = (channel.apply(&rho)?, channel.apply(&sigma)?);
        for kind in [ClassicalDivergence::Kl, ClassicalDivergence::renyi(0.5), ClassicalDivergence::renyi(2.0)] {
            let before = maximal_classical_extension_ansatz(kind, &rho, &sigma)?.value();
            let after = maximal_classical_extension_ansatz(kind, &r, &s)?.value();
            t.diag(format!("maximal:{kind}"), before);
            t.le(format!("maximal:{kind}"), after, before);
        }

        let rank = t.rng.random_range(1..=t.dim);
        let a = random_subnormalized_with(&mut t.rng, t.dim, rank)?;
        let b = random_subnormalized_with(&mut t.rng, t.dim, t.dim)?;
        let map = random_tni(t)?;
        let (fa, fb) = (map.apply(&a)?, map.apply(&b)?);
        let pairs = [
            ("generalized-trace-distance", generalized_trace_distance(&a, &b)?, generalized_trace_distance(&fa, &fb)?),
            ("purified-distance", purified_distance(&a, &b)?, purified_distance(&fa, &fb)?),
            ("extended-umegaki", extended_umegaki(&a, &b)?, extended_umegaki(&fa, &fb)?),
            ("extended-dmax", extended_d_max(&a, &b)?, extended_d_max(&fa, &fb)?),
        ];
        for (name, before, after) in pairs {
            t.diag(name, before.value());
            t.le(name, after.value(), before.value());
        }
        let before = generalized_fidelity(&a, &b)?.value();
        let after = generalized_fidelity(&fa, &fb)?.value();
        t.le("generalized-fidelity", before, after);
        for d in [Divergence::sandwiched(2.0), Divergence::geometric(0.5)] {
            let before = extend_subnormalized(&d, &a, &b)?.value();
            let after = extend_subnormalized(&d, &fa, &fb)?.value();
            t.le(format!("subnormalized:{d}"), after, before);
        }
        Ok(())
    }
}

/// Quantum divergences that reduce to a classical one sit between its
/// minimal and maximal extension; the sandwiched ≤ Petz ≤ geometric chain;
/// the search never beats a provably optimal ansatz.
pub(crate) struct Optimality {
    alphas: Vec<f64>,
    search_trials: usize,
    projective_count: usize,
}

impl Optimality {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        let alphas = c.extra_f64_list("alphas", &[0.5, 0.7, 1.5, 2.0])?;
        if alphas.iter().any(|a| !(*a >= 0.5 && *a <= 2.0 && *a != 1.0)) {
            return Err(crate::Error::BadConfig("extra.alphas: need orders in [0.5, 2] other than 1".into()));
        }
        Ok(Box::new(Self {
            alphas,
            search_trials: c.extra_usize("search_trials", 32)?,
            projective_count: c.extra_usize("projective_count", 16)?,
        }))
    }
}

impl Suite for Optimality {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let rho = random_state(t)?;
        let sigma = random_faithful(t)?;
        let seed: u64 = t.rng.random();
        let random = MeasurementStrategy::RandomProjective {
            count: self.projective_count,
            seed,
        };
        let sandwich = |t: &mut Trial, name: String, kind: ClassicalDivergence, value: f64| -> Result<()> {
            let lower = minimal_classical_extension_lower(kind, &rho, &sigma, &PENCIL)?.value();
            let random = minimal_classical_extension_lower(kind, &rho, &sigma, &random)?.value();
            let upper = maximal_classical_extension_ansatz(kind, &rho, &sigma)?.value();
            t.le(format!("minimal<={name}"), lower, value);
            t.le(format!("random<={name}"), random, value);
            t.le(format!("{name}<=maximal"), value, upper);
            Ok(())
        };
        let u = Divergence::Umegaki.evaluate(&rho, &sigma)?.value();
        sandwich(t, "umegaki".into(), ClassicalDivergence::Kl, u)?;
        let td = Divergence::TraceDistance.evaluate(&rho, &sigma)?.value();
        sandwich(t, "trace-distance".into(), ClassicalDivergence::TotalVariation, td)?;
        for &alpha in &self.alphas {
            let kind = ClassicalDivergence::renyi(alpha);
            let sw = Divergence::sandwiched(alpha).evaluate(&rho, &sigma)?.value();
            let pz = Divergence::petz(alpha).evaluate(&rho, &sigma)?.value();
            let geo = Divergence::geometric(alpha).evaluate(&rho, &sigma)?.value();
            sandwich(t, format!("sandwiched({alpha})"), kind, sw)?;
            sandwich(t, format!("petz({alpha})"), kind, pz)?;
            t.le(format!("sandwiched<=petz({alpha})"), sw, pz);
            t.le(format!("petz<=geometric({alpha})"), pz, geo);
            let ansatz = maximal_classical_extension_ansatz(kind, &rho, &sigma)?.value();
            t.close(format!("geometric=maximal({alpha})"), geo, ansatz);
        }
        for kind in all_classical() {
            let search = maximal_classical_extension_search(kind, &rho, &sigma, self.search_trials, seed)?;
            let improvement = match search.witness {
                crate::extension::Witness::Search { improvement, .. } => improvement,
                _ => 0.0,
            };
            t.diag(format!("search-improvement:{kind}"), improvement);
            if kind.ansatz_is_optimal() {
                t.violation(format!("search-vs-optimal:{kind}"), improvement);
            }
        }
        Ok(())
    }
}

/// Maximal extension sub-additive, measured minimal bound super-additive on
/// product pairs (second factor a qubit).
pub(crate) struct SubSuper;

impl SubSuper {
    pub(crate) fn build(_: &SuiteConfig) -> Result<Box<dyn Suite>> {
        Ok(Box::new(Self))
    }
}

impl Suite for SubSuper {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let (r1, s1) = (random_state(t)?, random_faithful(t)?);
        let rank = t.rng.random_range(1..=2);
        let r2 = crate::qstate::random::random_density_with(&mut t.rng, 2, rank)?;
        let s2 = crate::qstate::random::random_density_with(&mut t.rng, 2, 2)?;
        let (r, s) = (tensor(&r1, &r2)?, tensor(&s1, &s2)?);
        for kind in classical_relative_entropies() {
            let max = |a: &DensityState, b: &DensityState| -> Result<f64> {
                Ok(maximal_classical_extension_ansatz(kind, a, b)?.value())
            };
            let min = |a: &DensityState, b: &DensityState| -> Result<f64> {
                Ok(minimal_classical_extension_lower(kind, a, b, &PENCIL)?.value())
            };
            let joint_max = max(&r, &s)?;
            t.diag(format!("maximal:{kind}"), joint_max);
            t.le(format!("subadditive:{kind}"), joint_max, max(&r1, &s1)? + max(&r2, &s2)?);
            let joint_min = min(&r, &s)?;
            t.diag(format!("minimal:{kind}"), joint_min);
            t.le(format!("superadditive:{kind}"), min(&r1, &s1)? + min(&r2, &s2)?, joint_min);
        }
        Ok(())
    }
}

/// Generalized trace distance and purified distance are metrics on
/// subnormalized states.
pub(crate) struct Metric;

impl Metric {
    pub(crate) fn build(_: &SuiteConfig) -> Result<Box<dyn Suite>> {
        Ok(Box::new(Self))
    }
}

impl Suite for Metric {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let draw = |t: &mut Trial| {
            let rank = t.rng.random_range(1..=t.dim);
            random_subnormalized_with(&mut t.rng, t.dim, rank)
        };
        let (a, b, c) = (draw(t)?, draw(t)?, draw(t)?);
        type Metric = fn(&DensityState, &DensityState) -> Result<crate::divergence::DivergenceValue>;
        let metrics: [(&str, Metric); 2] = [
            ("generalized-trace-distance", generalized_trace_distance),
            ("purified-distance", purified_distance),
        ];
        for (name, m) in metrics {
            let ab = m(&a, &b)?.value();
            t.diag(name, ab);
            t.close(format!("symmetry:{name}"), ab, m(&b, &a)?.value());
            t.le(format!("triangle:{name}"), m(&a, &c)?.value(), ab + m(&b, &c)?.value());
        }
        t.close("identity:generalized-trace-distance", generalized_trace_distance(&a, &a)?.value(), 0.0);
        // √(1 - F̄²) amplifies rounding near F̄ = 1, so check F̄ itself.
        t.close("identity:generalized-fidelity", generalized_fidelity(&a, &a)?.value(), 1.0);
        Ok(())
    }
}

/// Closed-form purified distance against a randomized search over the
/// Uhlmann orbit of purifications.
pub(crate) struct Purified {
    restarts: usize,
}

impl Purified {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        Ok(Box::new(Self {
            restarts: c.extra_usize("restarts", 10_000)?,
        }))
    }
}

impl Suite for Purified {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let rho = random_state(t)?;
        let sigma = random_state(t)?;
        let closed = purified_distance(&rho, &sigma)?.value();
        let oracle = oracles::uhlmann_purified_distance(&rho, &sigma, self.restarts, t.rng.random());
        t.diag("closed_form", closed);
        t.diag("uhlmann", oracle);
        t.close("uhlmann", closed, oracle);
        Ok(())
    }
}

/// The maximal KL extension at a pure first argument is `log⟨ψ|σ⁻¹|ψ⟩`;
/// at an eigenvector of `σ` it is `-log λ`.
pub(crate) struct PureFormula;

impl PureFormula {
    pub(crate) fn build(_: &SuiteConfig) -> Result<Box<dyn Suite>> {
        Ok(Box::new(Self))
    }
}

impl Suite for PureFormula {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let sigma = random_faithful(t)?;
        let psi = random_pure_with(&mut t.rng, t.dim)?;
        let ansatz = maximal_classical_extension_ansatz(ClassicalDivergence::Kl, &psi.density(), &sigma)?.value();
        let oracle = oracles::log_inverse_expectation(&psi, &sigma).unwrap_or(f64::INFINITY);
        t.diag("ansatz", ansatz);
        t.diag("oracle", oracle);
        t.close("inverse-expectation", ansatz, oracle);
        let pure = maximal_classical_extension_pure(ClassicalDivergence::Kl, &psi, &sigma)?.value();
        t.close("pure-formula", pure, oracle);

        let eig = sigma.eigen();
        let i = t.rng.random_range(0..t.dim);
        let v = PureState::normalize(eig.vector(i))?;
        let ansatz = maximal_classical_extension_ansatz(ClassicalDivergence::Kl, &v.density(), &sigma)?.value();
        let expected = -eig.eigenvalues[i].log2();
        t.diag("eigenvalue", eig.eigenvalues[i]);
        t.close("eigenvector", ansatz, expected);
        Ok(())
    }
}
