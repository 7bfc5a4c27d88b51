use serde::Serialize;

use super::config::SuiteConfig;
use super::suites::{divergences, entanglement, extensions, oneshot};
use super::trial::Suite;
use crate::error::{Error, Result};

type Builder = fn(&SuiteConfig) -> Result<Box<dyn Suite>>;

/// A registered suite and its defaults.
#[derive(Clone, Serialize)]
pub struct SuiteInfo {
    pub name: &'static str,
    /// The property checked, in one sentence.
    pub statement: &'static str,
    pub default_trials: usize,
    pub default_dims: &'static [usize],
    pub default_slack: f64,
    /// Recognized keys of `SuiteConfig::extra`.
    pub extra_keys: &'static [&'static str],
    /// Whether the suite draws states in the configured dimensions; the
    /// others use fixed systems and ignore `dims`.
    pub uses_dims: bool,
    #[serde(skip)]
    pub(crate) build: Builder,
}

impl std::fmt::Debug for SuiteInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SuiteInfo").field("name", &self.name).finish_non_exhaustive()
    }
}

static REGISTRY: &[SuiteInfo] = &[
    SuiteInfo {
        name: "sandwich",
        statement: "D_min <= D <= D_max for every relative entropy on pairs with common support",
        default_trials: 1000,
        default_dims: &[2, 3],
        default_slack: 1e-8,
        extra_keys: &["divergences"],
        uses_dims: true,
        build: divergences::Sandwich::build,
    },
    SuiteInfo {
        name: "dpi",
        statement: "divergences never increase (fidelity never decreases) under CPTP maps; subnormalized extensions likewise under trace non-increasing maps",
        default_trials: 500,
        default_dims: &[2, 3, 4],
        default_slack: 1e-7,
        extra_keys: &["divergences", "tni"],
        uses_dims: true,
        build: divergences::Dpi::build,
    },
    SuiteInfo {
        name: "eq1",
        statement: "every relative entropy of (|0><0|, diag(1-e, e)) equals -log2(1-e)",
        default_trials: 4,
        default_dims: &[2],
        default_slack: 1e-10,
        extra_keys: &["divergences", "epsilons"],
        uses_dims: false,
        build: divergences::BinaryIdentity::build,
    },
    SuiteInfo {
        name: "reduction",
        statement: "every extension equals its base measure on the smaller domain",
        default_trials: 500,
        default_dims: &[2, 3, 4],
        default_slack: 1e-9,
        extra_keys: &["divergences", "search_trials"],
        uses_dims: true,
        build: extensions::Reduction::build,
    },
    SuiteInfo {
        name: "monotonicity",
        statement: "optimal extensions never increase under channels (trace non-increasing maps for subnormalized extensions)",
        default_trials: 500,
        default_dims: &[2, 3, 4],
        default_slack: 1e-7,
        extra_keys: &[],
        uses_dims: true,
        build: extensions::Monotonicity::build,
    },
    SuiteInfo {
        name: "optimality",
        statement: "a quantum divergence reducing to a classical one lies between its minimal and maximal extensions",
        default_trials: 200,
        default_dims: &[2, 3],
        default_slack: 1e-7,
        extra_keys: &["alphas", "search_trials", "projective_count"],
        uses_dims: true,
        build: extensions::Optimality::build,
    },
    SuiteInfo {
        name: "additivity",
        statement: "relative entropies are additive on tensor products",
        default_trials: 300,
        default_dims: &[2, 3],
        default_slack: 1e-8,
        extra_keys: &["divergences"],
        uses_dims: true,
        build: divergences::Additivity::build,
    },
    SuiteInfo {
        name: "subsuper",
        statement: "the maximal extension is sub-additive and the minimal extension super-additive on products",
        default_trials: 200,
        default_dims: &[2, 3],
        default_slack: 1e-7,
        extra_keys: &[],
        uses_dims: true,
        build: extensions::SubSuper::build,
    },
    SuiteInfo {
        name: "triangle",
        statement: "D(rho|sigma) <= D(rho|omega) + D_max(omega|sigma)",
        default_trials: 500,
        default_dims: &[2, 3, 4],
        default_slack: 1e-7,
        extra_keys: &["divergences"],
        uses_dims: true,
        build: divergences::Triangle::build,
    },
    SuiteInfo {
        name: "continuity",
        statement: "relative entropies obey explicit continuity bounds in either argument when ||. - omega|| < lambda_min(omega)",
        default_trials: 500,
        default_dims: &[2, 3, 4],
        default_slack: 1e-7,
        extra_keys: &["divergences"],
        uses_dims: true,
        build: divergences::Continuity::build,
    },
    SuiteInfo {
        name: "faithful",
        statement: "faithful divergences vanish only on equal states; D_min vanishes on classical pairs with equal support",
        default_trials: 500,
        default_dims: &[2, 3, 4],
        default_slack: 1e-8,
        extra_keys: &["divergences", "value_threshold", "distance_threshold"],
        uses_dims: true,
        build: divergences::Faithful::build,
    },
    SuiteInfo {
        name: "hypo_chain",
        statement: "D_s^e <= D_h^e <= D_s^(e+d) - log2 d, D_min^e >= D_s^(e^2/2), exact on commuting pairs",
        default_trials: 200,
        default_dims: &[2, 3, 4],
        default_slack: 1e-7,
        extra_keys: &["pairs"],
        uses_dims: true,
        build: oneshot::HypoChain::build,
    },
    SuiteInfo {
        name: "aep",
        statement: "the rate D_s^e(rho^n|sigma^n)/n approaches D(rho|sigma); D_max rates stay above it (trial i uses n = i + 1)",
        default_trials: 8,
        default_dims: &[2],
        default_slack: 1e-9,
        extra_keys: &["p", "q", "epsilon"],
        uses_dims: false,
        build: oneshot::Equipartition::build,
    },
    SuiteInfo {
        name: "metric",
        statement: "generalized trace distance and purified distance are metrics on subnormalized states",
        default_trials: 500,
        default_dims: &[2, 3, 4],
        default_slack: 1e-9,
        extra_keys: &[],
        uses_dims: true,
        build: extensions::Metric::build,
    },
    SuiteInfo {
        name: "schmidt",
        statement: "the PPT Schmidt number equals the Schmidt rank on pure states and flips at p = 1/3 on Werner states",
        default_trials: 200,
        default_dims: &[4],
        default_slack: 1e-9,
        extra_keys: &[],
        uses_dims: false,
        build: entanglement::Schmidt::build,
    },
    SuiteInfo {
        name: "locc",
        statement: "one-way LOCC never increases the Schmidt number or the convex-roof entanglement estimate",
        default_trials: 100,
        default_dims: &[4],
        default_slack: 1e-3,
        extra_keys: &["roof_trials", "ensemble_factor"],
        uses_dims: false,
        build: entanglement::Locc::build,
    },
    SuiteInfo {
        name: "purified",
        statement: "the closed-form purified distance matches a search over the Uhlmann orbit of purifications",
        default_trials: 50,
        default_dims: &[2, 3],
        default_slack: 1e-5,
        extra_keys: &["restarts"],
        uses_dims: true,
        build: extensions::Purified::build,
    },
    SuiteInfo {
        name: "pure_kl",
        statement: "the maximal KL extension at a pure state is log2 <psi|sigma^-1|psi>, and -log2 lambda at an eigenvector",
        default_trials: 200,
        default_dims: &[2, 3, 4],
        default_slack: 1e-8,
        extra_keys: &[],
        uses_dims: true,
        build: extensions::PureFormula::build,
    },
    SuiteInfo {
        name: "geometric_petz",
        statement: "geometric and Petz Renyi divergences coincide at order 2",
        default_trials: 500,
        default_dims: &[2, 3, 4],
        default_slack: 1e-9,
        extra_keys: &[],
        uses_dims: true,
        build: divergences::GeometricPetz::build,
    },
];

/// All registered suites, in a fixed order.
pub fn suites() -> &'static [SuiteInfo] {
    REGISTRY
}

pub fn suite_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|s| s.name).collect()
}

pub fn lookup(name: &str) -> Result<&'static SuiteInfo> {
    REGISTRY.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownSuite {
        name: name.to_string(),
        available: suite_names().join(", "),
    })
}
