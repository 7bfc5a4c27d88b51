//! Suites on the entanglement extensions: pure-state reduction of the
//! Schmidt number, the Werner threshold, and LOCC monotonicity.

use rand::Rng;

use super::random_distribution;
use crate::entangle::{
    convex_roof_search, entanglement_entropy, schmidt_decompose, schmidt_number_ppt, BipartiteCut, PureMonotone,
};
use crate::error::Result;
use crate::property::config::SuiteConfig;
use crate::property::oracles::werner_state;
use crate::property::trial::{Suite, Trial};
use crate::qstate::random::{haar_unitary, random_channel_with, random_density_with, random_pure_with};
use crate::qstate::{ChannelKind, DensityState, PureState, QuantumChannel};

const CUTS: [BipartiteCut; 3] = [
    BipartiteCut { dim_a: 2, dim_b: 2 },
    BipartiteCut { dim_a: 2, dim_b: 3 },
    BipartiteCut { dim_a: 3, dim_b: 2 },
];

/// Random pure state on `cut`; a product state on even trials.
fn random_bipartite_pure(t: &mut Trial, cut: BipartiteCut) -> Result<PureState> {
    if t.index.is_multiple_of(2) {
        let a = random_pure_with(&mut t.rng, cut.dim_a)?;
        Ok(a.tensor(&random_pure_with(&mut t.rng, cut.dim_b)?))
    } else {
        random_pure_with(&mut t.rng, cut.dim())
    }
}

/// On pure states the Schmidt number equals the Schmidt rank; on Werner
/// states it switches from 1 to 2 at `p = 1/3` (trials 0 and 1 straddle the
/// threshold by `1e-9`).
pub(crate) struct Schmidt;

impl Schmidt {
    pub(crate) fn build(_: &SuiteConfig) -> Result<Box<dyn Suite>> {
        Ok(Box::new(Self))
    }
}

impl Suite for Schmidt {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let cut = CUTS[t.index % CUTS.len()];
        let psi = random_bipartite_pure(t, cut)?;
        let data = schmidt_decompose(&psi, cut)?;
        let number = schmidt_number_ppt(&psi.density(), cut)?;
        t.diag("rank", data.rank as f64);
        t.diag("number", number as f64);
        t.close("pure-reduction", number as f64, data.rank as f64);
        t.close("normalization", data.probabilities().iter().sum(), 1.0);
        let roof = convex_roof_search(PureMonotone::EntanglementEntropy, &psi.density(), cut, cut.dim(), 4, 0)?;
        t.close("roof-reduction", roof.value(), entanglement_entropy(&psi, cut)?);

        let p = match t.index {
            0 => 1.0 / 3.0 - 1e-9,
            1 => 1.0 / 3.0 + 1e-9,
            _ => t.rng.random::<f64>(),
        };
        // Smallest partial-transpose eigenvalue is (1 - 3p)/4.
        let expected = if 1.0 - 3.0 * p < 0.0 { 2 } else { 1 };
        let got = schmidt_number_ppt(&werner_state(p), BipartiteCut::new(2, 2))?;
        t.diag("werner_p", p);
        t.diag("werner_number", got as f64);
        t.holds("werner", got == expected);
        Ok(())
    }
}

/// One-way LOCC maps (local instrument on A, outcome-dependent unitary on B)
/// never increase the Schmidt number, nor the convex-roof estimate beyond the
/// configured slack.
pub(crate) struct Locc {
    roof_trials: usize,
    /// Ensemble size as a multiple of the dimension; 0 means `dim²`, the
    /// size at which the convex roof is always attained.
    ensemble_factor: usize,
}

impl Locc {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        Ok(Box::new(Self {
            roof_trials: c.extra_usize("roof_trials", 10_000)?,
            ensemble_factor: c.extra_usize("ensemble_factor", 2)?,
        }))
    }
}

fn random_one_way_locc(t: &mut Trial, cut: BipartiteCut) -> Result<QuantumChannel> {
    let outcomes = t.rng.random_range(1..=cut.dim_a);
    let instrument = random_channel_with(&mut t.rng, cut.dim_a, cut.dim_a, outcomes)?;
    let corrections: Vec<_> = (0..outcomes).map(|_| haar_unitary(&mut t.rng, cut.dim_b)).collect();
    QuantumChannel::local_product(instrument.kraus(), &corrections, ChannelKind::Cptp)
}

impl Suite for Locc {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let cut = CUTS[t.index % 2];
        // Werner-like mixtures cover both sides of the separability boundary.
        let rho = if t.index.is_multiple_of(2) {
            let rank = t.rng.random_range(1..=cut.dim());
            random_density_with(&mut t.rng, cut.dim(), rank)?
        } else {
            let w = random_distribution(&mut t.rng, 2, false)[0];
            let psi = random_pure_with(&mut t.rng, cut.dim())?.density();
            let noise = DensityState::maximally_mixed(cut.dim());
            super::mix(&psi, &noise, w)
        };
        let map = random_one_way_locc(t, cut)?;
        let out = map.apply(&rho)?;
        let (before, after) = (schmidt_number_ppt(&rho, cut)?, schmidt_number_ppt(&out, cut)?);
        t.diag("number", before as f64);
        t.diag("number:out", after as f64);
        t.holds("schmidt-number", after <= before);
        let seed: u64 = t.rng.random();
        let monotone = PureMonotone::EntanglementEntropy;
        let k = if self.ensemble_factor == 0 { cut.dim() * cut.dim() } else { self.ensemble_factor * cut.dim() };
        let roof = convex_roof_search(monotone, &rho, cut, k, self.roof_trials, seed)?.value();
        let roof_out = convex_roof_search(monotone, &out, cut, k, self.roof_trials, seed)?.value();
        t.diag("roof", roof);
        t.diag("roof:out", roof_out);
        t.le("convex-roof", roof_out, roof);
        Ok(())
    }
}
