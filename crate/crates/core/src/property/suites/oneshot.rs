//! Suites on the one-shot quantities: the information-spectrum /
//! hypothesis-testing chain and the finite-n equipartition trace.

use super::{random_distribution, random_faithful, random_state};
use crate::divergence::{d_h_epsilon, d_max, d_min_epsilon_lower, d_s_epsilon, umegaki};
use crate::error::{Error, Result};
use crate::property::config::SuiteConfig;
use crate::property::oracles;
use crate::property::trial::{Suite, Trial};
use crate::qstate::{tensor_power, DensityState, DEFAULT_CUTOFF, DIM_CAP};

/// `D_s^ε ≤ D_h^ε ≤ D_s^{ε+δ} - log δ`, the gentle-measurement lower bound
/// `D_min^ε ≥ D_s^{ε²/2}`, and exact agreement with classical brute force on
/// commuting pairs (every third trial).
pub(crate) struct HypoChain {
    pairs: Vec<(f64, f64)>,
}

impl HypoChain {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        let pairs = c.extra_pairs("pairs", &[(0.1, 0.05), (0.3, 0.1)])?;
        if pairs.is_empty() || pairs.iter().any(|&(e, d)| !(e > 0.0 && d > 0.0 && e + d < 1.0)) {
            return Err(Error::BadConfig("extra.pairs: need ε, δ > 0 with ε + δ < 1".into()));
        }
        Ok(Box::new(Self { pairs }))
    }
}

impl Suite for HypoChain {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let commuting = t.index.is_multiple_of(3);
        let (rho, sigma, classical) = if commuting {
            let p = random_distribution(&mut t.rng, t.dim, true);
            let q = random_distribution(&mut t.rng, t.dim, false);
            (DensityState::from_diagonal(&p)?, DensityState::from_diagonal(&q)?, Some((p, q)))
        } else {
            (random_state(t)?, random_faithful(t)?, None)
        };
        t.diag("commuting", if commuting { 1.0 } else { 0.0 });
        for &(eps, delta) in &self.pairs {
            let ds = d_s_epsilon(&rho, &sigma, eps)?.value();
            let dh = d_h_epsilon(&rho, &sigma, eps)?.value();
            let ds_wide = d_s_epsilon(&rho, &sigma, eps + delta)?.value();
            t.diag(format!("ds({eps})"), ds);
            t.diag(format!("dh({eps})"), dh);
            t.le(format!("ds<=dh({eps})"), ds, dh);
            t.le(format!("dh<=ds+({eps},{delta})"), dh, ds_wide - delta.log2());
            let lower = d_min_epsilon_lower(&rho, &sigma, eps)?.value();
            let ds_half = d_s_epsilon(&rho, &sigma, eps * eps / 2.0)?.value();
            t.diag(format!("dmin-lower({eps})"), lower);
            t.le(format!("gentle({eps})"), ds_half, lower);
            if let Some((p, q)) = &classical {
                t.close("classical-ds", ds, oracles::classical_information_spectrum(p, q, eps));
                t.close("classical-dh", dh, oracles::classical_hypothesis_testing(p, q, eps));
            }
        }
        Ok(())
    }
}

/// Trial `i` evaluates `n = i + 1` copies of a fixed commuting pair: the
/// rate `D_s^ε(ρ^⊗n‖σ^⊗n)/n` approaches the relative entropy (the last gap
/// must be below the first) while the `D_max` rate never drops below it.
pub(crate) struct Equipartition {
    rho: DensityState,
    sigma: DensityState,
    epsilon: f64,
    last: usize,
}

impl Equipartition {
    pub(crate) fn build(c: &SuiteConfig) -> Result<Box<dyn Suite>> {
        let p = c.extra_f64_list("p", &[0.9, 0.1])?;
        let q = c.extra_f64_list("q", &[0.5, 0.5])?;
        let epsilon = c.extra_f64("epsilon", 0.05)?;
        if p.len() != q.len() {
            return Err(Error::BadConfig("extra.p and extra.q differ in length".into()));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::BadConfig("extra.epsilon must lie in (0, 1)".into()));
        }
        let dim = (p.len() as u32)
            .checked_pow(c.trials as u32)
            .map(|d| d as usize)
            .unwrap_or(usize::MAX);
        if p.len() < 2 || dim > DIM_CAP {
            return Err(Error::BadConfig(format!(
                "{} copies of a {}-level pair exceed the dimension cap {DIM_CAP}",
                c.trials,
                p.len()
            )));
        }
        let to_state = |v: &[f64], key: &str| {
            DensityState::from_diagonal(v).map_err(|e| Error::BadConfig(format!("extra.{key}: {e}")))
        };
        Ok(Box::new(Self {
            rho: to_state(&p, "p")?,
            sigma: to_state(&q, "q")?,
            epsilon,
            last: c.trials - 1,
        }))
    }

    fn rate(&self, n: usize) -> Result<(f64, f64)> {
        let (r, s) = (tensor_power(&self.rho, n)?, tensor_power(&self.sigma, n)?);
        let ds = d_s_epsilon(&r, &s, self.epsilon)?.value() / n as f64;
        let dmax = d_max(&r, &s)?.value() / n as f64;
        Ok((ds, dmax))
    }
}

impl Suite for Equipartition {
    fn run(&self, t: &mut Trial) -> Result<()> {
        let n = t.index + 1;
        let d = umegaki(&self.rho, &self.sigma, DEFAULT_CUTOFF)?.value();
        let (rate, dmax_rate) = self.rate(n)?;
        let gap = (rate - d).abs();
        t.diag("n", n as f64);
        t.diag("rate", rate);
        t.diag("gap", gap);
        t.diag("dmax_rate", dmax_rate);
        t.diag("relative_entropy", d);
        t.le("dmax-rate>=relative-entropy", d, dmax_rate);
        if t.index == self.last && self.last > 0 {
            let (first, _) = self.rate(1)?;
            t.holds("final-gap<first-gap", gap < (first - d).abs());
        }
        Ok(())
    }
}
