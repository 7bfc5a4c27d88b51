//! Randomized invariants over generated states, channels and distributions.

use proptest::prelude::*;
use resmex::divergence::{
    classical_divergence_raw, measured_divergence, round_sig12, ClassicalDivergence, Divergence, DivergenceValue,
    MeasurementStrategy,
};
use resmex::entangle::{schmidt_decompose, BipartiteCut};
use resmex::extension::{generalized_trace_distance, maximal_classical_extension_ansatz, purified_distance};
use resmex::property::SuiteConfig;
use resmex::qstate::io::{parse_state, state_to_json};
use resmex::qstate::random::{
    random_channel_with, random_density_with, random_full_rank_with, random_pure_with, random_subnormalized_with,
    random_tni_with, trial_rng,
};
use resmex::qstate::{validate_state, ChannelKind, DensityState, Tolerances, TraceClass};

const TOL: f64 = 1e-9;

fn pair(seed: u64, dim: usize) -> (DensityState, DensityState) {
    let mut rng = trial_rng(seed, 0);
    let rho = random_full_rank_with(&mut rng, dim, 0.01).unwrap();
    let sigma = random_full_rank_with(&mut rng, dim, 0.01).unwrap();
    (rho, sigma)
}

fn relative_entropies() -> Vec<Divergence> {
    vec![
        Divergence::Umegaki,
        Divergence::petz(0.5),
        Divergence::petz(1.5),
        Divergence::sandwiched(0.5),
        Divergence::sandwiched(2.0),
        Divergence::sandwiched(f64::INFINITY),
        Divergence::geometric(0.5),
        Divergence::geometric(2.0),
    ]
}

fn value(d: Divergence, rho: &DensityState, sigma: &DensityState) -> f64 {
    d.evaluate(rho, sigma).unwrap().value()
}

/// Shannon entropy (base 2) of a probability vector.
fn shannon(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 1e-300).map(|&x| -x * x.log2()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_states_validate(seed: u64, dim in 2usize..=5, rank in 1usize..=5) {
        let rank = rank.min(dim);
        let rho = random_density_with(&mut trial_rng(seed, 1), dim, rank).unwrap();
        let checked = validate_state(rho.matrix().clone(), TraceClass::Normalized, &Tolerances::default());
        prop_assert!(checked.is_ok());
        prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
        let positive = rho.eigen().eigenvalues.iter().filter(|&&l| l > 1e-10).count();
        prop_assert_eq!(positive, rank);
    }

    #[test]
    fn relative_entropies_lie_between_dmin_and_dmax(seed: u64, dim in 2usize..=4) {
        let (rho, sigma) = pair(seed, dim);
        let lo = value(Divergence::DMin, &rho, &sigma);
        let hi = value(Divergence::DMax, &rho, &sigma);
        for d in relative_entropies() {
            let v = value(d, &rho, &sigma);
            prop_assert!(lo <= v + TOL && v <= hi + TOL, "{} = {} outside [{}, {}]", d, v, lo, hi);
        }
    }

    #[test]
    fn sandwiched_order_is_monotone(seed: u64, dim in 2usize..=4) {
        let (rho, sigma) = pair(seed, dim);
        let alphas = [0.5, 0.7, 1.0, 1.5, 2.0, 5.0, f64::INFINITY];
        let values: Vec<f64> = alphas.iter().map(|&a| value(Divergence::sandwiched(a), &rho, &sigma)).collect();
        for w in values.windows(2) {
            prop_assert!(w[0] <= w[1] + TOL, "{:?}", values);
        }
    }

    #[test]
    fn divergences_vanish_on_equal_states(seed: u64, dim in 2usize..=4) {
        let (rho, _) = pair(seed, dim);
        for d in relative_entropies() {
            prop_assert!(value(d, &rho, &rho).abs() < TOL, "{}", d);
        }
        prop_assert!(value(Divergence::TraceDistance, &rho, &rho).abs() < TOL);
        prop_assert!((value(Divergence::Fidelity, &rho, &rho) - 1.0).abs() < TOL);
    }

    #[test]
    fn data_processing_under_random_channels(seed: u64, dim in 2usize..=3, out in 2usize..=3) {
        let (rho, sigma) = pair(seed, dim);
        let ch = random_channel_with(&mut trial_rng(seed, 2), dim, out, 3).unwrap();
        let (r, s) = (ch.apply(&rho).unwrap(), ch.apply(&sigma).unwrap());
        prop_assert!((r.trace() - 1.0).abs() < 1e-10);
        for d in [Divergence::Umegaki, Divergence::sandwiched(2.0), Divergence::DMax, Divergence::TraceDistance] {
            prop_assert!(value(d, &r, &s) <= value(d, &rho, &sigma) + 1e-8, "{}", d);
        }
        prop_assert!(value(Divergence::Fidelity, &r, &s) + 1e-8 >= value(Divergence::Fidelity, &rho, &sigma));
    }

    #[test]
    fn trace_non_increasing_maps_shrink_trace(seed: u64, dim in 2usize..=4) {
        let rho = random_density_with(&mut trial_rng(seed, 3), dim, dim).unwrap();
        let ch = random_tni_with(&mut trial_rng(seed, 4), dim, dim, 2).unwrap();
        prop_assert_eq!(ch.kind(), ChannelKind::Tni);
        prop_assert!(ch.apply(&rho).unwrap().trace() <= 1.0 + 1e-12);
    }

    #[test]
    fn classical_kl_is_nonnegative_and_coarse_grains(
        p in prop::collection::vec(0.01f64..1.0, 3..6),
        q in prop::collection::vec(0.01f64..1.0, 3..6),
    ) {
        let n = p.len().min(q.len());
        let norm = |v: &[f64]| { let s: f64 = v[..n].iter().sum(); v[..n].iter().map(|x| x / s).collect::<Vec<_>>() };
        let (p, q) = (norm(&p), norm(&q));
        let merge = |v: &[f64]| { let mut m = vec![v[0] + v[1]]; m.extend_from_slice(&v[2..]); m };
        for kind in [ClassicalDivergence::Kl, ClassicalDivergence::renyi(0.5), ClassicalDivergence::renyi(2.0)] {
            let full = classical_divergence_raw(kind, &p, &q).unwrap().value();
            let coarse = classical_divergence_raw(kind, &merge(&p), &merge(&q)).unwrap().value();
            prop_assert!(full >= -1e-12);
            prop_assert!(coarse <= full + 1e-12);
        }
        // Independent evaluation of KL.
        let kl: f64 = p.iter().zip(&q).map(|(a, b)| a * (a / b).log2()).sum();
        let got = classical_divergence_raw(ClassicalDivergence::Kl, &p, &q).unwrap().value();
        prop_assert!((got - kl).abs() < 1e-12);
    }

    #[test]
    fn measured_below_quantum_below_maximal(seed: u64, dim in 2usize..=4) {
        let (rho, sigma) = pair(seed, dim);
        let measured = measured_divergence(ClassicalDivergence::Kl, &rho, &sigma, &MeasurementStrategy::PencilEigenbasis)
            .unwrap()
            .value();
        let umegaki = value(Divergence::Umegaki, &rho, &sigma);
        let maximal = maximal_classical_extension_ansatz(ClassicalDivergence::Kl, &rho, &sigma).unwrap().value();
        prop_assert!(measured <= umegaki + TOL && umegaki <= maximal + TOL);
    }

    #[test]
    fn purified_distance_brackets_trace_distance(seed: u64, dim in 2usize..=4) {
        let mut rng = trial_rng(seed, 5);
        let rho = random_subnormalized_with(&mut rng, dim, dim).unwrap();
        let sigma = random_subnormalized_with(&mut rng, dim, 1 + (seed as usize) % dim).unwrap();
        let td = generalized_trace_distance(&rho, &sigma).unwrap().value();
        let pd = purified_distance(&rho, &sigma).unwrap().value();
        let td_swapped = generalized_trace_distance(&sigma, &rho).unwrap().value();
        prop_assert!((td - td_swapped).abs() < 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&td));
        prop_assert!(td <= pd + TOL && pd <= (2.0 * td).sqrt() + TOL, "td {} pd {}", td, pd);
    }

    #[test]
    fn schmidt_entropy_is_reduced_state_entropy(seed: u64, da in 2usize..=3, db in 2usize..=4) {
        let cut = BipartiteCut::new(da, db);
        let psi = random_pure_with(&mut trial_rng(seed, 6), da * db).unwrap();
        let data = schmidt_decompose(&psi, cut).unwrap();
        let probs = data.probabilities();
        prop_assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        // ρ_A = M M† with M_ij = ψ_{i·db + j}.
        let v = psi.vector();
        let m = resmex::qstate::ComplexMatrix::from_fn(da, db, |i, j| v[i * db + j]);
        let reduced = DensityState::normalized(&m * m.adjoint()).unwrap();
        let spectrum: Vec<f64> = reduced.eigen().eigenvalues.iter().map(|l| l.max(0.0)).collect();
        let entropy = resmex::entangle::entanglement_entropy(&psi, cut).unwrap();
        prop_assert!((entropy - shannon(&spectrum)).abs() < 1e-9);
        prop_assert!(entropy <= (da.min(db) as f64).log2() + 1e-12);
    }

    #[test]
    fn state_files_round_trip(seed: u64, dim in 1usize..=5) {
        let rho = random_density_with(&mut trial_rng(seed, 7), dim, dim).unwrap();
        let back = parse_state(&state_to_json(&rho)).unwrap();
        prop_assert_eq!(back.matrix(), rho.matrix());
    }

    #[test]
    fn printed_values_keep_twelve_digits(x in -1e12f64..1e12) {
        let r = round_sig12(x);
        prop_assert_eq!(round_sig12(r), r);
        prop_assert!((r - x).abs() <= 1e-11 * x.abs());
        let v = DivergenceValue::new(x.abs());
        let back: DivergenceValue = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        prop_assert_eq!(back.value(), round_sig12(x.abs()));
    }

    #[test]
    fn suite_configs_validate_dims(dims in prop::collection::vec(0usize..20, 1..4), trials in 0usize..3) {
        let mut c = SuiteConfig::defaults("sandwich", 0).unwrap();
        c.dims = dims.clone();
        c.trials = trials;
        let ok = trials >= 1 && dims.iter().all(|d| (2..=16).contains(d));
        prop_assert_eq!(c.validate().is_ok(), ok);
    }
}

#[test]
fn infinite_values_serialize_as_inf() {
    let v = serde_json::to_string(&DivergenceValue::INFINITY).unwrap();
    assert_eq!(v, "\"inf\"");
}
