//! Extending classical divergences to quantum states: the maximal extension
//! (exact eigenbasis ansatz, pure-state closed form, randomized search) and a
//! measured lower bound on the minimal one.

use resmex::divergence::{ClassicalDivergence, Divergence, MeasurementStrategy};
use resmex::extension::{
    maximal_classical_extension_ansatz, maximal_classical_extension_pure, maximal_classical_extension_search,
    minimal_classical_extension_lower,
};
use resmex::qstate::{linalg, random_density, random_pure};

fn main() -> resmex::Result<()> {
    let rho = random_density(3, 3, 41)?;
    let sigma = random_density(3, 3, 42)?;

    let kl = ClassicalDivergence::Kl;
    let max = maximal_classical_extension_ansatz(kl, &rho, &sigma)?;
    let min = minimal_classical_extension_lower(kl, &rho, &sigma, &MeasurementStrategy::PencilEigenbasis)?;
    let umegaki = Divergence::Umegaki.evaluate(&rho, &sigma)?;
    let near_one = Divergence::geometric(1.0 - 1e-9).evaluate(&rho, &sigma)?;
    println!(
        "KL: minimal >= {} ({:?}), umegaki {umegaki}, maximal {} ({:?})",
        min.value, min.direction, max.value, max.direction
    );
    println!("geometric near order 1: {near_one}");

    for alpha in [0.5, 2.0, 3.0] {
        let kind = ClassicalDivergence::renyi(alpha);
        let ansatz = maximal_classical_extension_ansatz(kind, &rho, &sigma)?;
        let search = maximal_classical_extension_search(kind, &rho, &sigma, 2000, 9)?;
        // The geometric formula covers orders up to 2 only; beyond that the
        // ansatz is merely an upper bound.
        let geometric = match Divergence::geometric(alpha).evaluate(&rho, &sigma) {
            Ok(v) => v.to_string(),
            Err(_) => "n/a".to_string(),
        };
        println!(
            "renyi {alpha}: ansatz {} ({:?}), search {}, geometric {geometric}",
            ansatz.value, ansatz.direction, search.value
        );
    }

    let psi = random_pure(3, 43)?;
    let pure = maximal_classical_extension_pure(kl, &psi, &sigma)?;
    let inv = linalg::power_on_support(sigma.matrix(), -1.0, 1e-10);
    let expected = linalg::expectation(&inv, psi.vector()).log2();
    println!("pure state: {} vs log <psi|sigma^-1|psi> = {expected:.12}", pure.value);
    Ok(())
}
