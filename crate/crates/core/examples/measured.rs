//! Measured divergences: the classical divergence of the outcome statistics,
//! which lower-bounds every quantum extension.

use resmex::divergence::{measured_divergence, ClassicalDivergence, Divergence, MeasurementStrategy};
use resmex::qstate::{random_density, DensityState};

fn main() -> resmex::Result<()> {
    let rho = random_density(3, 3, 21)?;
    let sigma = random_density(3, 3, 22)?;
    let umegaki = Divergence::Umegaki.evaluate(&rho, &sigma)?;

    let pencil = measured_divergence(ClassicalDivergence::Kl, &rho, &sigma, &MeasurementStrategy::PencilEigenbasis)?;
    let random = MeasurementStrategy::RandomProjective { count: 500, seed: 3 };
    let best_random = measured_divergence(ClassicalDivergence::Kl, &rho, &sigma, &random)?;
    println!("umegaki {umegaki}");
    println!("measured, pinched eigenbasis  {pencil}");
    println!("measured, best of 500 random  {best_random}");

    // For commuting pairs the pinched eigenbasis loses nothing.
    let p = DensityState::from_diagonal(&[0.6, 0.3, 0.1])?;
    let q = DensityState::from_diagonal(&[0.2, 0.3, 0.5])?;
    let m = measured_divergence(ClassicalDivergence::Kl, &p, &q, &MeasurementStrategy::PencilEigenbasis)?;
    println!("commuting pair: measured {m} vs umegaki {}", Divergence::Umegaki.evaluate(&p, &q)?);
    Ok(())
}
