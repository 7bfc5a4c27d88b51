//! Finite-n regularization: the information-spectrum rate approaches the
//! relative entropy while the D_max rate stays above it.

use resmex::divergence::{umegaki, Divergence};
use resmex::extension::{regularized_rate, RateQuantity};
use resmex::qstate::{DensityState, DEFAULT_CUTOFF};

fn main() -> resmex::Result<()> {
    let rho = DensityState::from_diagonal(&[0.9, 0.1])?;
    let sigma = DensityState::from_diagonal(&[0.5, 0.5])?;
    let d = umegaki(&rho, &sigma, DEFAULT_CUTOFF)?.value();
    println!("D(rho||sigma) = {d:.12}");

    let ds = regularized_rate(&RateQuantity::InformationSpectrum { epsilon: 0.05 }, &rho, &sigma, 8)?;
    let dmax = regularized_rate(&RateQuantity::Divergence(Divergence::DMax), &rho, &sigma, 8)?;
    println!("{:>3} {:>16} {:>16} {:>16}", "n", "D_s rate", "|gap|", "D_max rate");
    for (s, m) in ds.points.iter().zip(&dmax.points) {
        println!("{:>3} {:>16.12} {:>16.12} {:>16.12}", s.n, s.rate, (s.rate - d).abs(), m.rate);
    }
    Ok(())
}
