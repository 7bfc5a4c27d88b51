//! One-shot quantities: information spectrum D_s, hypothesis testing D_h and
//! the measured lower bound on the smoothed D_min.

use resmex::divergence::{d_h_epsilon, d_min_epsilon_lower, d_s_epsilon, pencil_breakpoints};
use resmex::qstate::random_density;

fn main() -> resmex::Result<()> {
    let rho = random_density(3, 3, 5)?;
    let sigma = random_density(3, 3, 6)?;
    println!("pencil breakpoints: {:?}", pencil_breakpoints(&rho, &sigma)?);

    for (eps, delta) in [(0.1, 0.05), (0.3, 0.1)] {
        let ds = d_s_epsilon(&rho, &sigma, eps)?;
        let dh = d_h_epsilon(&rho, &sigma, eps)?;
        let upper = d_s_epsilon(&rho, &sigma, eps + delta)?.value() - delta.log2();
        println!("eps {eps}: D_s {ds} <= D_h {dh} <= D_s(eps+delta) - log delta = {upper:.12}");
    }

    for eps in [0.05, 0.2, 0.5] {
        let lower = d_min_epsilon_lower(&rho, &sigma, eps)?;
        let ds = d_s_epsilon(&rho, &sigma, eps * eps / 2.0)?;
        println!("eps {eps}: smoothed D_min >= {lower} >= D_s(eps^2/2) = {ds}");
    }
    Ok(())
}
