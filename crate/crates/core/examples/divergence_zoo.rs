//! Every quantum divergence on one random pair, showing that each relative
//! entropy lies between D_min and D_max and that the Rényi families are
//! ordered sandwiched ≤ Petz ≤ geometric.

use resmex::divergence::Divergence;
use resmex::qstate::random_density;

fn main() -> resmex::Result<()> {
    let rho = random_density(3, 3, 1)?;
    let sigma = random_density(3, 3, 2)?;

    let dmin = Divergence::DMin.evaluate(&rho, &sigma)?;
    let dmax = Divergence::DMax.evaluate(&rho, &sigma)?;
    println!("{:<18} {}", "dmin", dmin);
    println!("{:<18} {}", "dmax", dmax);
    for d in [Divergence::TraceDistance, Divergence::Fidelity] {
        println!("{:<18} {}", d.to_string(), d.evaluate(&rho, &sigma)?);
    }

    let mut relative_entropies = vec![Divergence::Umegaki];
    for alpha in [0.5, 0.7, 2.0, 5.0, f64::INFINITY] {
        relative_entropies.push(Divergence::sandwiched(alpha));
    }
    relative_entropies.extend([Divergence::geometric(0.5), Divergence::geometric(2.0)]);
    for d in relative_entropies {
        let v = d.evaluate(&rho, &sigma)?;
        let inside = dmin.value() <= v.value() + 1e-12 && v.value() <= dmax.value() + 1e-12;
        println!("{:<18} {}  within [dmin, dmax]: {inside}", d.to_string(), v);
    }

    println!();
    for alpha in [0.5, 0.8, 1.5, 2.0] {
        let s = Divergence::sandwiched(alpha).evaluate(&rho, &sigma)?;
        let p = Divergence::petz(alpha).evaluate(&rho, &sigma)?;
        let g = Divergence::geometric(alpha).evaluate(&rho, &sigma)?;
        println!("alpha {alpha}: sandwiched {s} <= petz {p} <= geometric {g}");
    }
    Ok(())
}
