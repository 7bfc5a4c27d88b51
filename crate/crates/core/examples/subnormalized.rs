//! Closed-form extensions to subnormalized states (trace ≤ 1), compared with
//! the direct-sum construction they are equal to.

use resmex::divergence::Divergence;
use resmex::extension::{
    direct_sum_embedding, extend_subnormalized, extended_d_max, extended_umegaki, generalized_fidelity,
    generalized_trace_distance, purified_distance,
};
use resmex::qstate::random_density;

fn main() -> resmex::Result<()> {
    let rho = random_density(3, 2, 31)?.scaled(0.8)?;
    let sigma = random_density(3, 3, 32)?.scaled(0.6)?;
    println!("traces: {:.3} and {:.3}", rho.trace(), sigma.trace());

    let embedded = direct_sum_embedding(&rho);
    println!("embedding of rho: dimension {}, trace {:.12}", embedded.dim(), embedded.trace());

    let pairs = [
        ("trace distance", generalized_trace_distance(&rho, &sigma)?, Divergence::TraceDistance),
        ("fidelity", generalized_fidelity(&rho, &sigma)?, Divergence::Fidelity),
        ("umegaki", extended_umegaki(&rho, &sigma)?, Divergence::Umegaki),
        ("dmax", extended_d_max(&rho, &sigma)?, Divergence::DMax),
    ];
    for (name, closed, d) in pairs {
        let direct = extend_subnormalized(&d, &rho, &sigma)?;
        println!("{name:<15} closed form {closed}  direct sum {direct}");
    }
    println!("purified distance {}", purified_distance(&rho, &sigma)?);
    Ok(())
}
