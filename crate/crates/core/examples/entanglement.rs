//! Schmidt decomposition, the PPT-decided Schmidt number across the Werner
//! threshold, and decomposition searches for mixed-state entanglement.

use resmex::entangle::{
    convex_roof_search, entanglement_entropy, schmidt_decompose, schmidt_number_ppt, smoothed_extension,
    BipartiteCut, PureMonotone,
};
use resmex::qstate::{linalg, random_pure, DensityState, PureState};

fn werner(p: f64) -> resmex::Result<DensityState> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let phi = PureState::from_real(&[h, 0.0, 0.0, h])?.density();
    DensityState::normalized(phi.matrix().scale(p) + linalg::identity(4).scale((1.0 - p) / 4.0))
}

fn main() -> resmex::Result<()> {
    let cut = BipartiteCut::new(2, 3);
    let psi = random_pure(6, 51)?;
    let data = schmidt_decompose(&psi, cut)?;
    println!("random 2x3 pure state: coefficients {:?}, rank {}", data.coefficients, data.rank);
    println!("entanglement entropy {:.12}", entanglement_entropy(&psi, cut)?);

    let qubits = BipartiteCut::new(2, 2);
    for p in [0.2, 1.0 / 3.0 - 1e-9, 1.0 / 3.0 + 1e-9, 0.5] {
        println!("werner p = {p:.10}: Schmidt number {}", schmidt_number_ppt(&werner(p)?, qubits)?);
    }

    let rho = werner(0.6)?;
    let roof = convex_roof_search(PureMonotone::EntanglementEntropy, &rho, qubits, 4, 2000, 1)?;
    println!("werner 0.6: entanglement of formation <= {} ({:?})", roof.value, roof.direction);
    for eps in [0.0, 0.05, 0.1] {
        let smooth = smoothed_extension(PureMonotone::EntanglementEntropy, &rho, qubits, eps, 400, 1)?;
        println!("  smoothed at eps {eps}: <= {}", smooth.value);
    }
    Ok(())
}
