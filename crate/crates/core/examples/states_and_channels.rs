//! Random states and channels, tensor powers, purification and the JSON file
//! format.

use resmex::qstate::io::{parse_state, state_to_json};
use resmex::qstate::{
    apply_channel, purify, random_channel, random_density, tensor_power, DensityState, QuantumChannel,
};

fn main() -> resmex::Result<()> {
    let rho = random_density(3, 2, 7)?;
    println!("rho: dim {}, trace {:.12}, eigenvalues {:?}", rho.dim(), rho.trace(), rho.eigen().eigenvalues);

    let psi = purify(&rho)?;
    println!("purification lives in dimension {}", psi.dim());

    let channel = random_channel(3, 2, 4, 11)?;
    let out = apply_channel(&channel, &rho)?;
    println!("channel {:?} 3 -> 2, output trace {:.12}", channel.kind(), out.trace());

    let dephased = QuantumChannel::dephasing(3).apply(&rho)?;
    println!("dephased diagonal: {:?}", (0..3).map(|i| dephased.matrix()[(i, i)].re).collect::<Vec<_>>());

    let q = DensityState::from_diagonal(&[0.9, 0.1])?;
    println!("diag(.9,.1)^{{⊗3}} has dimension {}", tensor_power(&q, 3)?.dim());

    let text = state_to_json(&q);
    let back = parse_state(&text)?;
    println!("round trip through JSON preserved the state: {}", back.matrix() == q.matrix());
    println!("{text}");
    Ok(())
}
