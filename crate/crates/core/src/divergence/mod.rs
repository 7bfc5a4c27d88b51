//! Quantum and classical divergences, all in log base 2.
//!
//! Support conventions are fail-closed: a support condition that fails within
//! tolerance yields `+∞` rather than a huge finite number.

pub mod classical;
pub mod measured;
pub mod oneshot;
pub mod quantum;
pub mod value;

pub use classical::{classical_divergence, classical_divergence_raw, ClassicalDivergence};
pub use measured::{measured_divergence, measured_divergence_with_witness, MeasuredValue, MeasurementStrategy};
pub use oneshot::{d_h_epsilon, d_min_epsilon_lower, d_s_epsilon, pencil_breakpoints};
pub use quantum::{
    d_max, d_min, fidelity, renyi, supports_contained, trace_distance, umegaki, Divergence, RenyiVariant,
};
pub use value::{ext_from_json, ext_to_json, round_sig12, DivergenceValue};
