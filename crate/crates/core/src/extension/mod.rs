//! Optimal extensions of resource measures: to subnormalized states, from
//! classical to quantum pairs, and their finite-n regularizations.
//!
//! Every bound carries a [`Direction`]: `Exact` only where a closed form is
//! known, `Upper`/`Lower` for feasible points of an infimum/supremum.

pub mod bound;
pub mod classical;
pub mod regularize;
pub mod subnorm;

pub use bound::{Direction, ExtensionBound, Witness};
pub use classical::{
    maximal_classical_extension_ansatz, maximal_classical_extension_pure, maximal_classical_extension_search,
    minimal_classical_extension_lower,
};
pub use regularize::{regularized_rate, RatePoint, RateQuantity, RegularizationTrace};
pub use subnorm::{
    direct_sum_embedding, extend_subnormalized, extended_d_max, extended_umegaki, generalized_fidelity,
    generalized_trace_distance, purified_distance,
};
