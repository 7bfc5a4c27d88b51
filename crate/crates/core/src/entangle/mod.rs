//! Entanglement: Schmidt machinery, the PPT-decided Schmidt number, and
//! decomposition searches that extend pure-state monotones to mixed states.

pub mod roof;
pub mod schmidt;

pub use roof::{convex_roof_search, smoothed_extension};
pub use schmidt::{
    entanglement_entropy, min_partial_transpose_eigenvalue, schmidt_decompose, schmidt_number_ppt, BipartiteCut,
    PureMonotone, SchmidtData,
};
