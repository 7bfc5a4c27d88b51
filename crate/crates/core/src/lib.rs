//! Quantum divergences and their optimal extensions.
//!
//! - [`qstate`]: density matrices, channels, POVMs, random sampling and JSON files.
//! - [`divergence`]: trace distance, fidelity, Umegaki, D_min/D_max, Petz,
//!   sandwiched and geometric Rényi divergences, measured and one-shot quantities.
//! - [`extension`]: subnormalized, maximal and minimal classical-to-quantum
//!   extensions, and finite-n regularization.
//! - [`entangle`]: Schmidt data, the PPT Schmidt number and decomposition searches.
//! - [`property`]: randomized property suites with reproducible reports.
//! - [`cli`]: the `resmex` command line.

// `!(x >= 0.0)`-style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod divergence;
pub mod entangle;
pub mod error;
pub mod extension;
pub mod property;
pub mod qstate;

pub use error::{Error, Result};
