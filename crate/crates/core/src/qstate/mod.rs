//! States, channels, measurements, random ensembles and the matrix functions
//! the rest of the crate is built on.

pub mod channel;
pub mod io;
pub mod linalg;
pub mod random;
pub mod state;

pub use channel::{apply_channel, ChannelKind, QuantumChannel};
pub use linalg::{eigh, ComplexMatrix, ComplexVector, EigenDecomposition, Tolerances, C64, DEFAULT_CUTOFF};
pub use random::{random_channel, random_density, random_povm, random_pure};
pub use state::{
    matrix_power_on_support, purify, support_projector, tensor, tensor_power, validate_state,
    ClassicalDistribution, DensityState, Povm, PureState, TraceClass, DIM_CAP,
};
