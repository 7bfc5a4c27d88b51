use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |A - A^dag| entry = {violation:e})")]
    NotHermitian { violation: f64 },

    #[error("matrix is not positive semi-definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("bad trace for {expected} state: {trace}")]
    BadTrace { trace: f64, expected: &'static str },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimCap { dim: usize, cap: usize },

    #[error("state has no eigenvalue above the support cutoff")]
    ZeroState,

    #[error("bad shape: {0}")]
    BadShape(String),

    #[error("vector norm {norm} is not 1")]
    NotNormalized { norm: f64 },

    #[error("Kraus operators violate {kind} completeness by {violation:e}")]
    NotTracePreserving { kind: &'static str, violation: f64 },

    #[error("invalid POVM: {0}")]
    BadPovm(String),

    #[error("invalid probability distribution: {0}")]
    BadDistribution(String),

    #[error("alpha = {alpha} is outside the validity window of {variant}")]
    AlphaOutOfRange { alpha: f64, variant: &'static str },

    #[error("epsilon = {0} is outside the allowed range")]
    BadEpsilon(f64),

    #[error("support of the first argument is not contained in the support of the second")]
    SupportViolation,

    #[error("indeterminate value: {0}")]
    IndeterminateValue(&'static str),

    #[error("bipartite cut {dim_a}x{dim_b} does not factor dimension {dim}")]
    BadCut { dim_a: usize, dim_b: usize, dim: usize },

    #[error("cut {dim_a}x{dim_b} is not decidable by the PPT criterion")]
    UnsupportedCut { dim_a: usize, dim_b: usize },

    #[error("ensemble size {size} is below the state rank {rank}")]
    BadEnsembleSize { size: usize, rank: usize },

    #[error("rate at n = {n} is not finite")]
    NonFiniteRate { n: usize },

    #[error("unknown suite `{name}`; available: {available}")]
    UnknownSuite { name: String, available: String },

    #[error("bad suite configuration: {0}")]
    BadConfig(String),

    #[error("unknown divergence `{0}`")]
    UnknownDivergence(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid field `{field}`: {message}")]
    BadField { field: String, message: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by malformed or missing input rather than a
    /// failed computation; the CLI maps these to exit code 2.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::ZeroState
                | Error::SupportViolation
                | Error::IndeterminateValue(_)
                | Error::NonFiniteRate { .. }
                | Error::Csv(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
