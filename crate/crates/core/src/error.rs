use thiserror::Error;

/// Errors produced by the forward and inverse solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrozenError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The frozen point does not fall on a grid node.
    #[error("frozen point a = {a} is not a grid node for N = {n} (a*N must be an integer)")]
    NotSnapped { a: f64, n: usize },

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("root isolation failed for eigenvalue index {index}: {detail}")]
    RootIsolation { index: usize, detail: String },

    /// The truncated product was asked for a value at a reference zero it cannot see.
    #[error("lambda coincides with reference zero of index {index} beyond the truncation; raise n_trunc")]
    PoleInTail { index: usize },

    #[error("gamma = +-1 is the degenerate case; use algorithm2 with an operator K")]
    DegenerateCase,

    #[error("inconsistent spectrum: {0}")]
    InconsistentSpectrum(String),

    #[error("operator error: {0}")]
    Operator(String),

    #[error("growth condition violated: |w0 + w1| = {violation:.3e} on (1-a, 1)")]
    GrowthViolated { violation: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, FrozenError>;
