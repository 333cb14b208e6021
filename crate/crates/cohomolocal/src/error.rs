use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus: p={p} must be prime, l={l} >= 1, and p^l <= {max}")]
    InvalidModulus { p: u64, l: u32, max: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operands have different moduli")]
    ModulusMismatch,

    #[error("generator is not invertible modulo q")]
    NonInvertibleGenerator,

    #[error("element cap {cap} exceeded during closure")]
    CapExceeded { cap: usize },

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("submodule is not contained in the ambient module")]
    ContainmentViolation,

    #[error("element does not belong to the parent group")]
    SubgroupMismatch,

    #[error("element violates the defining bilinear form")]
    FormViolation,

    #[error("polynomial is reducible over the prime field")]
    ReduciblePolynomial,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
