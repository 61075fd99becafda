use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("q must satisfy 0 < q < 1, got {0}")]
    QOutOfRange(String),

    #[error("invalid truncation budget: {0}")]
    InvalidBudget(String),

    #[error("truncation budget exhausted after {terms} terms: bound {bound} still exceeds eps {eps}")]
    BudgetExhausted { terms: usize, bound: String, eps: String },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("series lattices differ: 1/{0} vs 1/{1}")]
    LatticeMismatch(u32, u32),

    #[error("exponent {exponent} is not on the lattice (1/{denom})Z")]
    OffLattice { exponent: String, denom: u32 },

    #[error("series has no invertible leading term inside its window")]
    NotInvertible,

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("identity `{0}` has no formal mode")]
    NotFormal(String),

    #[error("{0}")]
    Internal(String),
}
