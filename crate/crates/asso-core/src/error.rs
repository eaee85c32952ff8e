use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid slot {slot} for rank {rank}")]
    InvalidSlot { slot: usize, rank: usize },
    #[error("matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("exchange matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("seed budget of {0} exceeded; suspected non-finite type")]
    BudgetExceeded(usize),
    #[error("Cartan matrix is not of finite type")]
    NotFiniteCartan,
    #[error("sign-coherence violated at seed {seed} slot {slot}")]
    SignCoherence { seed: String, slot: usize },
    #[error("matrix is not bipartite")]
    NotBipartite,
    #[error("point is not fairly balanced: w0(lambda) != -lambda")]
    NotFairlyBalanced,
    #[error("lift function is not strictly positive")]
    NotPositive,
    #[error("lift function is not exchange submodular: {0}")]
    NotSubmodular(String),
    #[error("{0}")]
    Invalid(String),
}
