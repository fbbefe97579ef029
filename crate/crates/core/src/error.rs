use thiserror::Error;

/// Errors raised by the state, concurrence and oracle computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The requested superposition is the zero vector (alpha = 0 with the minus sign).
    #[error("degenerate state: {0}")]
    DegenerateState(String),

    #[error("Fock truncation {trunc} too small (required {required}, tail mass {tail_mass:e})")]
    TruncationTooSmall {
        trunc: usize,
        required: usize,
        tail_mass: f64,
    },

    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
