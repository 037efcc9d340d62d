use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A state could not be normalized (zero norm, empty, non-finite, or
    /// drifted beyond tolerance).
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Two operands have incompatible dimensions.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// An argument is outside its valid domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The rf-SQUID potential has a single well (β ≤ 1), so no qubit exists.
    #[error("monostable device: beta = {beta} (a double well needs beta > 1)")]
    Monostable { beta: f64 },

    /// A matrix offered as a unitary is not unitary within tolerance.
    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
