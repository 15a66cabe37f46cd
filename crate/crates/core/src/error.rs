use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("amplitude vector has length {found}, expected {expected}")]
    BadLength { expected: usize, found: usize },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("gate matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid gate targets {targets:?} on {n_qubits} qubits")]
    InvalidTargets { targets: Vec<usize>, n_qubits: usize },

    #[error("states are not orthogonal (|overlap| = {overlap:e})")]
    NotOrthogonal { overlap: f64 },

    #[error("exact evolution on {n_qubits} qubits exceeds the limit of {max}; use the trotter method")]
    TooLargeForExact { n_qubits: usize, max: usize },

    #[error("operator does not commute with the Hamiltonian (commutator norm {norm:e})")]
    NotCommuting { norm: f64 },

    #[error("invalid branch decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable snake_case name of the variant, for structured reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::BadLength { .. } => "bad_length",
            Error::NotNormalized { .. } => "not_normalized",
            Error::NotUnitary { .. } => "not_unitary",
            Error::InvalidTargets { .. } => "invalid_targets",
            Error::NotOrthogonal { .. } => "not_orthogonal",
            Error::TooLargeForExact { .. } => "too_large_for_exact",
            Error::NotCommuting { .. } => "not_commuting",
            Error::InvalidDecomposition(_) => "invalid_decomposition",
            Error::InvariantViolated(_) => "invariant_violated",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
