use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state dimension must be at least 2, found {0}")]
    DimensionTooSmall(usize),

    #[error("operation requires a qubit (dimension 2), found dimension {0}")]
    NotQubit(usize),

    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),

    #[error("basis vectors are not orthonormal: |<{i}|{j}>| = {overlap:e}")]
    NotOrthonormal { i: usize, j: usize, overlap: f64 },

    #[error("basis has {found} vectors but dimension {dim}")]
    IncompleteBasis { dim: usize, found: usize },

    #[error("Bloch vector is not of unit length: |v| = {0}")]
    NotUnitBloch(f64),

    #[error("beamsplitter matrix is not a symmetric unitary")]
    NotSymmetricSplitter,

    #[error("hypothesis states are parallel; their span is one-dimensional")]
    Degenerate,

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("parameter `{name}` = {value} is out of range ({range})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
