use alloc::string::String;

/// Failures raised by the core library.
///
/// Validation errors carry the offending magnitude so callers can report
/// how far an input is from satisfying the invariant.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has zero dimension")]
    EmptyMatrix,
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hermiticity check failed: max |M - M^dag| = {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("positivity check failed: eigenvalue {eigenvalue:e} below tolerance")]
    NegativeEigenvalue { eigenvalue: f64 },
    #[error("trace check failed: trace = {re} + {im}i, deviation {deviation:e}")]
    TraceDeviation { re: f64, im: f64, deviation: f64 },
    #[error("unitarity check failed: max |U^dag U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },
    #[error("invalid register layout: {0}")]
    Layout(String),
    #[error("rank {rank} out of range for dimension {dim}")]
    RankOutOfRange { rank: usize, dim: usize },
    #[error("factor index {index} out of range for {factors} factors")]
    IndexOutOfRange { index: usize, factors: usize },
    #[error("factors {i} and {j} have unequal local dimensions ({dim_i} vs {dim_j})")]
    UnequalLocalDims { i: usize, j: usize, dim_i: usize, dim_j: usize },
    #[error("mapping is not a dimension-preserving bijection: {0}")]
    InvalidPermutation(String),
    #[error("expected {expected} register factors, found {found}")]
    WrongFactorCount { expected: usize, found: usize },
    #[error("probe list is empty")]
    EmptyProbes,
    #[error("need at least {required} distinct phase settings, found {found}")]
    DegeneratePhaseGrid { required: usize, found: usize },
    #[error("internal consistency error: fringe probability {value} outside [0, 1]")]
    ProbabilityOutOfRange { value: f64 },
    #[error("invalid sampling configuration: {0}")]
    InvalidSampling(String),
    #[error("measurement element {element} has vanishing probability {probability:e}")]
    ZeroProbability { element: usize, probability: f64 },
    #[error("invalid POVM: {0}")]
    InvalidPovm(String),
    #[error("invalid classical-quantum specification: {0}")]
    InvalidCqSpec(String),
}

pub type Result<T> = core::result::Result<T, Error>;
