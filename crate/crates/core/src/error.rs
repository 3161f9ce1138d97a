use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("party index {index} out of range for {parties} parties")]
    PartyOutOfRange { index: usize, parties: usize },

    #[error("invalid local dimension {0} (must be at least 2)")]
    InvalidLocalDimension(usize),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },

    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("duplicate party label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown party label `{0}`")]
    UnknownLabel(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parameter {name} = {value} outside allowed range [{min}, {max}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("invalid unitary set: {0}")]
    InvalidUnitarySet(String),

    #[error("invalid projector set: {0}")]
    InvalidProjectors(String),

    #[error("size cap exceeded: {what} = {size} > {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("eigendecomposition failed to converge")]
    EigenFailure,
}

impl Error {
    /// Numerical failures as opposed to malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoSignChange { .. } | Error::EigenFailure)
    }
}
