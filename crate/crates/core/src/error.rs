use thiserror::Error;

/// Errors raised by state handling, invariant evaluation and bound construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state has (numerically) zero norm")]
    ZeroState,
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("qubit index {0} out of range 1..=4")]
    BadQubitIndex(usize),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("non-finite input")]
    NonFinite,
    #[error("invalid qubit permutation {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("qubit {0} cannot be traced: the focus qubit is A1")]
    BadQubitLabel(String),
    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),
    #[error("mixed state has rank > 2 (third eigenvalue {0:e})")]
    RankTooHigh(f64),
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("root iteration did not converge")]
    DidNotConverge,
    #[error("branch probability {0:e} too small for the three-qubit unitary construction")]
    DegenerateProbability(f64),
    #[error("invariant pattern does not match case {0}")]
    WrongCase(String),
    #[error("parameter arity mismatch for class {0}")]
    BadArity(String),
    #[error("value not printed for this combination")]
    NotPrinted,
    #[error("parameter {0} out of range")]
    OutOfRange(f64),
    #[error("p = {p} does not belong to the {branch} branch")]
    BranchMismatch { p: f64, branch: String },
    #[error("wrong array length: expected {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFinite | Error::ZeroPolynomial | Error::DidNotConverge
        )
    }
}
