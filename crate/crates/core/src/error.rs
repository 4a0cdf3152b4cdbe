use crate::field::FieldError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("structure table is not commutative at ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("structure table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("bad unit: {0}")]
    BadUnit(String),
    #[error("shape mismatch: {0}")]
    ParentMismatch(String),
    #[error("subspace is not closed under multiplication")]
    NotClosed,
    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("scan over {needed} elements exceeds the cap of {cap}")]
    ScanCapExceeded { needed: u128, cap: u64 },
    #[error("lattice enumeration exceeded {0} nodes")]
    NodeCapExceeded(usize),
    #[error("unsupported decomposition: {0}")]
    UnsupportedDecomposition(String),
    #[error("precondition failed: {0}")]
    InvalidPrecondition(String),
    #[error("step {0} of the tower is not a minimal extension")]
    NotAMinimalStep(usize),
    #[error("{0} atoms exceed the independence search limit")]
    TooManyAtoms(usize),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Errors raised because a configured budget was exhausted.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::ScanCapExceeded { .. } | Error::NodeCapExceeded(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
