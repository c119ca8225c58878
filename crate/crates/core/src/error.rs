use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2..=251")]
    NotPrime(u32),

    #[error("residue {value} is out of range for F_{p}")]
    ResidueOutOfRange { value: u32, p: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("objects over F_{left} and F_{right} cannot be combined")]
    FieldMismatch { left: u32, right: u32 },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("element does not belong to the ring model: {0}")]
    ModelMismatch(String),

    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),

    #[error("{what} index {index} out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("invalid ring table: {0}")]
    InvalidTable(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("incomplete E-side data: {0}")]
    IncompleteData(String),

    #[error("inconsistent E-side data: {0}")]
    InconsistentData(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("{0}")]
    Input(String),
}
