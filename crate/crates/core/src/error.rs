use thiserror::Error;

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("cover pair references undeclared element `{0}`")]
    UnknownLabel(String),

    #[error("cover relation contains a cycle through `{0}`")]
    CycleDetected(String),

    #[error("elements `{0}` and `{1}` have no unique {2}")]
    NotALattice(String, String, &'static str),

    #[error("order has no unique {0} element")]
    NoBounds(&'static str),

    #[error("lattice is trivial: bottom equals top")]
    TrivialLattice,

    #[error("{what} size {got} exceeds cap {cap}")]
    SizeCapExceeded {
        what: &'static str,
        got: usize,
        cap: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown corpus lattice `{0}`")]
    UnknownLattice(String),
}
