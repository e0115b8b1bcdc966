use thiserror::Error;

/// Errors raised by the exact algebra, module and sheaf routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("number of variables differs ({0} vs {1})")]
    VarMismatch(usize, usize),
    #[error("degree cap {cap} exceeded: new generators in degree {degree} inside the certification window")]
    DegreeCapExceeded { cap: i64, degree: i64 },
    #[error("resolution incomplete: {0}")]
    ResolutionIncomplete(String),
    #[error("zero polynomial has no dimension or multiplicity")]
    ZeroPolynomial,
    #[error("polynomial comparison needs positive leading coefficients")]
    InvalidLeadingSign,
    #[error("slope of the zero submodule is undefined")]
    EmptySubmodule,
    #[error("module is not semistable")]
    NotSemistable,
    #[error("dim H mismatch: expected {expected}, got {got}")]
    DimHMismatch { expected: usize, got: usize },
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("sheaf is not {0}-regular")]
    NotRegular(i64),
    #[error("wrong projective dimension: {0}")]
    WrongDimension(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("internal certificate failed: {0}")]
    Certificate(String),
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            msg: msg.into(),
        }
    }
}
