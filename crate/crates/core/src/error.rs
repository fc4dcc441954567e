use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected an integer, found {0}")]
    NotAnInteger(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Errors raised by the curve-counting and invariant layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("invalid degree {0}: must be at least 1")]
    InvalidDegree(i64),
    #[error("N_(0,0) is not defined")]
    UndefinedInvariant,
    #[error("negative genus: degree {degree} with {delta} nodes")]
    NegativeGenus { degree: i64, delta: i64 },
    #[error("no stable maps of degree 0 with {0} marks")]
    NoStableMaps(u32),
    #[error("invalid target space: {0}")]
    InvalidTarget(String),
    #[error("degree {degree} does not match target {target}")]
    DegreeMismatch { target: String, degree: String },
    #[error("exponent vector has length {found}, target basis has {expected} classes")]
    BasisMismatch { expected: usize, found: usize },
    #[error("basis index {index} out of range for {target}")]
    ClassOutOfRange { target: String, index: usize },
    #[error("unsupported target for this operation: {0}")]
    UnsupportedTarget(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumError {
    #[error("target mismatch: {0} vs {1}")]
    TargetMismatch(String, String),
    #[error("basis index {index} out of range for {target}")]
    ClassOutOfRange { target: String, index: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("pinned mark {0:?} is not in the mark set")]
    UnknownPin(String),
    #[error("pinned marks must be distinct")]
    RepeatedPin,
    #[error("duplicate mark label {0:?}")]
    DuplicateLabel(String),
    #[error("need at least {needed} marks, found {found}")]
    TooFewMarks { needed: u32, found: u32 },
    #[error("stratum codimension {delta} out of range for {n} marks")]
    DeltaOutOfRange { n: u32, delta: u32 },
    #[error("invalid twig shape {a}|{b} for {n} marks")]
    InvalidShape { n: u32, a: u32, b: u32 },
}
