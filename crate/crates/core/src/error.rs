use thiserror::Error;

/// Errors surfaced by the library. Internal invariant violations panic instead:
/// they indicate a bug, not bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("row lengths must be weakly decreasing and positive: {0}")]
    BadRows(String),

    #[error("cell ({0}, {1}) is not in the diagram")]
    CellNotInDiagram(u32, u32),

    #[error("the empty diagram has no bottom row")]
    EmptyDiagram,

    #[error("weights must be coprime, got ({0}, {1})")]
    NotCoprime(u32, u32),

    #[error("no diagram has diagonal profile {0} for k = {1}")]
    NotRealizable(String, u32),

    #[error("sequence part {0} exceeds its bounding rectangle")]
    RectangleBound(usize),

    #[error("sequence is not in the image of the encoding")]
    NotInImage,

    #[error("series factor must have positive t-degree")]
    FactorConstantInT,

    #[error("shift {0} is smaller than the maximal t-degree {1}")]
    ShiftTooSmall(u32, u32),

    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("index p = {0} outside the admissible window [{1}, {2})")]
    POutOfRange(i64, i64, i64),

    #[error("component totals must be weakly decreasing")]
    NotNested,

    #[error("consecutive indices {0}, {1} differ between component profiles")]
    HypothesisFails(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Invariant(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
