use alloc::string::String;

use crate::grading::GradeElement;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("grade elements belong to different grading groups")]
    GroupMismatch,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("degree mismatch: expected {expected}, found {actual}")]
    DegreeMismatch {
        expected: GradeElement,
        actual: GradeElement,
    },
    #[error("entry ({row}, {col}) has degree {actual}, the degree law requires {expected}")]
    DegreeLaw {
        row: usize,
        col: usize,
        expected: GradeElement,
        actual: GradeElement,
    },
    #[error("element is not a member of the ring: {0}")]
    NotInRing(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("shift family must be nonempty")]
    EmptyFamily,
    #[error("matrices are indexed by different shift families")]
    FamilyMismatch,
    #[error("index ({0}, {1}) is not a valid off-diagonal position")]
    InvalidIndex(usize, usize),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("element is not invertible")]
    NotAUnit,
    #[error("no strong-grading witness in degree {0}")]
    WitnessUnavailable(GradeElement),
    #[error("no invertible homogeneous element of degree {0}: ring is not a crossed product")]
    NotCrossedProduct(GradeElement),
    #[error("shift family is not contained in the target family")]
    NotContained,
    #[error("closure exceeded the cap of {cap} elements")]
    Truncated { cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Stable machine-readable identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::GroupMismatch => "group-mismatch",
            Error::RingMismatch => "ring-mismatch",
            Error::DegreeMismatch { .. } => "degree-mismatch",
            Error::DegreeLaw { .. } => "degree-law",
            Error::NotInRing(_) => "not-in-ring",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::Unsupported(_) => "unsupported",
            Error::EmptyFamily => "empty-family",
            Error::FamilyMismatch => "family-mismatch",
            Error::InvalidIndex(..) => "invalid-index",
            Error::NotInvertible => "not-invertible",
            Error::NotAUnit => "not-a-unit",
            Error::WitnessUnavailable(_) => "witness-unavailable",
            Error::NotCrossedProduct(_) => "not-a-crossed-product",
            Error::NotContained => "not-contained",
            Error::Truncated { .. } => "truncated",
            Error::Precondition(_) => "precondition",
        }
    }
}
