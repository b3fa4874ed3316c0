//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// Two forms of different degrees were combined where equal degrees are
    /// required (addition, projective comparison).
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    /// A nonzero form was required.
    #[error("zero form not allowed here")]
    ZeroForm,

    /// A form matrix of the wrong entry degree was supplied.
    #[error("expected entries of degree {expected}, got degree {got}")]
    DegreeViolation { expected: u32, got: u32 },

    /// A 3x3 factor with determinant != 1 was supplied as a stabilizer part.
    #[error("matrix is not unimodular (det != 1)")]
    NotUnimodular,

    /// Limit of an identically zero family is indeterminate.
    #[error("empty curve: limit is indeterminate")]
    EmptyCurve,

    /// The tangent computation at the blowup center requires a symbolically
    /// singular matrix.
    #[error("matrix of forms must have identically zero determinant")]
    NotSingular,

    /// Dispatch on a check id that is not registered.
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    /// Text-format parse failure.
    #[error("parse error: {0}")]
    Parse(String),
}
