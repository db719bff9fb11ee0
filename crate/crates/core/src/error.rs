use alloc::string::String;
use core::fmt;

/// Structural and precondition failures raised by the algebra layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operands live on different frames.
    FrameMismatch,
    DegreeMismatch { expected: usize, found: usize },
    DimensionMismatch { expected: usize, found: usize },
    /// A bracket of two basis elements leaves the proposed span.
    NotClosed { i: usize, j: usize },
    /// The Jacobi identity fails on the listed triple.
    Jacobi { i: usize, j: usize, k: usize },
    NotReductive(String),
    /// A form that must be isotropy-invariant is not.
    NotInvariant(String),
    /// A bilinear form or matrix that must be nondegenerate is not.
    Degenerate(String),
    /// The operation is defined but its precondition fails on this input.
    Precondition(String),
    /// An exact computation needs an irrational value.
    Inexact(String),
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FrameMismatch => write!(f, "operands live on different frames"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotClosed { i, j } => {
                write!(f, "bracket of basis elements {} and {} leaves the span", i + 1, j + 1)
            }
            Error::Jacobi { i, j, k } => {
                write!(f, "Jacobi identity fails on ({}, {}, {})", i + 1, j + 1, k + 1)
            }
            Error::NotReductive(msg) => write!(f, "not reductive: {msg}"),
            Error::NotInvariant(msg) => write!(f, "not invariant: {msg}"),
            Error::Degenerate(msg) => write!(f, "degenerate: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::Inexact(msg) => write!(f, "no exact value: {msg}"),
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
