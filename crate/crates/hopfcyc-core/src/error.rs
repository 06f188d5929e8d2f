//! Error type shared by every module of the engine.

use alloc::string::String;

/// Failure modes of the symbolic engine.
///
/// Every variant carries a human-readable detail string; callers that need
/// to branch on the failure kind match on the variant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A substitution or composition would leave the closed class of
    /// expressions (e.g. a non-linear argument inside `sin`, or a shifted
    /// Gaussian).
    #[error("expression leaves the supported class: {0}")]
    LeavesClass(String),
    /// A pullback or substitution map lacks an image for a coordinate.
    #[error("missing coordinate in substitution: {0}")]
    MissingCoordinate(String),
    /// Form or cochain degrees do not match the requested operation.
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch {
        /// Degree required by the operation.
        expected: usize,
        /// Degree actually supplied.
        found: usize,
    },
    /// Dimensions of tensors, bases or vertex lists are inconsistent.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// Input text could not be parsed.
    #[error("parse error at offset {pos}: {msg}")]
    Parse {
        /// Byte offset of the failure.
        pos: usize,
        /// Description.
        msg: String,
    },
    /// A matched pair (or other structure) failed its defining identities.
    #[error("invalid structure: {0}")]
    Invalid(String),
    /// The request is outside the implemented scope.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The answer depends on a symbolic quantity that cannot be decided.
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    /// A selected cochain is not closed; the payload is the witness.
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    /// A matrix that must be invertible is singular.
    #[error("singular matrix: {0}")]
    Singular(String),
    /// An operator index is outside its admissible range.
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange {
        /// Offending index.
        index: usize,
        /// Largest admissible index.
        max: usize,
    },
    /// No closed form exists for the requested value (e.g. the trace of a
    /// formal test function).
    #[error("no closed form: {0}")]
    NoClosedForm(String),
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
