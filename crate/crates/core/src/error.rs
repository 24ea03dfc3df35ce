use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
///
/// Exact-arithmetic routines fail loudly instead of guessing: a zero
/// coefficient row, a duplicate hyperplane, or a numerical check that does
/// not resolve (quadrature drift, an exponent probe without a clear winner)
/// all surface here rather than being papered over.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Inversion of zero in `H` or in `Q`.
    DivisionByZero,
    /// A coefficient row with every entry zero; it defines no hyperplane.
    ZeroRow,
    /// A zero row at a known position in an input list.
    ZeroRowAt { index: usize },
    /// Restriction produced the zero row: the second functional vanishes on
    /// the kernel of the first, so the two hyperplanes coincide.
    ParallelHyperplane,
    /// A hyperplane or coordinate index outside the valid range.
    IndexOutOfRange { index: usize, len: usize },
    /// A coefficient row whose length disagrees with the ambient dimension.
    RowLengthMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    /// Two input rows define the same hyperplane (equal after
    /// canonicalization).
    DuplicateHyperplane { first: usize, second: usize },
    /// Catalog lookup with an unrecognized name.
    UnknownCatalog(String),
    /// A brute-force enumeration was asked to walk more subsets than the
    /// built-in guard allows.
    GroundSetTooLarge { size: usize, limit: usize },
    /// The complex adjoint image of a quaternionic matrix must have even
    /// rank; odd rank means the embedding was built incorrectly.
    OddAdjointRank { rank: usize },
    /// A malformed number literal.
    ParseNumber(String),
    /// The exponent probe found no candidate beating the others by the
    /// required margin.  Residuals are reported per candidate exponent.
    AmbiguousExponent { residuals: [f64; 3] },
    /// Refining the quadrature moved the estimate too much; the reported
    /// value would not be trustworthy.
    QuadratureNotConverged { relative_shift: f64 },
    /// The sphere integral is numerically zero, so nothing can be
    /// normalized against it.
    DegenerateIntegral { value: f64 },
    /// Rejection sampling discarded almost every draw.
    SamplingFailure { rejection_rate: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroRow => write!(f, "zero coefficient row defines no hyperplane"),
            Error::ZeroRowAt { index } => {
                write!(f, "row {index} is zero and defines no hyperplane")
            }
            Error::ParallelHyperplane => {
                write!(f, "parallel hyperplane: restriction produced the zero row")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for length {len}")
            }
            Error::RowLengthMismatch {
                index,
                expected,
                found,
            } => write!(
                f,
                "row {index} has {found} entries, expected {expected} for the ambient dimension"
            ),
            Error::DuplicateHyperplane { first, second } => write!(
                f,
                "rows {first} and {second} define the same hyperplane"
            ),
            Error::UnknownCatalog(name) => write!(f, "unknown catalog arrangement `{name}`"),
            Error::GroundSetTooLarge { size, limit } => write!(
                f,
                "ground set of size {size} exceeds the brute-force guard of {limit}"
            ),
            Error::OddAdjointRank { rank } => {
                write!(f, "complex adjoint image has odd rank {rank}")
            }
            Error::ParseNumber(s) => write!(f, "cannot parse number from `{s}`"),
            Error::AmbiguousExponent { residuals } => write!(
                f,
                "no exponent wins the closedness probe decisively (residuals {:?})",
                residuals
            ),
            Error::QuadratureNotConverged { relative_shift } => write!(
                f,
                "quadrature not converged: refinement shifted the value by {relative_shift:.3e} (relative)"
            ),
            Error::DegenerateIntegral { value } => write!(
                f,
                "sphere integral {value:.3e} is too close to zero to normalize"
            ),
            Error::SamplingFailure { rejection_rate } => write!(
                f,
                "rejection sampling failed: {:.1}% of draws rejected",
                rejection_rate * 100.0
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
