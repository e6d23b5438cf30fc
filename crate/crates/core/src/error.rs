//! Error type shared by every module of the library.

use alloc::string::String;
use core::fmt;

/// All failure modes of the library.
///
/// Every operation that can fail returns [`Result`]; panics are reserved for
/// internal invariant violations (bugs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An ordinal expression did not match the grammar
    /// `term ("+" term)*`, `term = w^E*C | w^E | w*C | w | N`.
    OrdinalSyntax {
        /// The offending input text.
        text: String,
        /// Human-readable reason.
        reason: &'static str,
    },
    /// An ordinal exponent exceeded the configured maximum.
    ExponentCap { exponent: u32, cap: u32 },
    /// A stream computation consumed more elements than the element budget
    /// allows; the input stream grows too slowly for desk scale at the
    /// requested parameters.
    BudgetExceeded { budget: u64 },
    /// A vector's support would exceed the configured support budget.
    SupportBudget { needed: usize, budget: usize },
    /// An enumeration universe exceeded the configured cap.
    UniverseCap { universe: u64, cap: u64 },
    /// An input exceeded a hard size cap (for example the brute-force oracle
    /// support cap or the alignment length cap).
    SizeCap { size: usize, cap: usize },
    /// A set element does not occur in the given index stream.
    NotInStream { element: u64 },
    /// A parameter was outside its documented range.
    InvalidParameter(&'static str),
    /// A vector literal was not canonical (unsorted, duplicate or zero
    /// entries).
    NonCanonicalVector(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OrdinalSyntax { text, reason } => {
                write!(f, "ordinal syntax error in {text:?}: {reason}")
            }
            Error::ExponentCap { exponent, cap } => {
                write!(f, "ordinal exponent {exponent} exceeds the cap {cap}")
            }
            Error::BudgetExceeded { budget } => {
                write!(f, "element budget of {budget} stream elements exceeded")
            }
            Error::SupportBudget { needed, budget } => {
                write!(f, "support of {needed} indices exceeds the budget {budget}")
            }
            Error::UniverseCap { universe, cap } => {
                write!(f, "universe {universe} exceeds the enumeration cap {cap}")
            }
            Error::SizeCap { size, cap } => {
                write!(f, "input size {size} exceeds the hard cap {cap}")
            }
            Error::NotInStream { element } => {
                write!(f, "element {element} does not occur in the stream")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::NonCanonicalVector(what) => write!(f, "non-canonical vector: {what}"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
