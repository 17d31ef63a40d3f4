//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors surfaced by interval arithmetic, linear algebra, and parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A dual (Kaucher) interval was combined outside the two defined
    /// cancellation rules. Duals support exactly `a - dual(a) = [0, 0]` and
    /// `a / dual(a) = [1, 1]` (0 not in `a`); anything else is a logic error
    /// in the caller and fails loudly rather than silently computing.
    DualMisuse,
    /// Division by an interval whose enclosure contains zero.
    DivisionByZeroInterval,
    /// An interval matrix could not be factored: every candidate pivot in
    /// some column has mignitude zero, so singularity cannot be excluded.
    SingularEnclosure,
    /// A point Jacobian was numerically singular during a Newton step.
    SingularJacobian,
    /// Operand dimensions disagree (vector lengths, matrix shapes).
    DimensionMismatch,
    /// A system declared a different number of polynomials than variables.
    NonSquareSystem,
    /// Text input failed to parse; the message names the offending line.
    ParseError(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DualMisuse => {
                write!(f, "dual interval used outside a defined cancellation rule")
            }
            Error::DivisionByZeroInterval => {
                write!(f, "division by an interval containing zero")
            }
            Error::SingularEnclosure => {
                write!(f, "interval matrix enclosure admits no nonsingular pivot")
            }
            Error::SingularJacobian => write!(f, "point Jacobian is numerically singular"),
            Error::DimensionMismatch => write!(f, "operand dimensions disagree"),
            Error::NonSquareSystem => {
                write!(f, "system must have as many polynomials as variables")
            }
            Error::ParseError(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
