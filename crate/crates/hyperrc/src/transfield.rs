//! Hyperreal arithmetic on truncated grid transseries.
//!
//! A [`HyperValue`] is a finite sum of terms `c * eps^a * exp(b/eps)` where
//! `eps` is a fixed positive infinitesimal, the exponents `a`, `b` are exact
//! rationals, and the coefficient `c` is an exact rational or an `f64`. Terms
//! are kept sorted by dominance as `eps -> 0+` (larger `b` first, then
//! smaller `a`), at most `K` of them per value; arithmetic that would need
//! more terms drops the least dominant ones and clears the value's `exact`
//! flag. Within the retained terms every operation is algebraically correct,
//! so classification, ordering, and standard parts read directly off the
//! leading term.

mod coefficient;
mod monomial;
mod value;

pub use coefficient::Coefficient;
pub use monomial::{GrowthClass, Monomial};
pub use value::{HyperValue, Term, DEFAULT_TRUNCATION};

use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Sign of a nonzero quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    /// Sign of a product of two quantities with these signs.
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Positive => write!(f, "+"),
            Sign::Negative => write!(f, "-"),
        }
    }
}

/// Order-of-magnitude class of a hyperreal value.
///
/// Exactly one applies: zero; infinitesimal (nonzero, smaller in magnitude
/// than every positive real); appreciable (between two positive reals);
/// unlimited (larger than every real).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Zero,
    Infinitesimal(Sign),
    Appreciable(Sign),
    Unlimited(Sign),
}

impl Classification {
    /// Sign of the value; `None` for zero.
    pub fn sign(&self) -> Option<Sign> {
        match self {
            Classification::Zero => None,
            Classification::Infinitesimal(s)
            | Classification::Appreciable(s)
            | Classification::Unlimited(s) => Some(*s),
        }
    }

    /// True for zero, infinitesimal, and appreciable values.
    pub fn is_limited(&self) -> bool {
        !matches!(self, Classification::Unlimited(_))
    }

    /// True for zero and infinitesimal values.
    pub fn is_infinitesimal_or_zero(&self) -> bool {
        matches!(self, Classification::Zero | Classification::Infinitesimal(_))
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Zero => write!(f, "Zero"),
            Classification::Infinitesimal(s) => write!(f, "Infinitesimal({s})"),
            Classification::Appreciable(s) => write!(f, "Appreciable({s})"),
            Classification::Unlimited(s) => write!(f, "Unlimited({s})"),
        }
    }
}

/// Serializes as the display string, e.g. `"Infinitesimal(+)"`.
impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Outcome of comparing two hyperreal values.
///
/// `Undecidable` is reported when the difference vanishes at the working
/// truncation but at least one operand had already dropped terms, so equality
/// cannot be certified; `order` is the truncation at which the question was
/// posed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Undecidable { order: usize },
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Less => write!(f, "less"),
            Comparison::Equal => write!(f, "equal"),
            Comparison::Greater => write!(f, "greater"),
            Comparison::Undecidable { order } => {
                write!(f, "undecidable at truncation {order}")
            }
        }
    }
}

/// Errors from hyperreal arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    /// Inverse or division where the divisor is zero.
    #[error("division by zero")]
    DivisionByZero,
    /// `exp` of a value outside the representable range: the argument's
    /// unlimited part must be a pure multiple of `1/eps`, and the appreciable
    /// part must exponentiate to a finite nonzero float.
    #[error("unsupported exponential: {0}")]
    UnsupportedExponential(String),
    /// Standard part of an unlimited value.
    #[error("no standard part: value is unlimited")]
    NoStandardPart,
}
