//! Term coefficients: exact rationals with a one-way drop to floats.

use super::Sign;
use crate::rational::{self, Rational};
use num::{One, Signed, Zero};
use std::fmt;

/// Coefficient of a transseries term.
///
/// Arithmetic between two `Exact` coefficients stays exact; any operation
/// touching an `Approx` operand produces an `Approx` result. Nothing promotes
/// a float back to a rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(Rational),
    Approx(f64),
}

impl Coefficient {
    pub fn zero() -> Coefficient {
        Coefficient::Exact(Rational::zero())
    }

    pub fn one() -> Coefficient {
        Coefficient::Exact(Rational::one())
    }

    pub fn from_integer(n: i64) -> Coefficient {
        Coefficient::Exact(rational::integer(n))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coefficient::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Exact(q) => q.is_zero(),
            Coefficient::Approx(x) => *x == 0.0,
        }
    }

    /// Nearest float; exact rationals may round.
    pub fn to_f64(&self) -> f64 {
        match self {
            Coefficient::Exact(q) => rational::to_f64(q),
            Coefficient::Approx(x) => *x,
        }
    }

    /// Sign of the coefficient; `None` when zero.
    pub fn sign(&self) -> Option<Sign> {
        match self {
            Coefficient::Exact(q) => {
                if q.is_zero() {
                    None
                } else if q.is_positive() {
                    Some(Sign::Positive)
                } else {
                    Some(Sign::Negative)
                }
            }
            Coefficient::Approx(x) => {
                if *x == 0.0 {
                    None
                } else if *x > 0.0 || x.is_nan() {
                    // NaN cannot arise from supported operations; positive is
                    // the defensive reading.
                    Some(Sign::Positive)
                } else {
                    Some(Sign::Negative)
                }
            }
        }
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => Coefficient::Exact(a + b),
            _ => Coefficient::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Exact(q) => Coefficient::Exact(-q),
            Coefficient::Approx(x) => Coefficient::Approx(-x),
        }
    }

    pub fn sub(&self, other: &Coefficient) -> Coefficient {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => Coefficient::Exact(a * b),
            _ => Coefficient::Approx(self.to_f64() * other.to_f64()),
        }
    }

    /// Multiplicative inverse; `None` when zero, or when a float inverse
    /// fails to be finite and nonzero.
    pub fn inv(&self) -> Option<Coefficient> {
        match self {
            Coefficient::Exact(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Coefficient::Exact(q.recip()))
                }
            }
            Coefficient::Approx(x) => {
                let r = x.recip();
                if r.is_finite() && r != 0.0 {
                    Some(Coefficient::Approx(r))
                } else {
                    None
                }
            }
        }
    }

    /// `e` to this coefficient. `Exact(0)` maps to `Exact(1)`; everything
    /// else drops to floats. `None` when the float result is not finite and
    /// nonzero (the caller has lost all precision).
    pub fn exp(&self) -> Option<Coefficient> {
        if let Coefficient::Exact(q) = self {
            if q.is_zero() {
                return Some(Coefficient::one());
            }
        }
        let r = self.to_f64().exp();
        if r.is_finite() && r != 0.0 {
            Some(Coefficient::Approx(r))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Exact(q) => q.is_one(),
            Coefficient::Approx(x) => *x == 1.0,
        }
    }

    pub fn abs(&self) -> Coefficient {
        match self {
            Coefficient::Exact(q) => Coefficient::Exact(q.abs()),
            Coefficient::Approx(x) => Coefficient::Approx(x.abs()),
        }
    }

    /// Exact payload, if this coefficient is exact.
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Coefficient::Exact(q) => Some(q),
            Coefficient::Approx(_) => None,
        }
    }
}

/// Serializes as a one-field object: `{"exact":"p/q"}` or `{"approx":x}`.
impl serde::Serialize for Coefficient {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(1))?;
        match self {
            Coefficient::Exact(q) => map.serialize_entry("exact", &q.to_string())?,
            Coefficient::Approx(x) => map.serialize_entry("approx", x)?,
        }
        map.end()
    }
}

impl From<Rational> for Coefficient {
    fn from(q: Rational) -> Coefficient {
        Coefficient::Exact(q)
    }
}

impl From<f64> for Coefficient {
    fn from(x: f64) -> Coefficient {
        Coefficient::Approx(x)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Exact(q) => write!(f, "{q}"),
            Coefficient::Approx(x) => write!(f, "{x}"),
        }
    }
}
