//! Scale monomials `eps^a * exp(b/eps)` and their dominance order.

use crate::rational::{self, Rational};
use num::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A scale element `eps^a * exp(b/eps)` with exact rational exponents `a`
/// (the power of `eps`) and `b` (the growth rate of the exponential).
///
/// As `eps -> 0+`, a monomial with larger `b` dominates any monomial with
/// smaller `b` regardless of the powers of `eps`; at equal `b`, the smaller
/// power of `eps` dominates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    eps_pow: Rational,
    exp_rate: Rational,
}

/// Growth class of a monomial on its own, before any coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthClass {
    /// Tends to infinity: `b > 0`, or `b = 0` with `a < 0`.
    Unlimited,
    /// The constant monomial `1`.
    Unit,
    /// Tends to zero: `b < 0`, or `b = 0` with `a > 0`.
    Infinitesimal,
}

impl Monomial {
    pub fn new(eps_pow: Rational, exp_rate: Rational) -> Monomial {
        Monomial { eps_pow, exp_rate }
    }

    /// The constant monomial `1`.
    pub fn one() -> Monomial {
        Monomial::new(Rational::zero(), Rational::zero())
    }

    /// The monomial `eps`.
    pub fn eps() -> Monomial {
        Monomial::new(rational::integer(1), Rational::zero())
    }

    /// The monomial `eps^a`.
    pub fn eps_power(a: Rational) -> Monomial {
        Monomial::new(a, Rational::zero())
    }

    /// The monomial `exp(b/eps)`.
    pub fn exponential(b: Rational) -> Monomial {
        Monomial::new(Rational::zero(), b)
    }

    /// Power of `eps` (the exponent `a`).
    pub fn eps_pow(&self) -> &Rational {
        &self.eps_pow
    }

    /// Growth rate of the exponential factor (the exponent `b`).
    pub fn exp_rate(&self) -> &Rational {
        &self.exp_rate
    }

    pub fn is_one(&self) -> bool {
        self.eps_pow.is_zero() && self.exp_rate.is_zero()
    }

    /// Product of two monomials: exponents add.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            &self.eps_pow + &other.eps_pow,
            &self.exp_rate + &other.exp_rate,
        )
    }

    /// Reciprocal monomial: exponents negate.
    pub fn inverse(&self) -> Monomial {
        Monomial::new(-&self.eps_pow, -&self.exp_rate)
    }

    /// The monomial raised to a nonnegative integer power: exponents scale.
    pub fn pow(&self, n: usize) -> Monomial {
        let k = Rational::from_integer(n.into());
        Monomial::new(&self.eps_pow * &k, &self.exp_rate * &k)
    }

    /// Dominance as `eps -> 0+`: `Greater` means `self` dominates `other`
    /// (grows strictly faster, or shrinks strictly slower), `Equal` means the
    /// same monomial.
    pub fn dominance(&self, other: &Monomial) -> Ordering {
        match self.exp_rate.cmp(&other.exp_rate) {
            Ordering::Equal => other.eps_pow.cmp(&self.eps_pow),
            unequal => unequal,
        }
    }

    /// Growth class of the monomial itself.
    pub fn growth_class(&self) -> GrowthClass {
        if self.exp_rate.is_positive() {
            GrowthClass::Unlimited
        } else if self.exp_rate.is_negative() {
            GrowthClass::Infinitesimal
        } else if self.eps_pow.is_negative() {
            GrowthClass::Unlimited
        } else if self.eps_pow.is_positive() {
            GrowthClass::Infinitesimal
        } else {
            GrowthClass::Unit
        }
    }

    /// Numeric value at a concrete `eps > 0`, for diagnostics and oracles.
    pub fn eval_f64(&self, eps: f64) -> f64 {
        let a = rational::to_f64(&self.eps_pow);
        let b = rational::to_f64(&self.exp_rate);
        eps.powf(a) * (b / eps).exp()
    }
}

/// The total order used is dominance: `m1 > m2` means `m1` dominates.
impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.dominance(other)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.eps_pow.is_zero() {
            if self.eps_pow == rational::integer(1) {
                parts.push("eps".to_string());
            } else if self.eps_pow.is_integer() {
                parts.push(format!("eps^{}", self.eps_pow));
            } else {
                parts.push(format!("eps^({})", self.eps_pow));
            }
        }
        if !self.exp_rate.is_zero() {
            if self.exp_rate == rational::integer(1) {
                parts.push("exp(1/eps)".to_string());
            } else if self.exp_rate.is_integer() {
                parts.push(format!("exp({}/eps)", self.exp_rate));
            } else {
                parts.push(format!("exp(({})/eps)", self.exp_rate));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, ratio};

    #[test]
    fn dominance_examples() {
        // eps dominates eps^2 (shrinks slower).
        assert_eq!(
            Monomial::eps().dominance(&Monomial::eps_power(integer(2))),
            Ordering::Greater
        );
        // Any positive exponential rate beats any power of eps.
        assert_eq!(
            Monomial::exponential(ratio(1, 2)).dominance(&Monomial::eps_power(integer(-100))),
            Ordering::Greater
        );
        // exp(-1/eps) is below every power of eps.
        assert_eq!(
            Monomial::exponential(integer(-1)).dominance(&Monomial::eps_power(integer(100))),
            Ordering::Less
        );
        assert_eq!(Monomial::one().dominance(&Monomial::one()), Ordering::Equal);
    }

    #[test]
    fn growth_classes() {
        assert_eq!(Monomial::one().growth_class(), GrowthClass::Unit);
        assert_eq!(Monomial::eps().growth_class(), GrowthClass::Infinitesimal);
        assert_eq!(
            Monomial::eps_power(integer(-1)).growth_class(),
            GrowthClass::Unlimited
        );
        assert_eq!(
            Monomial::exponential(integer(-4)).growth_class(),
            GrowthClass::Infinitesimal
        );
        // exp(-2/eps)/eps still vanishes: the exponential wins.
        assert_eq!(
            Monomial::new(integer(-1), integer(-2)).growth_class(),
            GrowthClass::Infinitesimal
        );
        assert_eq!(
            Monomial::exponential(ratio(1, 3)).growth_class(),
            GrowthClass::Unlimited
        );
    }

    #[test]
    fn product_and_inverse() {
        let m = Monomial::new(integer(2), integer(-1));
        let n = Monomial::new(integer(-1), integer(3));
        assert_eq!(m.mul(&n), Monomial::new(integer(1), integer(2)));
        assert_eq!(m.mul(&m.inverse()), Monomial::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Monomial::one().to_string(), "1");
        assert_eq!(Monomial::eps().to_string(), "eps");
        assert_eq!(Monomial::eps_power(integer(-1)).to_string(), "eps^-1");
        assert_eq!(
            Monomial::new(integer(-1), integer(-4)).to_string(),
            "eps^-1*exp(-4/eps)"
        );
        assert_eq!(
            Monomial::exponential(ratio(1, 2)).to_string(),
            "exp((1/2)/eps)"
        );
    }
}
