//! Truncated transseries values and their field arithmetic.

use super::{Classification, Coefficient, Comparison, Error, GrowthClass, Monomial, Sign};
use crate::rational::Rational;
use num::One;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::ops;

/// Default number of retained terms per value.
pub const DEFAULT_TRUNCATION: usize = 8;

/// Truncation used by [`HyperValue::constant`]: effectively no cap, so a
/// scalar adopts the truncation of whatever it combines with.
const UNBOUNDED: usize = usize::MAX;

/// One transseries term: a coefficient times a scale monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub monomial: Monomial,
    pub coeff: Coefficient,
}

impl Term {
    fn new(monomial: Monomial, coeff: Coefficient) -> Term {
        Term { monomial, coeff }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomial.is_one() {
            write!(f, "{}", self.coeff)
        } else if self.coeff.is_one() {
            write!(f, "{}", self.monomial)
        } else {
            write!(f, "{}*{}", self.coeff, self.monomial)
        }
    }
}

/// A hyperreal value: at most `truncation` transseries terms, sorted by
/// strictly descending dominance, with nonzero coefficients.
///
/// The `exact` flag records whether any operation along the value's history
/// had to drop trailing terms; the terms that are present are algebraically
/// correct either way. Binary operations work at the smaller of the two
/// operands' truncations.
#[derive(Clone, Debug)]
pub struct HyperValue {
    terms: Vec<Term>,
    exact: bool,
    truncation: usize,
}

/// Equality is term-by-term equality plus matching exactness; the working
/// truncation is bookkeeping, not part of the value.
impl PartialEq for HyperValue {
    fn eq(&self, other: &HyperValue) -> bool {
        self.terms == other.terms && self.exact == other.exact
    }
}

/// Sorts raw terms by descending dominance, merges equal monomials, and
/// drops zero coefficients.
fn combine_terms(mut raw: Vec<Term>) -> Vec<Term> {
    raw.sort_by(|x, y| y.monomial.cmp(&x.monomial));
    let mut out: Vec<Term> = Vec::with_capacity(raw.len());
    for term in raw {
        match out.last_mut() {
            Some(last) if last.monomial == term.monomial => {
                last.coeff = last.coeff.add(&term.coeff);
            }
            _ => out.push(term),
        }
    }
    out.retain(|t| !t.coeff.is_zero());
    out
}

/// Keeps the `cap` most dominant terms; returns true if nonzero terms were
/// dropped.
fn truncate_terms(terms: &mut Vec<Term>, cap: usize) -> bool {
    if terms.len() > cap {
        terms.truncate(cap);
        true
    } else {
        false
    }
}

/// Full product of two canonical term lists, recombined, no cap.
fn mul_terms(a: &[Term], b: &[Term]) -> Vec<Term> {
    let mut raw = Vec::with_capacity(a.len() * b.len());
    for ta in a {
        for tb in b {
            raw.push(Term::new(ta.monomial.mul(&tb.monomial), ta.coeff.mul(&tb.coeff)));
        }
    }
    combine_terms(raw)
}

fn negate_terms(terms: &[Term]) -> Vec<Term> {
    terms
        .iter()
        .map(|t| Term::new(t.monomial.clone(), t.coeff.neg()))
        .collect()
}

impl HyperValue {
    /// The zero value (no terms).
    pub fn zero(truncation: usize) -> HyperValue {
        HyperValue {
            terms: Vec::new(),
            exact: true,
            truncation: truncation.max(1),
        }
    }

    pub fn one(truncation: usize) -> HyperValue {
        HyperValue::from_rational(Rational::one(), truncation)
    }

    /// The infinitesimal `eps`.
    pub fn eps(truncation: usize) -> HyperValue {
        HyperValue::from_monomial(Monomial::eps(), Coefficient::one(), truncation)
    }

    pub fn from_rational(q: Rational, truncation: usize) -> HyperValue {
        HyperValue::from_monomial(Monomial::one(), Coefficient::Exact(q), truncation)
    }

    pub fn from_integer(n: i64, truncation: usize) -> HyperValue {
        HyperValue::from_rational(crate::rational::integer(n), truncation)
    }

    /// A rational scalar with unbounded truncation: it adopts the truncation
    /// of whatever it combines with, so formulas can mix in constants without
    /// choosing a truncation up front.
    pub fn constant(q: Rational) -> HyperValue {
        HyperValue::from_rational(q, UNBOUNDED)
    }

    pub fn from_monomial(
        monomial: Monomial,
        coeff: Coefficient,
        truncation: usize,
    ) -> HyperValue {
        HyperValue::from_terms(vec![(monomial, coeff)], truncation)
    }

    /// Builds a value from arbitrary (monomial, coefficient) pairs; the pairs
    /// are sorted, merged, and truncated to `cap` terms.
    pub fn from_terms(pairs: Vec<(Monomial, Coefficient)>, truncation: usize) -> HyperValue {
        let truncation = truncation.max(1);
        let mut terms = combine_terms(
            pairs
                .into_iter()
                .map(|(m, c)| Term::new(m, c))
                .collect(),
        );
        let dropped = truncate_terms(&mut terms, truncation);
        HyperValue {
            terms,
            exact: !dropped,
            truncation,
        }
    }

    /// Retained terms, most dominant first.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Most dominant term; `None` for zero.
    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no operation in this value's history dropped terms.
    /// Coefficient exactness is tracked per coefficient, not here.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    fn with_parts(terms: Vec<Term>, exact: bool, truncation: usize) -> HyperValue {
        HyperValue {
            terms,
            exact,
            truncation,
        }
    }

    pub fn add(&self, other: &HyperValue) -> HyperValue {
        let cap = self.truncation.min(other.truncation);
        let mut terms = combine_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .cloned()
                .collect(),
        );
        let dropped = truncate_terms(&mut terms, cap);
        HyperValue::with_parts(terms, self.exact && other.exact && !dropped, cap)
    }

    pub fn neg(&self) -> HyperValue {
        HyperValue::with_parts(negate_terms(&self.terms), self.exact, self.truncation)
    }

    pub fn sub(&self, other: &HyperValue) -> HyperValue {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &HyperValue) -> HyperValue {
        let cap = self.truncation.min(other.truncation);
        let mut terms = mul_terms(&self.terms, &other.terms);
        let dropped = truncate_terms(&mut terms, cap);
        HyperValue::with_parts(terms, self.exact && other.exact && !dropped, cap)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Coefficient) -> HyperValue {
        if c.is_zero() {
            return HyperValue::zero(self.truncation);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term::new(t.monomial.clone(), t.coeff.mul(c)))
            .collect();
        HyperValue::with_parts(terms, self.exact, self.truncation)
    }

    /// Multiplicative inverse via the geometric series around the leading
    /// term. The retained terms are exactly the leading terms of the true
    /// inverse; the result is marked inexact whenever the series had to be
    /// cut (always, except for single-term values).
    pub fn inv(&self) -> Result<HyperValue, Error> {
        let lead = self.terms.first().ok_or(Error::DivisionByZero)?;
        let lead_inv = Term::new(
            lead.monomial.inverse(),
            lead.coeff.inv().ok_or(Error::DivisionByZero)?,
        );
        // Tail relative to the leading term; every monomial in `w` is
        // strictly infinitesimal, so powers of `w` descend strictly.
        let w: Vec<Term> = self.terms[1..]
            .iter()
            .map(|t| {
                Term::new(
                    t.monomial.mul(&lead_inv.monomial),
                    t.coeff.mul(&lead_inv.coeff),
                )
            })
            .collect();
        if w.is_empty() {
            return Ok(HyperValue::with_parts(
                vec![lead_inv],
                self.exact,
                self.truncation,
            ));
        }
        let cap = if self.truncation == UNBOUNDED {
            DEFAULT_TRUNCATION
        } else {
            self.truncation
        };
        let neg_w = negate_terms(&w);
        let (series, dropped) = sum_power_series(&neg_w, cap, |power, _| power.to_vec());
        let terms = mul_terms(&series, std::slice::from_ref(&lead_inv));
        Ok(HyperValue::with_parts(
            terms,
            self.exact && !dropped,
            self.truncation,
        ))
    }

    pub fn div(&self, other: &HyperValue) -> Result<HyperValue, Error> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn powi(&self, n: i32) -> Result<HyperValue, Error> {
        if n == 0 {
            return Ok(HyperValue::one(self.truncation));
        }
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut exponent = n.unsigned_abs();
        let mut acc = HyperValue::one(self.truncation);
        let mut square = base;
        loop {
            if exponent & 1 == 1 {
                acc = acc.mul(&square);
            }
            exponent >>= 1;
            if exponent == 0 {
                break;
            }
            square = square.mul(&square);
        }
        Ok(acc)
    }

    /// `e` to this value.
    ///
    /// The argument splits as `u/eps + c + delta` with `c` appreciable and
    /// `delta` infinitesimal; the result is `exp(u/eps) * e^c * exp(delta)`
    /// with the last factor summed as a Taylor series. Errors if the
    /// unlimited part is anything other than a rational multiple of `1/eps`
    /// (the representable scale grid), or if `e^c` is not a finite nonzero
    /// float.
    pub fn exp(&self) -> Result<HyperValue, Error> {
        let reciprocal_eps = Monomial::eps_power(-Rational::one());
        let mut rate: Option<Rational> = None;
        let mut unit_coeff = Coefficient::zero();
        let mut delta: Vec<Term> = Vec::new();
        for term in &self.terms {
            match term.monomial.growth_class() {
                GrowthClass::Unlimited => {
                    if term.monomial == reciprocal_eps {
                        rate = Some(coeff_to_rational(&term.coeff)?);
                    } else {
                        return Err(Error::UnsupportedExponential(format!(
                            "unlimited part {} is not a rational multiple of 1/eps",
                            term
                        )));
                    }
                }
                GrowthClass::Unit => unit_coeff = term.coeff.clone(),
                GrowthClass::Infinitesimal => delta.push(term.clone()),
            }
        }
        let scale_monomial = match rate {
            Some(b) => Monomial::exponential(b),
            None => Monomial::one(),
        };
        let scalar = unit_coeff.exp().ok_or_else(|| {
            Error::UnsupportedExponential(format!(
                "exp of appreciable part {unit_coeff} is outside the float range"
            ))
        })?;
        let factor = Term::new(scale_monomial, scalar);
        if delta.is_empty() {
            return Ok(HyperValue::with_parts(
                vec![factor],
                self.exact,
                self.truncation,
            ));
        }
        let cap = if self.truncation == UNBOUNDED {
            DEFAULT_TRUNCATION
        } else {
            self.truncation
        };
        // Taylor series: term_j = delta^j / j!, built incrementally.
        let (series, dropped) = sum_power_series(&delta, cap, |power, j| {
            let inv_j = Coefficient::Exact(Rational::new(1.into(), j.into()));
            power.iter()
                .map(|t| Term::new(t.monomial.clone(), t.coeff.mul(&inv_j)))
                .collect()
        });
        let terms = mul_terms(&series, std::slice::from_ref(&factor));
        Ok(HyperValue::with_parts(
            terms,
            self.exact && !dropped,
            self.truncation,
        ))
    }

    /// Order-of-magnitude class, read off the leading term.
    pub fn classify(&self) -> Classification {
        match self.terms.first() {
            None => Classification::Zero,
            Some(t) => {
                // Stored coefficients are nonzero, so a sign exists.
                let sign = t.coeff.sign().unwrap_or(Sign::Positive);
                match t.monomial.growth_class() {
                    GrowthClass::Unlimited => Classification::Unlimited(sign),
                    GrowthClass::Unit => Classification::Appreciable(sign),
                    GrowthClass::Infinitesimal => Classification::Infinitesimal(sign),
                }
            }
        }
    }

    /// The unique real infinitely close to this value. Errors for unlimited
    /// values; infinitesimal tails are discarded.
    pub fn standard_part(&self) -> Result<Coefficient, Error> {
        if let Classification::Unlimited(_) = self.classify() {
            return Err(Error::NoStandardPart);
        }
        Ok(self
            .terms
            .iter()
            .find(|t| t.monomial.is_one())
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Coefficient::zero))
    }

    /// Three-way order with an honest failure mode: if the difference
    /// vanishes at the working truncation but some history dropped terms,
    /// the answer is `Undecidable` rather than `Equal`.
    pub fn compare(&self, other: &HyperValue) -> Comparison {
        let d = self.sub(other);
        match d.terms.first() {
            None => {
                if d.exact {
                    Comparison::Equal
                } else {
                    Comparison::Undecidable {
                        order: d.truncation,
                    }
                }
            }
            Some(t) => match t.coeff.sign() {
                Some(Sign::Positive) => Comparison::Greater,
                Some(Sign::Negative) => Comparison::Less,
                None => Comparison::Undecidable {
                    order: d.truncation,
                },
            },
        }
    }

    /// True when this value is infinitely close to the real number `a`.
    pub fn is_in_halo(&self, a: &Rational) -> bool {
        self.sub(&HyperValue::constant(a.clone()))
            .classify()
            .is_infinitesimal_or_zero()
    }

    /// Numeric value at a concrete `eps > 0`, for diagnostics and oracles.
    pub fn eval_f64(&self, eps: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.to_f64() * t.monomial.eval_f64(eps))
            .sum()
    }
}

/// Converts a coefficient to an exact rational for use as an exponent.
/// Floats convert through their exact dyadic value.
fn coeff_to_rational(c: &Coefficient) -> Result<Rational, Error> {
    match c {
        Coefficient::Exact(q) => Ok(q.clone()),
        Coefficient::Approx(x) => crate::rational::from_f64(*x).ok_or_else(|| {
            Error::UnsupportedExponential(format!("non-finite coefficient {x} on 1/eps"))
        }),
    }
}

/// Sums `1 + sum_j p_j` where `p_1 = shape(base, 1)` and
/// `p_{j+1} = shape(p_j * base, j+1)`, for a `base` whose monomials are all
/// strictly infinitesimal.
///
/// The sum is taken above a fixed cutoff, the `cap`-th power of the base's
/// leading monomial. Every monomial of power `j` sits at or below the `j`-th
/// power of the leading monomial, so powers past `cap` never reach the
/// region at or above the cutoff; within that region the computed
/// coefficients, cancellations included, are exactly those of the full
/// series. Returns the `cap` most dominant surviving terms and whether the
/// series continues beyond them.
fn sum_power_series(
    base: &[Term],
    cap: usize,
    shape: impl Fn(&[Term], u64) -> Vec<Term>,
) -> (Vec<Term>, bool) {
    let one = Term::new(Monomial::one(), Coefficient::one());
    let mut sum = vec![one.clone()];
    let Some(lead) = base.first() else {
        return (sum, false);
    };
    let cutoff = lead.monomial.pow(cap);
    let mut power = vec![one];
    let mut dropped = false;
    for j in 1..=cap as u64 {
        power = shape(&mul_terms(&power, base), j);
        if power.is_empty() {
            // The series terminated on its own (only possible through
            // coefficient cancellation); nothing lies below.
            let cut = truncate_terms(&mut sum, cap);
            return (sum, dropped || cut);
        }
        // Below-cutoff terms only ever produce below-cutoff descendants,
        // so pruning them here cannot disturb the retained region.
        let before = power.len();
        power.retain(|t| t.monomial.dominance(&cutoff) != Ordering::Less);
        if power.len() < before {
            dropped = true;
        }
        if power.is_empty() {
            truncate_terms(&mut sum, cap);
            return (sum, true);
        }
        sum = combine_terms(sum.into_iter().chain(power.iter().cloned()).collect());
    }
    // Every later power lies strictly below the cutoff.
    truncate_terms(&mut sum, cap);
    (sum, true)
}

impl PartialOrd for HyperValue {
    /// `None` when the order is undecidable at the working truncation.
    fn partial_cmp(&self, other: &HyperValue) -> Option<Ordering> {
        match self.compare(other) {
            Comparison::Less => Some(Ordering::Less),
            Comparison::Equal => Some(Ordering::Equal),
            Comparison::Greater => Some(Ordering::Greater),
            Comparison::Undecidable { .. } => None,
        }
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident) => {
        impl ops::$trait<&HyperValue> for &HyperValue {
            type Output = HyperValue;
            fn $method(self, rhs: &HyperValue) -> HyperValue {
                HyperValue::$method(self, rhs)
            }
        }
        impl ops::$trait<HyperValue> for HyperValue {
            type Output = HyperValue;
            fn $method(self, rhs: HyperValue) -> HyperValue {
                HyperValue::$method(&self, &rhs)
            }
        }
    };
}

binary_op!(Add, add);
binary_op!(Sub, sub);
binary_op!(Mul, mul);

impl ops::Neg for &HyperValue {
    type Output = HyperValue;
    fn neg(self) -> HyperValue {
        HyperValue::neg(self)
    }
}

impl ops::Neg for HyperValue {
    type Output = HyperValue;
    fn neg(self) -> HyperValue {
        HyperValue::neg(&self)
    }
}

impl fmt::Display for HyperValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            let negative = term.coeff.sign() == Some(Sign::Negative);
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = term.coeff.abs();
            if term.monomial.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", term.monomial)?;
            } else {
                write!(f, "{}*{}", magnitude, term.monomial)?;
            }
        }
        Ok(())
    }
}

/// Serializes as `{"terms":[{"a":...,"b":...,"coeff":...}],"exact":...}`
/// with exponents as canonical rational strings.
impl Serialize for HyperValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut out = serializer.serialize_struct("HyperValue", 2)?;
        out.serialize_field("terms", &self.terms)?;
        out.serialize_field("exact", &self.exact)?;
        out.end()
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut out = serializer.serialize_struct("Term", 3)?;
        out.serialize_field("a", &self.monomial.eps_pow().to_string())?;
        out.serialize_field("b", &self.monomial.exp_rate().to_string())?;
        out.serialize_field("coeff", &self.coeff)?;
        out.end()
    }
}
