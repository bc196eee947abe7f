//! The two-capacitor circuit: a charged capacitor dumped into an identical
//! uncharged one through a resistance r.
//!
//! Everything is closed form. With v0 = q0/c and the decay factor
//! x(t) = e^{-2t/(rc)}:
//!
//! ```text
//! i_r(t)     = (q0/(rc)) x            q1(t) = (q0/2)(1+x)
//! p_r(t)     = (q0 v0/(rc)) x^2       q2(t) = (q0/2)(1-x)
//! E_r(a,b)   = (q0 v0/4)(x(a)^2 - x(b)^2)
//! stored(t)  = (q1^2 + q2^2)/(2c)
//! ```
//!
//! The audit identity stored(t) + E_r(0,t) = q0 v0 / 2 follows from
//! (1+x)^2 + (1-x)^2 = 2(1+x^2), so exact arithmetic yields a residual of
//! identically zero, for real and infinitesimal r alike. Half the initial
//! energy is dissipated no matter how small r is; with r infinitesimal the
//! dissipation happens entirely inside the halo of t = 0, where current and
//! power are unlimited, while at every real positive time both are already
//! infinitesimal.
//!
//! Operations are generic over a scalar field: [`HyperValue`] for exact
//! symbolic runs that can take `r = eps`, plain `f64` for a fast float
//! model with real resistance. Infinity is an interval endpoint, not a
//! scalar; only [`Circuit::dissipated`] and [`Circuit::energy_audit`]
//! accept it, via [`Time`].

use crate::rational::{self, Rational};
use crate::transfield::{self, Classification, Coefficient, HyperValue, Sign};
use num::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("time must be nonnegative")]
    NegativeTime,
    #[error("time specification must be positive")]
    NonPositiveTimeSpec,
    #[error("interval start must precede its end")]
    BadInterval,
    #[error("resistance is not a real number")]
    NonRealResistance,
    #[error(transparent)]
    Arithmetic(#[from] transfield::Error),
}

/// Resistance: a positive real, or a positive infinitesimal or appreciable
/// hyperreal.
#[derive(Clone, Debug, PartialEq)]
pub enum Resistance {
    Real(Rational),
    Hyper(HyperValue),
}

impl fmt::Display for Resistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resistance::Real(q) => write!(f, "{q}"),
            Resistance::Hyper(h) => write!(f, "{h}"),
        }
    }
}

/// Validated circuit parameters: charge q0 on the left capacitor, equal
/// capacitances c, resistance r. The voltage v0 = q0/c is derived.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitParams {
    q0: Rational,
    c: Rational,
    r: Resistance,
}

impl CircuitParams {
    /// Requires q0 > 0, c > 0, and r positive: a positive rational, or a
    /// hyperreal classified Infinitesimal(+) or Appreciable(+). Unlimited
    /// resistance is rejected; the circuit would never conduct.
    pub fn new(q0: Rational, c: Rational, r: Resistance) -> Result<CircuitParams, Error> {
        if !q0.is_positive() {
            return Err(Error::InvalidParameter("charge must be positive".into()));
        }
        if !c.is_positive() {
            return Err(Error::InvalidParameter(
                "capacitance must be positive".into(),
            ));
        }
        let ok = match &r {
            Resistance::Real(q) => q.is_positive(),
            Resistance::Hyper(h) => matches!(
                h.classify(),
                Classification::Infinitesimal(Sign::Positive)
                    | Classification::Appreciable(Sign::Positive)
            ),
        };
        if !ok {
            return Err(Error::InvalidParameter(
                "resistance must be a positive infinitesimal, or a positive limited value".into(),
            ));
        }
        Ok(CircuitParams { q0, c, r })
    }

    pub fn q0(&self) -> &Rational {
        &self.q0
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn r(&self) -> &Resistance {
        &self.r
    }

    pub fn v0(&self) -> Rational {
        &self.q0 / &self.c
    }

    /// Exact symbolic engine.
    pub fn grid(&self) -> Circuit<HyperValue> {
        let r = match &self.r {
            Resistance::Real(q) => HyperValue::constant(q.clone()),
            Resistance::Hyper(h) => h.clone(),
        };
        Circuit::build(&self.q0, &self.c, r)
    }

    /// Float engine; requires a real resistance.
    pub fn float(&self) -> Result<Circuit<f64>, Error> {
        match &self.r {
            Resistance::Real(q) => Ok(Circuit::build(&self.q0, &self.c, rational::to_f64(q))),
            Resistance::Hyper(_) => Err(Error::NonRealResistance),
        }
    }
}

/// The scalar field the circuit formulas run over.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq {
    fn from_rational(q: &Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Result<Self, Error>;
    fn exp(&self) -> Result<Self, Error>;
    /// None when the sign cannot be decided.
    fn is_nonnegative(&self) -> Option<bool>;
    /// Strict order; None when undecidable.
    fn lt(&self, other: &Self) -> Option<bool>;

    fn zero() -> Self {
        Self::from_rational(&Rational::zero())
    }

    fn one() -> Self {
        Self::from_rational(&Rational::one())
    }
}

impl Scalar for HyperValue {
    fn from_rational(q: &Rational) -> Self {
        HyperValue::constant(q.clone())
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(HyperValue::div(self, other)?)
    }

    fn exp(&self) -> Result<Self, Error> {
        Ok(HyperValue::exp(self)?)
    }

    fn is_nonnegative(&self) -> Option<bool> {
        Some(match self.classify() {
            Classification::Zero => true,
            c => c.sign() == Some(Sign::Positive),
        })
    }

    fn lt(&self, other: &Self) -> Option<bool> {
        use crate::transfield::Comparison;
        match self.compare(other) {
            Comparison::Less => Some(true),
            Comparison::Equal | Comparison::Greater => Some(false),
            Comparison::Undecidable { .. } => None,
        }
    }
}

impl Scalar for f64 {
    fn from_rational(q: &Rational) -> Self {
        rational::to_f64(q)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Result<Self, Error> {
        if *other == 0.0 {
            return Err(transfield::Error::DivisionByZero.into());
        }
        Ok(self / other)
    }

    fn exp(&self) -> Result<Self, Error> {
        Ok(f64::exp(*self))
    }

    fn is_nonnegative(&self) -> Option<bool> {
        if self.is_nan() {
            None
        } else {
            Some(*self >= 0.0)
        }
    }

    fn lt(&self, other: &Self) -> Option<bool> {
        self.partial_cmp(other)
            .map(|o| o == std::cmp::Ordering::Less)
    }
}

/// An interval endpoint: a scalar instant, or infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Time<S> {
    At(S),
    Infinity,
}

impl<S: Scalar> Time<S> {
    pub fn at(t: S) -> Time<S> {
        Time::At(t)
    }
}

/// Circuit formulas instantiated over one scalar field.
#[derive(Clone, Debug)]
pub struct Circuit<S: Scalar> {
    q0: S,
    c: S,
    v0: S,
    r: S,
    rc: S,
}

impl<S: Scalar> Circuit<S> {
    fn build(q0: &Rational, c: &Rational, r: S) -> Circuit<S> {
        let rc = r.mul(&S::from_rational(c));
        Circuit {
            q0: S::from_rational(q0),
            c: S::from_rational(c),
            v0: S::from_rational(&(q0 / c)),
            r,
            rc,
        }
    }

    pub fn resistance(&self) -> &S {
        &self.r
    }

    pub fn charge(&self) -> &S {
        &self.q0
    }

    pub fn voltage(&self) -> &S {
        &self.v0
    }

    /// The product rc. The effective time constant of the discharge is
    /// rc/2: two capacitors in series double the restoring voltage.
    pub fn rc(&self) -> &S {
        &self.rc
    }

    /// The decay factor x(t) = e^{-2t/(rc)} at a nonnegative instant.
    pub fn decay_at(&self, t: &S) -> Result<S, Error> {
        if t.is_nonnegative() != Some(true) {
            return Err(Error::NegativeTime);
        }
        let exponent = t.mul(&S::from_rational(&rational::integer(-2))).div(&self.rc)?;
        exponent.exp()
    }

    /// The decay factor at an endpoint; x(infinity) = 0 exactly.
    pub fn decay(&self, t: &Time<S>) -> Result<S, Error> {
        match t {
            Time::At(s) => self.decay_at(s),
            Time::Infinity => Ok(S::zero()),
        }
    }

    /// Current through r at instant t.
    pub fn current(&self, t: &S) -> Result<S, Error> {
        let x = self.decay_at(t)?;
        self.q0.div(&self.rc).map(|amp| amp.mul(&x))
    }

    /// Power dissipated in r at instant t. Equals current^2 * r.
    pub fn power(&self, t: &S) -> Result<S, Error> {
        let x = self.decay_at(t)?;
        self.q0
            .mul(&self.v0)
            .div(&self.rc)
            .map(|amp| amp.mul(&x).mul(&x))
    }

    /// Charges (q1, q2) on the two capacitors for a given decay factor.
    pub fn charges_from_decay(&self, x: &S) -> (S, S) {
        let half = self
            .q0
            .div(&S::from_rational(&rational::integer(2)))
            .expect("two is not zero");
        let one = S::one();
        (half.mul(&one.add(x)), half.mul(&one.sub(x)))
    }

    /// Charges at instant t; q1 + q2 = q0 identically.
    pub fn charges(&self, t: &S) -> Result<(S, S), Error> {
        Ok(self.charges_from_decay(&self.decay_at(t)?))
    }

    /// Total stored energy (q1^2 + q2^2)/(2c) for a given decay factor.
    pub fn stored_from_decay(&self, x: &S) -> Result<S, Error> {
        let (q1, q2) = self.charges_from_decay(x);
        let two_c = self.c.mul(&S::from_rational(&rational::integer(2)));
        q1.mul(&q1).add(&q2.mul(&q2)).div(&two_c)
    }

    /// Stored energy at instant t. Starts at q0 v0 / 2, falls to q0 v0 / 4.
    pub fn stored_energy(&self, t: &S) -> Result<S, Error> {
        self.stored_from_decay(&self.decay_at(t)?)
    }

    /// Energy dissipated between two decay factors:
    /// (q0 v0 / 4)(x_start^2 - x_end^2).
    pub fn dissipated_between_decays(&self, x_start: &S, x_end: &S) -> Result<S, Error> {
        let quarter = self
            .q0
            .mul(&self.v0)
            .div(&S::from_rational(&rational::integer(4)))?;
        Ok(quarter.mul(&x_start.mul(x_start).sub(&x_end.mul(x_end))))
    }

    /// Energy dissipated in r over (tau, t), t possibly infinity. The total
    /// over (0, infinity) is q0 v0 / 4 for every admissible r.
    pub fn dissipated(&self, tau: &S, t: &Time<S>) -> Result<S, Error> {
        if let Time::At(end) = t {
            if tau.lt(end) != Some(true) {
                return Err(Error::BadInterval);
            }
        }
        let x_start = self.decay_at(tau)?;
        let x_end = self.decay(t)?;
        self.dissipated_between_decays(&x_start, &x_end)
    }

    /// Books the energy at a given decay factor. The residual is the
    /// conservation defect initial - final - dissipated and cancels
    /// identically under exact arithmetic.
    pub fn audit_from_decay(&self, x: &S) -> Result<EnergyAudit<S>, Error> {
        let initial = self.stored_from_decay(&S::one())?;
        let final_stored = self.stored_from_decay(x)?;
        let dissipated = self.dissipated_between_decays(&S::one(), x)?;
        let residual = initial.sub(&final_stored).sub(&dissipated);
        Ok(EnergyAudit {
            initial_stored: initial,
            final_stored,
            dissipated_total: dissipated,
            residual,
        })
    }

    /// Audits the interval (0, t).
    pub fn energy_audit(&self, t: &Time<S>) -> Result<EnergyAudit<S>, Error> {
        if let Time::At(end) = t {
            if S::zero().lt(end) != Some(true) {
                return Err(Error::BadInterval);
            }
        }
        self.audit_from_decay(&self.decay(t)?)
    }
}

impl Circuit<f64> {
    /// Trapezoid-rule integral of the power waveform over [0, t_end], an
    /// oracle for the closed-form dissipation that shares no algebra with
    /// it beyond the integrand.
    pub fn trapezoid_dissipated(&self, t_end: f64, steps: usize) -> Result<f64, Error> {
        assert!(steps >= 1 && t_end > 0.0);
        let h = t_end / steps as f64;
        let mut sum = (self.power(&0.0)? + self.power(&t_end)?) / 2.0;
        for i in 1..steps {
            sum += self.power(&(h * i as f64))?;
        }
        Ok(sum * h)
    }
}

/// Energy bookkeeping over an interval starting at t = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyAudit<S> {
    pub initial_stored: S,
    pub final_stored: S,
    pub dissipated_total: S,
    pub residual: S,
}

impl<S: Serialize> Serialize for EnergyAudit<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> Result<Z::Ok, Z::Error> {
        let mut s = serializer.serialize_struct("EnergyAudit", 4)?;
        s.serialize_field("initial_stored", &self.initial_stored)?;
        s.serialize_field("final_stored", &self.final_stored)?;
        s.serialize_field("dissipated_total", &self.dissipated_total)?;
        s.serialize_field("residual", &self.residual)?;
        s.end()
    }
}

/// A row time for the waveform table: a real instant, or a multiple of eps
/// (an instant inside the halo of zero).
#[derive(Clone, Debug, PartialEq)]
pub enum TimeSpec {
    Real(Rational),
    HaloMultiple(Rational),
}

impl fmt::Display for TimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeSpec::Real(q) => write!(f, "{q}"),
            TimeSpec::HaloMultiple(a) if a.is_one() => write!(f, "eps"),
            TimeSpec::HaloMultiple(a) => write!(f, "{a}*eps"),
        }
    }
}

impl FromStr for TimeSpec {
    type Err = String;

    /// Accepts `<rational>`, `eps`, or `<rational>*eps`.
    fn from_str(s: &str) -> Result<TimeSpec, String> {
        let s = s.trim();
        if s == "eps" {
            return Ok(TimeSpec::HaloMultiple(Rational::one()));
        }
        if let Some(prefix) = s.strip_suffix("*eps") {
            let a = rational::parse(prefix.trim())
                .ok_or_else(|| format!("bad halo multiple '{prefix}'"))?;
            return Ok(TimeSpec::HaloMultiple(a));
        }
        rational::parse(s)
            .map(TimeSpec::Real)
            .ok_or_else(|| format!("bad time '{s}'"))
    }
}

impl Serialize for TimeSpec {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> Result<Z::Ok, Z::Error> {
        serializer.collect_str(self)
    }
}

/// One classified table row.
#[derive(Clone, Debug, Serialize)]
pub struct WaveformRow {
    pub current: HyperValue,
    pub power: HyperValue,
    pub current_class: Classification,
    pub power_class: Classification,
    /// Standard parts, where one exists (unlimited values have none).
    pub st_current: Option<Coefficient>,
    pub st_power: Option<Coefficient>,
    /// Energy dissipated over (0, t).
    pub dissipated_head: HyperValue,
    /// Energy dissipated over (t, infinity).
    pub dissipated_tail: HyperValue,
}

/// A row outcome; failures are collected per row, not aborted on.
#[derive(Clone, Debug)]
pub struct WaveformOutcome {
    pub spec: TimeSpec,
    pub result: Result<WaveformRow, Error>,
}

/// Classifies current and power at each listed time, with halo times built
/// as multiples of eps at truncation order k.
pub fn classify_waveforms(
    params: &CircuitParams,
    specs: &[TimeSpec],
    k: usize,
) -> Vec<WaveformOutcome> {
    let circuit = params.grid();
    specs
        .iter()
        .map(|spec| WaveformOutcome {
            spec: spec.clone(),
            result: waveform_row(&circuit, spec, k),
        })
        .collect()
}

fn waveform_row(
    circuit: &Circuit<HyperValue>,
    spec: &TimeSpec,
    k: usize,
) -> Result<WaveformRow, Error> {
    let t = match spec {
        TimeSpec::Real(q) => {
            if !q.is_positive() {
                return Err(Error::NonPositiveTimeSpec);
            }
            HyperValue::constant(q.clone())
        }
        TimeSpec::HaloMultiple(a) => {
            if !a.is_positive() {
                return Err(Error::NonPositiveTimeSpec);
            }
            &HyperValue::eps(k) * &HyperValue::constant(a.clone())
        }
    };
    let current = circuit.current(&t)?;
    let power = circuit.power(&t)?;
    let dissipated_head = circuit.dissipated(&HyperValue::zero(k), &Time::At(t.clone()))?;
    let dissipated_tail = circuit.dissipated(&t, &Time::Infinity)?;
    Ok(WaveformRow {
        current_class: current.classify(),
        power_class: power.classify(),
        st_current: current.standard_part().ok(),
        st_power: power.standard_part().ok(),
        current,
        power,
        dissipated_head,
        dissipated_tail,
    })
}
