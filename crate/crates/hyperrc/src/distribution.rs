//! The discharge current as a delta family.
//!
//! Normalizing the current by its total charge transfer q0/2 gives a family
//! of unit-mass densities indexed by the resistance itself:
//!
//! ```text
//! delta_r(t) = i_r(t) / (q0/2),    integral over t >= 0 of delta_r = 1
//! ```
//!
//! As r shrinks, the mass concentrates: the tail beyond any fixed T > 0 is
//! e^{-2T/(rc)}, which for infinitesimal r is a positive infinitesimal. The
//! family is a computable stand-in for the Dirac delta at 0+.
//!
//! Squaring a singular distribution is undefined in classical distribution
//! theory, yet the circuit's dissipated energy is the integral of
//! i^2 r = (q0/2)^2 r delta^2. This module never forms delta^2 as an
//! object; it integrates the combined integrand r * i_r^2 in closed form,
//! where r cancels algebraically and the result is q0 v0 / 4 whether r is
//! real or a positive infinitesimal.

use crate::circuit::{Circuit, CircuitParams, Error, Scalar};
use crate::rational;
use crate::transfield::HyperValue;

/// The normalized current family for one parameter set.
#[derive(Clone, Debug)]
pub struct DeltaFamily<S: Scalar> {
    circuit: Circuit<S>,
}

impl DeltaFamily<HyperValue> {
    /// Exact symbolic family; admits `r = eps`.
    pub fn grid(params: &CircuitParams) -> DeltaFamily<HyperValue> {
        DeltaFamily {
            circuit: params.grid(),
        }
    }
}

impl DeltaFamily<f64> {
    /// Float family; requires real resistance.
    pub fn float(params: &CircuitParams) -> Result<DeltaFamily<f64>, Error> {
        Ok(DeltaFamily {
            circuit: params.float()?,
        })
    }
}

impl<S: Scalar> DeltaFamily<S> {
    pub fn circuit(&self) -> &Circuit<S> {
        &self.circuit
    }

    fn half_charge(&self) -> Result<S, Error> {
        self.circuit
            .charge()
            .div(&S::from_rational(&rational::integer(2)))
    }

    /// The closed-form integral of the current over [0, infinity):
    /// (q0/(rc)) * (rc/2) = q0/2.
    fn current_mass(&self) -> Result<S, Error> {
        let amp = self.circuit.charge().div(self.circuit.rc())?;
        let half_rc = self
            .circuit
            .rc()
            .div(&S::from_rational(&rational::integer(2)))?;
        Ok(amp.mul(&half_rc))
    }

    /// The density delta_r(t) = i_r(t)/(q0/2).
    pub fn density(&self, t: &S) -> Result<S, Error> {
        self.circuit.current(t)?.div(&self.half_charge()?)
    }

    /// Total mass of the family. The arithmetic runs the cancellation
    /// rather than asserting it: the result is exactly 1 for every
    /// admissible r.
    pub fn integral(&self) -> Result<S, Error> {
        self.current_mass()?.div(&self.half_charge()?)
    }

    /// Mass beyond time T: e^{-2T/(rc)}. Infinitesimal whenever r is, for
    /// every real T > 0.
    pub fn tail_mass(&self, t_after: &S) -> Result<S, Error> {
        let tail = self.current_mass()?.mul(&self.circuit.decay_at(t_after)?);
        tail.div(&self.half_charge()?)
    }

    /// The dissipated energy written as r * integral of i_r^2, in closed
    /// form: r * (q0/(rc))^2 * (rc/4). The resistance cancels and the
    /// result is q0 v0 / 4 exactly, real or infinitesimal r alike. delta^2
    /// itself is never formed.
    pub fn squared_energy(&self) -> Result<S, Error> {
        let amp = self.circuit.charge().div(self.circuit.rc())?;
        let quarter_rc = self
            .circuit
            .rc()
            .div(&S::from_rational(&rational::integer(4)))?;
        Ok(self
            .circuit
            .resistance()
            .mul(&amp.mul(&amp).mul(&quarter_rc)))
    }
}
