//! Computable hyperreal arithmetic in two interoperating models, applied to
//! the two-capacitor circuit with an infinitesimal series resistance.
//!
//! The crate offers:
//!
//! * [`transfield`]: hyperreal values as truncated grid transseries in a
//!   positive infinitesimal `eps`, with exact rational exponents, field
//!   arithmetic, exponentials, order, classification, and standard parts.
//! * [`ultraproduct`]: hyperreal values as real sequences sampled at a fixed
//!   plan of indices, with honest `Decided`/`Undecided` verdicts for sign and
//!   classification queries.
//! * [`exprlang`]: a small expression language (`+ - * / ^ exp`) with a
//!   parser, canonical printers, and evaluators into both models, so the two
//!   models can be cross-checked on the same expression corpus.
//! * [`circuit`]: the two-capacitor charge-transfer circuit, generic over a
//!   real or hyperreal resistance, with waveform classification and an exact
//!   energy audit.
//! * [`distribution`]: the current pulse renormalized as a nascent delta
//!   family, with its integral, tail mass, and squared-pulse energy.
//! * [`cli`]: the `hyperrc` command-line front end over all of the above.
//!
//! Start with the `examples/` directory; each example is a runnable tour of
//! one capability:
//!
//! ```text
//! examples/
//!   hyperreal_arithmetic.rs    transseries values, arithmetic, truncation
//!   classify_expression.rs     parse an expression and classify it
//!   sequence_model.rs          sequence hyperreals and sampling verdicts
//!   cross_check.rs             run both models over a corpus and compare
//!   energy_audit.rs            exact energy bookkeeping for the circuit
//!   waveform_classification.rs current/power classes across time scales
//!   delta_experiment.rs        the current pulse as a nascent delta function
//!   plot_data.rs               finite-resistance curves for plotting
//! ```

pub mod circuit;
pub mod cli;
pub mod distribution;
pub mod exprlang;
pub mod rational;
pub mod transfield;
pub mod ultraproduct;

pub use rational::Rational;
pub use transfield::{Classification, Comparison, HyperValue, Sign};
pub use ultraproduct::{SamplingPlan, SeqHyper, Verdict};
