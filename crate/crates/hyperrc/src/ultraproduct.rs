//! Hyperreals as real sequences, sampled honestly.
//!
//! This is the sequence construction of the hyperreals: a [`SeqHyper`] is a
//! sequence of reals given by a pure generator, two sequences being
//! interchangeable when they agree on a cofinite set of indices. A genuine
//! ultrafilter is not computable, so queries run against a [`SamplingPlan`]
//! (by default indices `2^k` for `k = 4..=26` with a trailing stability
//! window of 6) and return a [`Verdict`]: `Decided` only when the sampled
//! evidence is stable, `Undecided` otherwise. Sequences whose behavior the
//! cofinite filter cannot settle (an alternating sign, say, or a trend too
//! slow to certify) stay `Undecided` rather than being guessed at.
//!
//! Classification verdicts follow threshold ladders: an infinitesimal must
//! shrink through the ladder `10^0 … 10^-12` (trailing window strictly
//! decreasing, decisively, already below 1, or underflowed to zero from
//! below `10^-12`); an unlimited sequence must grow through the mirrored
//! ladder `10^0 … 10^12` (or overflow the float range with stable sign); an
//! appreciable one must settle inside `[10^-6, 10^6]` with relative spread
//! below `10^-3`.
//!
//! [`cross_check`] ties this model to the grid transseries model: both
//! evaluate the same expression, and the classifications are compared with
//! `Undecided` counting as non-contradiction.

use crate::exprlang::{self, Expr};
use crate::transfield::{Classification, HyperValue, Sign};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Magnitude band for an appreciable verdict.
const APPRECIABLE_MIN: f64 = 1e-6;
const APPRECIABLE_MAX: f64 = 1e6;
/// Maximum relative spread across the window for an appreciable verdict.
const SPREAD_TOL: f64 = 1e-3;
/// A monotone window must move by at least this factor to certify a trend.
const TREND_FACTOR: f64 = 4.0;
/// Bottom rung of the infinitesimal ladder: a sequence that underflows to
/// exact zero counts as decayed only if its last nonzero sample was already
/// below this.
const LADDER_FLOOR: f64 = 1e-12;

/// A hyperreal in the sequence model: a pure, total generator for the
/// sequence terms, plus a human-readable label.
#[derive(Clone)]
pub struct SeqHyper {
    gen: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
    label: String,
}

impl SeqHyper {
    pub fn from_fn(
        label: impl Into<String>,
        gen: impl Fn(u64) -> f64 + Send + Sync + 'static,
    ) -> SeqHyper {
        SeqHyper {
            gen: Arc::new(gen),
            label: label.into(),
        }
    }

    /// The witness infinitesimal `1/(n+1)`.
    pub fn reciprocal() -> SeqHyper {
        SeqHyper::from_fn("1/(n+1)", |n| 1.0 / (n as f64 + 1.0))
    }

    pub fn constant(value: f64) -> SeqHyper {
        SeqHyper::from_fn(format!("{value}"), move |_| value)
    }

    /// The sequence `(n+1)^p`.
    pub fn power(p: f64) -> SeqHyper {
        SeqHyper::from_fn(format!("(n+1)^{p}"), move |n| (n as f64 + 1.0).powf(p))
    }

    /// Term `n` of the sequence.
    pub fn eval(&self, n: u64) -> f64 {
        (self.gen)(n)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn binary(
        &self,
        other: &SeqHyper,
        symbol: char,
        op: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> SeqHyper {
        let (a, b) = (Arc::clone(&self.gen), Arc::clone(&other.gen));
        SeqHyper {
            gen: Arc::new(move |n| op(a(n), b(n))),
            label: format!("({}{}{})", self.label, symbol, other.label),
        }
    }

    pub fn add(&self, other: &SeqHyper) -> SeqHyper {
        self.binary(other, '+', |x, y| x + y)
    }

    pub fn sub(&self, other: &SeqHyper) -> SeqHyper {
        self.binary(other, '-', |x, y| x - y)
    }

    pub fn mul(&self, other: &SeqHyper) -> SeqHyper {
        self.binary(other, '*', |x, y| x * y)
    }

    /// Pointwise division; a zero divisor sample yields a non-finite sample,
    /// surfaced later as an overflow verdict rather than an error here.
    pub fn div(&self, other: &SeqHyper) -> SeqHyper {
        self.binary(other, '/', |x, y| x / y)
    }

    pub fn neg(&self) -> SeqHyper {
        let a = Arc::clone(&self.gen);
        SeqHyper {
            gen: Arc::new(move |n| -a(n)),
            label: format!("(-{})", self.label),
        }
    }

    pub fn exp(&self) -> SeqHyper {
        let a = Arc::clone(&self.gen);
        SeqHyper {
            gen: Arc::new(move |n| a(n).exp()),
            label: format!("exp({})", self.label),
        }
    }

    pub fn powi(&self, k: i32) -> SeqHyper {
        let a = Arc::clone(&self.gen);
        SeqHyper {
            gen: Arc::new(move |n| a(n).powi(k)),
            label: format!("({})^{k}", self.label),
        }
    }

    pub fn scale(&self, factor: f64) -> SeqHyper {
        let a = Arc::clone(&self.gen);
        SeqHyper {
            gen: Arc::new(move |n| factor * a(n)),
            label: format!("({factor}*{})", self.label),
        }
    }
}

impl fmt::Debug for SeqHyper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeqHyper({})", self.label)
    }
}

/// Errors from building a sequence by rule name.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("unknown rule: {0}")]
    UnknownRule(String),
    #[error("rule '{0}' requires a parameter")]
    MissingParameter(String),
}

/// Builds a named base sequence: `reciprocal` (1/(n+1)), `constant` (needs
/// a value), or `power` (needs an exponent, gives (n+1)^p). Compositions are
/// built with the [`SeqHyper`] arithmetic methods.
pub fn seq_from_rule(name: &str, parameter: Option<f64>) -> Result<SeqHyper, RuleError> {
    let need = |p: Option<f64>| p.ok_or_else(|| RuleError::MissingParameter(name.to_string()));
    match name {
        "reciprocal" => Ok(SeqHyper::reciprocal()),
        "constant" => Ok(SeqHyper::constant(need(parameter)?)),
        "power" => Ok(SeqHyper::power(need(parameter)?)),
        _ => Err(RuleError::UnknownRule(name.to_string())),
    }
}

/// Where a sequence gets sampled and how much trailing agreement a decision
/// needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingPlan {
    indices: Vec<u64>,
    stability_window: usize,
}

impl SamplingPlan {
    /// Panics unless `indices` is strictly increasing and at least as long
    /// as the window, and `stability_window >= 2`.
    pub fn new(indices: Vec<u64>, stability_window: usize) -> SamplingPlan {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "sampling indices must be strictly increasing"
        );
        assert!(stability_window >= 2, "stability window must be at least 2");
        assert!(
            indices.len() >= stability_window,
            "need at least as many indices as the stability window"
        );
        SamplingPlan {
            indices,
            stability_window,
        }
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn stability_window(&self) -> usize {
        self.stability_window
    }
}

impl Default for SamplingPlan {
    /// Indices `2^k` for `k = 4..=26`, stability window 6.
    fn default() -> SamplingPlan {
        SamplingPlan::new((4..=26).map(|k| 1u64 << k).collect(), 6)
    }
}

/// Outcome of a sampled query: a decision backed by a stable trailing
/// window, or an explanation of why the evidence does not decide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    Decided(T),
    Undecided { reason: String },
}

impl<T> Verdict<T> {
    fn undecided(reason: impl Into<String>) -> Verdict<T> {
        Verdict::Undecided {
            reason: reason.into(),
        }
    }

    pub fn is_decided(&self) -> bool {
        matches!(self, Verdict::Decided(_))
    }

    pub fn decided(&self) -> Option<&T> {
        match self {
            Verdict::Decided(v) => Some(v),
            Verdict::Undecided { .. } => None,
        }
    }
}

/// Sign of a sequence hyperreal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqSign {
    Negative,
    Zero,
    Positive,
}

impl fmt::Display for SeqSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqSign::Negative => write!(f, "-"),
            SeqSign::Zero => write!(f, "0"),
            SeqSign::Positive => write!(f, "+"),
        }
    }
}

/// Decides the eventual sign of `x`: every hyperreal is positive, negative,
/// or zero, and this answers from the trailing stability window. Undecided
/// if any sampled value is non-finite or the window's signs disagree.
pub fn eventual_sign(x: &SeqHyper, plan: &SamplingPlan) -> Verdict<SeqSign> {
    let samples: Vec<(u64, f64)> = plan.indices.iter().map(|&n| (n, x.eval(n))).collect();
    if let Some((n, _)) = samples.iter().find(|(_, v)| !v.is_finite()) {
        return Verdict::undecided(format!("numeric overflow: non-finite sample at n={n}"));
    }
    let window = &samples[samples.len() - plan.stability_window..];
    let sign_of = |v: f64| {
        if v == 0.0 {
            SeqSign::Zero
        } else if v > 0.0 {
            SeqSign::Positive
        } else {
            SeqSign::Negative
        }
    };
    let first = sign_of(window[0].1);
    if window.iter().all(|(_, v)| sign_of(*v) == first) {
        Verdict::Decided(first)
    } else {
        Verdict::undecided("sign is not stable across the trailing window")
    }
}

fn sign_of_sample(v: f64) -> Sign {
    if v > 0.0 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Classifies `x` by order of magnitude from sampled evidence. See the
/// module docs for the decision ladders; anything that does not certify a
/// class is `Undecided` with a reason.
pub fn seq_classify(x: &SeqHyper, plan: &SamplingPlan) -> Verdict<Classification> {
    let samples: Vec<(u64, f64)> = plan.indices.iter().map(|&n| (n, x.eval(n))).collect();
    let w = plan.stability_window;
    let len = samples.len();

    // Trailing zeros: either the zero sequence or a decay that underflowed.
    let zeros = samples
        .iter()
        .rev()
        .take_while(|(_, v)| *v == 0.0)
        .count();
    if zeros == len {
        return Verdict::Decided(Classification::Zero);
    }
    if zeros >= w {
        let (n, prev) = samples[len - zeros - 1];
        if !prev.is_finite() {
            return Verdict::undecided(format!(
                "trailing zeros follow a non-finite sample at n={n}"
            ));
        }
        if prev.abs() < LADDER_FLOOR {
            // The sequence walked down through the whole ladder and then
            // left the float range: infinitesimal, with the sign it decayed
            // from.
            return Verdict::Decided(Classification::Infinitesimal(sign_of_sample(prev)));
        }
        return Verdict::Decided(Classification::Zero);
    }

    // Trailing infinities: an unlimited sequence that overflowed.
    let infs = samples
        .iter()
        .rev()
        .take_while(|(_, v)| v.is_infinite())
        .count();
    if infs > 0 {
        let tail = &samples[len - infs..];
        let positive = tail[0].1 > 0.0;
        if tail.iter().any(|(_, v)| (*v > 0.0) != positive) {
            return Verdict::undecided("non-finite samples with inconsistent signs");
        }
        // Count backward through the strictly growing same-sign feeder run.
        let mut run = infs;
        let mut bound = f64::INFINITY;
        for (_, v) in samples[..len - infs].iter().rev() {
            if !v.is_finite() || *v == 0.0 || (*v > 0.0) != positive || v.abs() >= bound {
                break;
            }
            bound = v.abs();
            run += 1;
        }
        if run >= w {
            let sign = if positive { Sign::Positive } else { Sign::Negative };
            return Verdict::Decided(Classification::Unlimited(sign));
        }
        return Verdict::undecided(format!(
            "numeric overflow: non-finite samples from n={}",
            tail[0].0
        ));
    }

    if let Some((n, _)) = samples[len - w..].iter().find(|(_, v)| !v.is_finite()) {
        return Verdict::undecided(format!("numeric overflow: non-finite sample at n={n}"));
    }

    if zeros > 0 {
        // A few trailing zeros inside the window: believable as underflow
        // only when fed by a strictly shrinking same-sign run from below the
        // ladder floor.
        let nonzero = &samples[..len - zeros];
        let (_, last_nz) = *nonzero.last().unwrap();
        if last_nz.is_finite() && last_nz != 0.0 && last_nz.abs() < LADDER_FLOOR {
            let positive = last_nz > 0.0;
            let mut run = zeros + 1;
            let mut bound = last_nz.abs();
            for (_, v) in nonzero[..nonzero.len() - 1].iter().rev() {
                if !v.is_finite() || *v == 0.0 || (*v > 0.0) != positive || v.abs() <= bound {
                    break;
                }
                bound = v.abs();
                run += 1;
            }
            if run >= w {
                return Verdict::Decided(Classification::Infinitesimal(sign_of_sample(
                    last_nz,
                )));
            }
        }
        return Verdict::undecided("trailing zeros without a stable decay run");
    }

    // All-finite, nonzero window.
    let window = &samples[len - w..];
    let positive = window[0].1 > 0.0;
    if window.iter().any(|(_, v)| (*v > 0.0) != positive) {
        return Verdict::undecided("sign is not stable across the trailing window");
    }
    let sign = if positive { Sign::Positive } else { Sign::Negative };
    let mags: Vec<f64> = window.iter().map(|(_, v)| v.abs()).collect();
    let (first, last) = (mags[0], mags[mags.len() - 1]);
    if mags.windows(2).all(|p| p[1] < p[0]) && last * TREND_FACTOR <= first && last < 1.0 {
        return Verdict::Decided(Classification::Infinitesimal(sign));
    }
    if mags.windows(2).all(|p| p[1] > p[0]) && first * TREND_FACTOR <= last && last > 1.0 {
        return Verdict::Decided(Classification::Unlimited(sign));
    }
    let max = mags.iter().cloned().fold(f64::MIN, f64::max);
    let min = mags.iter().cloned().fold(f64::MAX, f64::min);
    let spread = (max - min) / max;
    if min >= APPRECIABLE_MIN && max <= APPRECIABLE_MAX && spread < SPREAD_TOL {
        return Verdict::Decided(Classification::Appreciable(sign));
    }
    Verdict::undecided(format!(
        "no stable trend across the trailing window (relative spread {spread:.3e})"
    ))
}

/// How the two models' answers for one expression relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    /// Both decided and equal.
    Match,
    /// The sequence model declined to decide: no contradiction.
    Undecided,
    /// The grid model cannot evaluate the expression at all.
    CoverageGap,
    /// Both decided and different; always a bug somewhere.
    Contradiction,
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Agreement::Match => write!(f, "match"),
            Agreement::Undecided => write!(f, "undecided"),
            Agreement::CoverageGap => write!(f, "coverage-gap"),
            Agreement::Contradiction => write!(f, "contradiction"),
        }
    }
}

/// One expression's classification under both models.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    /// Canonical form of the expression.
    pub expr: String,
    /// Grid classification, or the evaluation error.
    pub grid: Result<Classification, String>,
    /// Sequence-model verdict.
    pub seq: Verdict<Classification>,
    pub agreement: Agreement,
}

#[derive(Serialize)]
struct ReportRow<'a> {
    expr: &'a str,
    grid: String,
    seq: String,
    #[serde(rename = "match")]
    agreement: String,
}

impl CrossCheckReport {
    /// One JSON object per report, fields `expr`, `grid`, `seq`, `match`.
    pub fn to_json_line(&self) -> String {
        let row = ReportRow {
            expr: &self.expr,
            grid: match &self.grid {
                Ok(c) => c.to_string(),
                Err(e) => format!("error: {e}"),
            },
            seq: match &self.seq {
                Verdict::Decided(c) => c.to_string(),
                Verdict::Undecided { reason } => format!("undecided: {reason}"),
            },
            agreement: self.agreement.to_string(),
        };
        serde_json::to_string(&row).expect("report serializes")
    }
}

/// Evaluates `expr` in both models and compares classifications. An
/// `Undecided` sequence verdict is non-contradiction; a grid evaluation
/// error (an expression off the grid) is a coverage gap; the sequence side
/// erroring can only mean an unbound symbol, also a coverage gap.
pub fn cross_check(
    expr: &Expr,
    grid_bindings: &HashMap<String, HyperValue>,
    seq_bindings: &HashMap<String, SeqHyper>,
    plan: &SamplingPlan,
) -> CrossCheckReport {
    let grid = match exprlang::eval_grid(expr, grid_bindings) {
        Ok(v) => Ok(v.classify()),
        Err(e) => Err(e.to_string()),
    };
    let seq = match exprlang::eval_seq(expr, seq_bindings) {
        Ok(s) => seq_classify(&s, plan),
        Err(e) => Verdict::undecided(e.to_string()),
    };
    let agreement = match (&grid, &seq) {
        (Err(_), _) => Agreement::CoverageGap,
        (Ok(_), Verdict::Undecided { .. }) => Agreement::Undecided,
        (Ok(g), Verdict::Decided(s)) => {
            if g == s {
                Agreement::Match
            } else {
                Agreement::Contradiction
            }
        }
    };
    CrossCheckReport {
        expr: exprlang::print(expr),
        grid,
        seq,
        agreement,
    }
}

/// Reads a corpus: one expression per line, blank lines and `#` comments
/// skipped.
pub fn read_corpus(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(str::to_string)
        .collect()
}
