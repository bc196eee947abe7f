//! Evaluation of expression trees in both hyperreal models.

use super::Expr;
use crate::rational;
use crate::transfield::{self, HyperValue};
use crate::ultraproduct::SeqHyper;
use std::collections::HashMap;
use thiserror::Error;

/// Errors from evaluating an expression.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound symbol: {0}")]
    UnboundSymbol(String),
    #[error(transparent)]
    Arithmetic(#[from] transfield::Error),
}

/// Grid bindings with the built-in `eps` at truncation `k`.
pub fn grid_bindings(k: usize) -> HashMap<String, HyperValue> {
    HashMap::from([("eps".to_string(), HyperValue::eps(k))])
}

/// Sequence bindings with the built-in `eps` as the witness infinitesimal
/// `1/(n+1)`.
pub fn seq_bindings() -> HashMap<String, SeqHyper> {
    HashMap::from([("eps".to_string(), SeqHyper::reciprocal())])
}

/// Evaluates in the grid transseries model. Number literals are exact
/// scalars that adopt the truncation of the values they meet.
pub fn eval_grid(
    e: &Expr,
    bindings: &HashMap<String, HyperValue>,
) -> Result<HyperValue, EvalError> {
    match e {
        Expr::Number(q) => Ok(HyperValue::constant(q.clone())),
        Expr::Symbol(name) => bindings
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::UnboundSymbol(name.clone())),
        Expr::Neg(x) => Ok(eval_grid(x, bindings)?.neg()),
        Expr::Add(l, r) => Ok(eval_grid(l, bindings)?.add(&eval_grid(r, bindings)?)),
        Expr::Sub(l, r) => Ok(eval_grid(l, bindings)?.sub(&eval_grid(r, bindings)?)),
        Expr::Mul(l, r) => Ok(eval_grid(l, bindings)?.mul(&eval_grid(r, bindings)?)),
        Expr::Div(l, r) => Ok(eval_grid(l, bindings)?.div(&eval_grid(r, bindings)?)?),
        Expr::Pow(b, n) => Ok(eval_grid(b, bindings)?.powi(*n)?),
        Expr::Exp(x) => Ok(eval_grid(x, bindings)?.exp()?),
    }
}

/// Evaluates in the sequence model. All arithmetic is pointwise on `f64`
/// samples; division by a zero sample or float overflow shows up as
/// non-finite samples, which the verdict layer reports honestly.
pub fn eval_seq(
    e: &Expr,
    bindings: &HashMap<String, SeqHyper>,
) -> Result<SeqHyper, EvalError> {
    match e {
        Expr::Number(q) => Ok(SeqHyper::constant(rational::to_f64(q))),
        Expr::Symbol(name) => bindings
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::UnboundSymbol(name.clone())),
        Expr::Neg(x) => Ok(eval_seq(x, bindings)?.neg()),
        Expr::Add(l, r) => Ok(eval_seq(l, bindings)?.add(&eval_seq(r, bindings)?)),
        Expr::Sub(l, r) => Ok(eval_seq(l, bindings)?.sub(&eval_seq(r, bindings)?)),
        Expr::Mul(l, r) => Ok(eval_seq(l, bindings)?.mul(&eval_seq(r, bindings)?)),
        Expr::Div(l, r) => Ok(eval_seq(l, bindings)?.div(&eval_seq(r, bindings)?)),
        Expr::Pow(b, n) => Ok(eval_seq(b, bindings)?.powi(*n)),
        Expr::Exp(x) => Ok(eval_seq(x, bindings)?.exp()),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    use crate::rational::{integer, ratio};
    use crate::transfield::{Classification, Sign, DEFAULT_TRUNCATION};

    const K: usize = DEFAULT_TRUNCATION;

    fn grid(src: &str) -> Result<HyperValue, EvalError> {
        eval_grid(&parse(src).unwrap(), &grid_bindings(K))
    }

    #[test]
    fn doubles_eps() {
        let v = grid("eps + eps").unwrap();
        assert_eq!(v.to_string(), "2*eps");
        assert!(v.is_exact());
    }

    #[test]
    fn circuit_power_formula_at_unit_time() {
        // Eq: q0*v0/(r*c) * exp(-4*t/(r*c)) with q0=2, v0=2, c=1, r=eps,
        // t=1 gives 4/eps * exp(-4/eps), an infinitesimal.
        let mut bindings = grid_bindings(K);
        for (name, v) in [("q0", 2i64), ("v0", 2), ("c", 1), ("t", 1)] {
            bindings.insert(name.to_string(), HyperValue::from_integer(v, K));
        }
        let ast = parse("q0*v0/(r*c) * exp(-4*t/(r*c))").unwrap();
        assert!(matches!(
            eval_grid(&ast, &bindings),
            Err(EvalError::UnboundSymbol(s)) if s == "r"
        ));
        bindings.insert("r".to_string(), HyperValue::eps(K));
        let v = eval_grid(&ast, &bindings).unwrap();
        assert_eq!(v.to_string(), "4*eps^-1*exp(-4/eps)");
        assert!(v.is_exact());
        assert_eq!(v.classify(), Classification::Infinitesimal(Sign::Positive));
        // Numeric oracle: positive and decreasing toward 0 as eps shrinks,
        // underflowing to exact zero once 4/eps passes the float range.
        let samples: Vec<f64> = (1..=9).map(|e| v.eval_f64(10f64.powi(-e))).collect();
        assert!(samples[0] > 0.0);
        assert!(samples.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(*samples.last().unwrap(), 0.0);
    }

    #[test]
    fn division_by_zero_literal_fails_at_eval() {
        assert!(matches!(
            grid("1/0"),
            Err(EvalError::Arithmetic(transfield::Error::DivisionByZero))
        ));
    }

    #[test]
    fn unbound_symbol_is_reported() {
        assert!(matches!(
            grid("x"),
            Err(EvalError::UnboundSymbol(s)) if s == "x"
        ));
    }

    #[test]
    fn numbers_fold_to_exact_scalars() {
        let v = grid("1/2 + 1/2").unwrap();
        assert_eq!(v.standard_part().unwrap().as_exact(), Some(&integer(1)));
        let w = grid("0.25*eps").unwrap();
        assert_eq!(w.leading().unwrap().coeff.as_exact(), Some(&ratio(1, 4)));
    }

    #[test]
    fn seq_eval_samples_pointwise() {
        let s = eval_seq(&parse("1/eps").unwrap(), &seq_bindings()).unwrap();
        assert_eq!(s.eval(0), 1.0);
        assert_eq!(s.eval(9), 10.0);
        let c = eval_seq(&parse("3 + eps").unwrap(), &seq_bindings()).unwrap();
        assert_eq!(c.eval(0), 4.0);
        assert!((c.eval(999) - 3.001).abs() < 1e-12);
    }
}
