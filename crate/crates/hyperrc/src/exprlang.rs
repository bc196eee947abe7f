//! A small expression language over hyperreal values.
//!
//! Grammar (whitespace-insensitive, `+ - * /` left-associative):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' integer)?
//! atom   := number | symbol | 'exp' '(' expr ')' | '(' expr ')' | '-' factor
//! ```
//!
//! `^` takes an integer literal exponent and binds tighter than unary minus,
//! so `-a^2` reads as `-(a^2)`. Number literals (integers, decimals, and
//! quotients of two integer literals such as `3/4`) become exact rationals at
//! parse time. ASTs evaluate in either hyperreal model: the grid transseries
//! field or the sequence model, with `eps` bound by default in both.

mod eval;
mod parser;
mod printer;

pub use eval::{eval_grid, eval_seq, grid_bindings, seq_bindings, EvalError};
pub use parser::{parse, ParseError};
pub use printer::{print, print_full};

use crate::rational::Rational;

/// Expression tree. `Pow` exponents are integer literals by construction.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(Rational),
    Symbol(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Exp(Box<Expr>),
}

impl Expr {
    pub fn number(q: Rational) -> Expr {
        Expr::Number(q)
    }

    pub fn symbol(name: impl Into<String>) -> Expr {
        Expr::Symbol(name.into())
    }

    pub fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }

    pub fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }

    pub fn pow(self, n: i32) -> Expr {
        Expr::Pow(Box::new(self), n)
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }
}
