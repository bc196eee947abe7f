//! Recursive-descent parser with byte-offset error reporting.

use super::Expr;
use crate::rational::{self, Rational};
use num::{ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

/// Syntax error: where it happened, what would have been legal, what was
/// there instead. The `Display` format is stable:
/// `syntax error at offset N: expected ...; found ...`.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset into the source text.
    pub offset: usize,
    /// Tokens that would have been accepted at `offset`.
    pub expected: Vec<String>,
    /// Description of what was found (a token, a character, or end of input).
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: expected {}; found {}",
            self.offset,
            self.expected.join(", "),
            self.found
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Lexeme {
    tok: Tok,
    offset: usize,
    text: String,
}

fn lex(text: &str) -> Result<Vec<Lexeme>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = tok {
            i += 1;
            out.push(Lexeme {
                tok,
                offset: start,
                text: text[start..i].to_string(),
            });
            continue;
        }
        if b.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let slice = &text[start..i];
            let value = rational::parse(slice).ok_or_else(|| ParseError {
                offset: start,
                expected: vec!["number".to_string()],
                found: format!("'{slice}'"),
            })?;
            out.push(Lexeme {
                tok: Tok::Number(value),
                offset: start,
                text: slice.to_string(),
            });
            continue;
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Lexeme {
                tok: Tok::Ident(text[start..i].to_string()),
                offset: start,
                text: text[start..i].to_string(),
            });
            continue;
        }
        return Err(ParseError {
            offset: start,
            expected: vec!["a token".to_string()],
            found: format!("'{}'", &text[start..start + 1]),
        });
    }
    Ok(out)
}

struct Parser {
    lexemes: Vec<Lexeme>,
    pos: usize,
    end: usize,
}

const ATOM_EXPECTED: [&str; 5] = ["number", "symbol", "'exp'", "'('", "'-'"];

impl Parser {
    fn peek(&self) -> Option<&Lexeme> {
        self.lexemes.get(self.pos)
    }

    fn advance(&mut self) -> Option<Lexeme> {
        let lexeme = self.lexemes.get(self.pos).cloned();
        if lexeme.is_some() {
            self.pos += 1;
        }
        lexeme
    }

    fn here(&self) -> (usize, String) {
        match self.peek() {
            Some(l) => (l.offset, format!("'{}'", l.text)),
            None => (self.end, "end of input".to_string()),
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let (offset, found) = self.here();
        ParseError {
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(l) = self.peek() {
            let op = match l.tok {
                Tok::Plus => Expr::add,
                Tok::Minus => Expr::sub,
                _ => break,
            };
            self.advance();
            let rhs = self.term()?;
            lhs = op(lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while let Some(l) = self.peek() {
            let divide = match l.tok {
                Tok::Star => false,
                Tok::Slash => true,
                _ => break,
            };
            self.advance();
            let rhs = self.factor()?;
            lhs = if divide {
                fold_quotient(lhs, rhs)
            } else {
                lhs.mul(rhs)
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(l) if l.tok == Tok::Caret) {
            self.advance();
            let exponent = self.integer_literal()?;
            return Ok(base.pow(exponent));
        }
        Ok(base)
    }

    fn integer_literal(&mut self) -> Result<i32, ParseError> {
        let negative = if matches!(self.peek(), Some(l) if l.tok == Tok::Minus) {
            self.advance();
            true
        } else {
            false
        };
        match self.peek() {
            Some(l) => {
                if let Tok::Number(q) = &l.tok {
                    if q.is_integer() {
                        if let Some(n) = q.to_i32() {
                            self.advance();
                            return Ok(if negative { -n } else { n });
                        }
                    }
                }
                Err(self.error(&["integer exponent"]))
            }
            None => Err(self.error(&["integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(l) = self.peek() else {
            return Err(self.error(&ATOM_EXPECTED));
        };
        match l.tok.clone() {
            Tok::Number(q) => {
                self.advance();
                Ok(Expr::Number(q))
            }
            Tok::Ident(name) if name == "exp" => {
                self.advance();
                if !matches!(self.peek(), Some(l) if l.tok == Tok::LParen) {
                    return Err(self.error(&["'('"]));
                }
                self.advance();
                let inner = self.expr()?;
                self.close_paren()?;
                Ok(inner.exp())
            }
            Tok::Ident(name) => {
                self.advance();
                Ok(Expr::Symbol(name))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.close_paren()?;
                Ok(inner)
            }
            Tok::Minus => {
                self.advance();
                Ok(self.factor()?.neg())
            }
            _ => Err(self.error(&ATOM_EXPECTED)),
        }
    }

    fn close_paren(&mut self) -> Result<(), ParseError> {
        if matches!(self.peek(), Some(l) if l.tok == Tok::RParen) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&["'+'", "'-'", "'*'", "'/'", "')'"]))
        }
    }
}

/// A quotient of two number literals folds to an exact rational, so `3/4`
/// reads as the number 3/4. Division by the literal zero stays a division
/// node and fails at evaluation time.
fn fold_quotient(lhs: Expr, rhs: Expr) -> Expr {
    match (&lhs, &rhs) {
        (Expr::Number(a), Expr::Number(b)) if !b.is_zero() => Expr::Number(a / b),
        _ => lhs.div(rhs),
    }
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let lexemes = lex(text)?;
    let mut parser = Parser {
        lexemes,
        pos: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.error(&["'+'", "'-'", "'*'", "'/'", "end of input"]));
    }
    Ok(expr)
}
