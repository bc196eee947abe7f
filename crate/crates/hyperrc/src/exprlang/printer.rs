//! Canonical and fully-parenthesized expression printers.

use super::Expr;
use crate::rational::Rational;
use num::{Signed, Zero};

/// Precedence levels: additive 1, multiplicative 2, unary minus 3, power 4,
/// atoms 5. A child is parenthesized when its level is below the minimum its
/// position requires. A number literal gets the level of the expression its
/// text reads back as: a quotient for non-integers, a negation for negative
/// integers.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Number(q) => number_level(q),
        Expr::Symbol(_) | Expr::Exp(_) => 5,
    }
}

fn number_level(q: &Rational) -> u8 {
    if !q.is_integer() {
        2
    } else if q.is_negative() {
        3
    } else {
        5
    }
}

/// The parser folds a quotient of two number literals into a single number,
/// so the printers fold the same way before emitting text; otherwise `8/1`
/// would print, reparse as `8`, and the printed form would not be canonical.
/// Division by the literal zero is left alone, matching the parser.
fn fold_literal_quotients(e: &Expr) -> Expr {
    match e {
        Expr::Number(_) | Expr::Symbol(_) => e.clone(),
        Expr::Neg(x) => fold_literal_quotients(x).neg(),
        Expr::Add(l, r) => fold_literal_quotients(l).add(fold_literal_quotients(r)),
        Expr::Sub(l, r) => fold_literal_quotients(l).sub(fold_literal_quotients(r)),
        Expr::Mul(l, r) => fold_literal_quotients(l).mul(fold_literal_quotients(r)),
        Expr::Div(l, r) => {
            let l = fold_literal_quotients(l);
            let r = fold_literal_quotients(r);
            match (&l, &r) {
                (Expr::Number(a), Expr::Number(b)) if !b.is_zero() => Expr::Number(a / b),
                _ => l.div(r),
            }
        }
        Expr::Pow(b, n) => fold_literal_quotients(b).pow(*n),
        Expr::Exp(x) => fold_literal_quotients(x).exp(),
    }
}

fn write_canonical(e: &Expr, min: u8, out: &mut String) {
    let wrap = level(e) < min;
    if wrap {
        out.push('(');
    }
    match e {
        Expr::Number(q) => out.push_str(&q.to_string()),
        Expr::Symbol(s) => out.push_str(s),
        Expr::Neg(x) => {
            out.push('-');
            write_canonical(x, 4, out);
        }
        Expr::Add(l, r) => {
            write_canonical(l, 1, out);
            out.push('+');
            write_canonical(r, 2, out);
        }
        Expr::Sub(l, r) => {
            write_canonical(l, 1, out);
            out.push('-');
            write_canonical(r, 2, out);
        }
        Expr::Mul(l, r) => {
            write_canonical(l, 2, out);
            out.push('*');
            write_canonical(r, 3, out);
        }
        Expr::Div(l, r) => {
            write_canonical(l, 2, out);
            out.push('/');
            write_canonical(r, 3, out);
        }
        Expr::Pow(b, n) => {
            write_canonical(b, 5, out);
            out.push('^');
            out.push_str(&n.to_string());
        }
        Expr::Exp(x) => {
            out.push_str("exp(");
            write_canonical(x, 0, out);
            out.push(')');
        }
    }
    if wrap {
        out.push(')');
    }
}

/// Canonical form: minimal parentheses, no whitespace, literal quotients
/// folded. Reparsing the output and printing again gives the same text.
pub fn print(e: &Expr) -> String {
    let mut out = String::new();
    write_canonical(&fold_literal_quotients(e), 0, &mut out);
    out
}

/// Reference form: every compound node fully parenthesized, and number
/// literals that do not read back as atoms parenthesized too. Reparsing
/// agrees with reparsing the canonical form; used to check the canonical
/// printer.
pub fn print_full(e: &Expr) -> String {
    fn go(e: &Expr) -> String {
        match e {
            Expr::Number(q) if number_level(q) == 5 => q.to_string(),
            Expr::Number(q) => format!("({q})"),
            Expr::Symbol(s) => s.clone(),
            Expr::Neg(x) => format!("(-{})", go(x)),
            Expr::Add(l, r) => format!("({}+{})", go(l), go(r)),
            Expr::Sub(l, r) => format!("({}-{})", go(l), go(r)),
            Expr::Mul(l, r) => format!("({}*{})", go(l), go(r)),
            Expr::Div(l, r) => format!("({}/{})", go(l), go(r)),
            Expr::Pow(b, n) => format!("({}^{})", go(b), n),
            Expr::Exp(x) => format!("exp({})", go(x)),
        }
    }
    go(&fold_literal_quotients(e))
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    use crate::rational::{integer, ratio};

    fn round_trips(src: &str) {
        let ast = parse(src).unwrap();
        let printed = print(&ast);
        assert_eq!(parse(&printed).unwrap(), ast, "through {printed:?}");
    }

    #[test]
    fn canonical_forms() {
        let ast = parse("q0/(r*c) * exp(-2*t/(r*c))").unwrap();
        assert_eq!(print(&ast), "q0/(r*c)*exp(-2*t/(r*c))");
        assert_eq!(print(&parse("-a^2").unwrap()), "-a^2");
        assert_eq!(print(&parse("(-a)^2").unwrap()), "(-a)^2");
        assert_eq!(print(&parse("a-(b-c)").unwrap()), "a-(b-c)");
        assert_eq!(print(&parse("3/4").unwrap()), "3/4");
    }

    #[test]
    fn sample_round_trips() {
        for src in [
            "eps",
            "1/eps",
            "a+b*c",
            "a*b+c",
            "a-(b-c)",
            "a/(b/c)",
            "-(a+b)",
            "-a^2",
            "(a+b)^3",
            "exp(-2*t/(r*c))",
            "2^-3",
            "1/0",
        ] {
            round_trips(src);
        }
    }

    #[test]
    fn rational_literals_keep_their_value_in_tight_positions() {
        // A non-integer literal prints as a quotient, so positions that bind
        // tighter than division must parenthesize it.
        let three_quarters = Expr::number(ratio(3, 4));
        let denom = Expr::symbol("x").div(three_quarters.clone());
        assert_eq!(print(&denom), "x/(3/4)");
        let squared = three_quarters.pow(2);
        assert_eq!(print(&squared), "(3/4)^2");
        assert_eq!(print_full(&squared), "((3/4)^2)");
        // Negative integer literals read as negations.
        let neg_base = Expr::number(integer(-3)).pow(2);
        assert_eq!(print(&neg_base), "(-3)^2");
    }

    #[test]
    fn printers_fold_literal_quotients_like_the_parser() {
        let eight_over_one = Expr::number(integer(8)).div(Expr::number(integer(1)));
        assert_eq!(print(&eight_over_one), "8");
        let nested = Expr::number(integer(8))
            .div(Expr::number(integer(2)))
            .div(Expr::number(integer(4)).div(Expr::number(integer(1))));
        assert_eq!(print(&nested), "1");
        // Literal zero denominators survive for evaluation to reject.
        let by_zero = Expr::number(integer(1)).div(Expr::number(integer(0)));
        assert_eq!(print(&by_zero), "1/0");
    }

    #[test]
    fn full_and_canonical_agree() {
        for src in ["a+b*c", "-a^2", "q0/(r*c)*exp(-2*t/(r*c))", "a-(b-c)"] {
            let ast = parse(src).unwrap();
            assert_eq!(
                parse(&print_full(&ast)).unwrap(),
                parse(&print(&ast)).unwrap(),
                "source {src}"
            );
        }
    }

    #[test]
    fn negative_number_nodes_print_reparseably() {
        // A directly constructed negative literal prints as a quotient of
        // sign and digits; reparsing is stable from the first parse onward.
        let ast = Expr::number(ratio(-3, 4));
        let printed = print(&ast);
        assert_eq!(printed, "-3/4");
        let reparsed = parse(&printed).unwrap();
        assert_eq!(reparsed, Expr::number(integer(3)).neg().div(Expr::number(integer(4))));
        assert_eq!(parse(&print(&reparsed)).unwrap(), reparsed);
    }
}
