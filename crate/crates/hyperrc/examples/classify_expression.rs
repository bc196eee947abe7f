//! Parse textual expressions, evaluate them on the grid, and classify.
//!
//! The same path drives the `classify` subcommand of the hyperrc binary.

use hyperrc::exprlang::{eval_grid, grid_bindings, parse, print};
use hyperrc::HyperValue;

fn main() {
    let k = 8;
    let samples = [
        "eps",
        "1/eps",
        "3 + eps",
        "eps - eps",
        "exp(-2/eps)/eps",
        "(1+eps)^2",
        "1/(1+eps)",
    ];

    let bindings = grid_bindings(k);
    for text in samples {
        let expr = parse(text).unwrap();
        let value = eval_grid(&expr, &bindings).unwrap();
        println!(
            "{:>18}  ->  {:<28} {}",
            print(&expr),
            value.to_string(),
            value.classify()
        );
    }

    // Symbols beyond eps are bound by the caller. This is the power
    // dissipated in the circuit at t = 1 with r = eps.
    let expr = parse("q0*v0/(r*c) * exp(-4*t/(r*c))").unwrap();
    let mut bindings = grid_bindings(k);
    for (name, value) in [
        ("q0", HyperValue::from_integer(2, k)),
        ("v0", HyperValue::from_integer(2, k)),
        ("c", HyperValue::from_integer(1, k)),
        ("r", HyperValue::eps(k)),
        ("t", HyperValue::from_integer(1, k)),
    ] {
        bindings.insert(name.to_string(), value);
    }
    let power = eval_grid(&expr, &bindings).unwrap();
    println!();
    println!("power at t=1, r=eps: {} ({})", power, power.classify());

    // Parse errors carry byte offsets.
    let err = parse("exp(").unwrap_err();
    println!();
    println!("parse failure demo: {err}");
}
