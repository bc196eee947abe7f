//! Balance the books for the two-capacitor transfer: initial stored energy
//! equals final stored energy plus heat, with a residual that is exactly
//! zero in the grid engine, not merely small.

use hyperrc::circuit::{CircuitParams, Resistance, Time};
use hyperrc::rational::{integer, ratio};
use hyperrc::HyperValue;

fn main() {
    let k = 8;

    // q0 = 2, c = 1, r = eps: transfer through an infinitesimal resistor.
    let params = CircuitParams::new(
        integer(2),
        integer(1),
        Resistance::Hyper(HyperValue::eps(k)),
    )
    .unwrap();
    let circuit = params.grid();

    let audit = circuit.energy_audit(&Time::Infinity).unwrap();
    println!("r = eps, t = inf");
    println!("  initial stored   {}", audit.initial_stored);
    println!("  final stored     {}", audit.final_stored);
    println!("  dissipated       {}", audit.dissipated_total);
    println!("  residual         {}", audit.residual);
    assert!(audit.residual.is_zero() && audit.residual.is_exact());

    // The same audit at a finite time: the books still balance exactly,
    // with exponentially small terms carried, not rounded away.
    let t = HyperValue::from_integer(1, k);
    let audit = circuit.energy_audit(&Time::At(t)).unwrap();
    println!("r = eps, t = 1");
    println!("  final stored     {}", audit.final_stored);
    println!("  dissipated       {}", audit.dissipated_total);
    println!("  residual         {}", audit.residual);
    assert!(audit.residual.is_zero() && audit.residual.is_exact());

    // Total heat is independent of the resistance: any positive r, real or
    // infinitesimal, dissipates q0*v0/4 by t = inf.
    println!();
    println!("dissipated at t = inf, q0 = 2, c = 1:");
    for r in [
        Resistance::Real(integer(1)),
        Resistance::Real(ratio(1, 1000)),
        Resistance::Hyper(HyperValue::eps(k)),
    ] {
        let label = r.to_string();
        let params = CircuitParams::new(integer(2), integer(1), r).unwrap();
        let total = params
            .grid()
            .dissipated(&HyperValue::zero(k), &Time::Infinity)
            .unwrap();
        println!("  r = {label:>6}: {total}");
    }

    // The float engine tells the same story to rounding error.
    let params =
        CircuitParams::new(integer(2), integer(1), Resistance::Real(ratio(1, 100))).unwrap();
    let circuit = params.float().unwrap();
    let audit = circuit.energy_audit(&Time::At(1.0)).unwrap();
    println!();
    println!("float engine, r = 1/100, t = 1");
    println!("  dissipated       {}", audit.dissipated_total);
    println!("  residual         {:e}", audit.residual);
    assert!(audit.residual.abs() < 1e-12);
}
