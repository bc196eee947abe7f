//! The normalized discharge current as a delta function. As r shrinks the
//! current spike narrows and grows; scaled by the transferred charge it
//! integrates to exactly 1 for every positive r, including r = eps, while
//! the energy functional r*integral(i^2) stays pinned at q0*v0/4.

use hyperrc::circuit::{CircuitParams, Resistance};
use hyperrc::distribution::DeltaFamily;
use hyperrc::rational::{integer, ratio};
use hyperrc::HyperValue;

fn main() {
    let k = 8;

    println!("q0 = 2, c = 1: integral and energy of the normalized spike");
    for r in [
        Resistance::Real(integer(1)),
        Resistance::Real(ratio(1, 1000)),
        Resistance::Hyper(HyperValue::eps(k)),
    ] {
        let label = r.to_string();
        let params = CircuitParams::new(integer(2), integer(1), r).unwrap();
        let family = DeltaFamily::<HyperValue>::grid(&params);
        let integral = family.integral().unwrap();
        let energy = family.squared_energy().unwrap();
        println!("  r = {label:>6}: integral = {integral}, r*integral(i^2) = {energy}");
        assert!(integral.is_exact() && energy.is_exact());
    }

    // For r = eps the spike has already passed by any real T > 0: the mass
    // beyond T is a positive infinitesimal, and T -> 0 recovers everything.
    let params = CircuitParams::new(
        integer(2),
        integer(1),
        Resistance::Hyper(HyperValue::eps(k)),
    )
    .unwrap();
    let family = DeltaFamily::<HyperValue>::grid(&params);
    println!();
    for t in [integer(1), ratio(1, 10), ratio(1, 100)] {
        let tail = family.tail_mass(&HyperValue::constant(t.clone())).unwrap();
        println!("  mass beyond T = {:>5}: {} ({})", t, tail, tail.classify());
    }
    let all = family.tail_mass(&HyperValue::zero(k)).unwrap();
    println!("  mass beyond T = 0: {all}");

    // Height at the origin scales like 1/rc while the area is fixed.
    let density0 = family.density(&HyperValue::zero(k)).unwrap();
    println!();
    println!("  spike height at t = 0, r = eps: {density0}");

    // Float engine at small real r for comparison.
    let params =
        CircuitParams::new(integer(2), integer(1), Resistance::Real(ratio(1, 1000000))).unwrap();
    let family = DeltaFamily::<f64>::float(&params).unwrap();
    println!();
    println!("float engine, r = 1e-6:");
    println!("  integral        {}", family.integral().unwrap());
    println!("  r*integral(i^2) {}", family.squared_energy().unwrap());
}
