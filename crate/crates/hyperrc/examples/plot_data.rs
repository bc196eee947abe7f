//! Numeric curves for plotting: instantaneous power and accumulated energy
//! for a family of real resistances on a shared log-spaced time grid. The
//! same generator backs the plotdata subcommand.

use hyperrc::circuit::{CircuitParams, Resistance};
use hyperrc::rational::{integer, ratio, to_f64};

fn main() {
    let rs = [integer(1), ratio(1, 10)];
    let circuits: Vec<_> = rs
        .iter()
        .map(|r| {
            CircuitParams::new(integer(2), integer(1), Resistance::Real(r.clone()))
                .unwrap()
                .float()
                .unwrap()
        })
        .collect();

    // Shared window spanning every time constant: three decades below the
    // smallest rc up to one decade above the largest.
    let rcs: Vec<f64> = circuits.iter().map(|c| *c.rc()).collect();
    let lo = rcs.iter().cloned().fold(f64::INFINITY, f64::min) * 1e-3;
    let hi = rcs.iter().cloned().fold(0.0f64, f64::max) * 10.0;

    let points = 12usize;
    let header: Vec<String> = std::iter::once("t".to_string())
        .chain(rs.iter().map(|r| format!("p_r={}", to_f64(r))))
        .collect();
    println!("{}", header.join(","));
    for j in 0..points {
        // First row is t = 0 so the peak is visible; the rest are log-spaced.
        let t = if j == 0 {
            0.0
        } else {
            let frac = (j - 1) as f64 / (points - 2) as f64;
            lo * (hi / lo).powf(frac)
        };
        let mut row = vec![format!("{t:.6e}")];
        for circuit in &circuits {
            row.push(format!("{:.6e}", circuit.power(&t).unwrap()));
        }
        println!("{}", row.join(","));
    }

    // Halving r doubles nothing and tenthing r tenfolds the peak: the spike
    // narrows exactly as fast as it grows.
    println!();
    for circuit in &circuits {
        let peak = circuit.power(&0.0).unwrap();
        let rc = *circuit.rc();
        let energy = circuit
            .dissipated_between_decays(&1.0, &circuit.decay_at(&(20.0 * rc)).unwrap())
            .unwrap();
        println!("rc = {rc:>4}: peak power {peak:>5}, energy through 20rc = {energy:.9}");
    }
}
