//! Classify the discharge current and power at real times and at times
//! inside the halo of zero. At any appreciable time the waveforms are
//! infinitesimal; at t = a*eps they are unlimited, yet the energy they
//! deliver stays bounded.

use hyperrc::circuit::{classify_waveforms, CircuitParams, Resistance, TimeSpec};
use hyperrc::rational::{integer, ratio};
use hyperrc::HyperValue;

fn main() {
    let k = 8;
    let params = CircuitParams::new(
        integer(2),
        integer(1),
        Resistance::Hyper(HyperValue::eps(k)),
    )
    .unwrap();

    let specs = [
        TimeSpec::Real(ratio(1, 10)),
        TimeSpec::Real(integer(1)),
        TimeSpec::Real(integer(10)),
        TimeSpec::HaloMultiple(ratio(1, 2)),
        TimeSpec::HaloMultiple(ratio(1, 4)),
        "2*eps".parse().unwrap(),
    ];

    for outcome in classify_waveforms(&params, &specs, k) {
        let row = match outcome.result {
            Ok(row) => row,
            Err(e) => {
                println!("t = {}: {e}", outcome.spec);
                continue;
            }
        };
        println!("t = {}", outcome.spec);
        println!("  current  {:<18} {}", row.current_class.to_string(), row.current);
        println!("  power    {:<18} {}", row.power_class.to_string(), row.power);
        if let Some(st) = &row.st_power {
            println!("  st(power) = {st}");
        }
        println!("  energy so far    {}", row.dissipated_head);
        println!("  energy to come   {}", row.dissipated_tail);
    }

    // The halo is where the action is: by t = eps/2 the circuit has already
    // dissipated an appreciable share of the total.
    let outcome = &classify_waveforms(&params, &[TimeSpec::HaloMultiple(ratio(1, 2))], k)[0];
    let row = outcome.result.as_ref().unwrap();
    let share = row.dissipated_head.standard_part().unwrap();
    println!();
    println!(
        "share of the total heat released by t = eps/2: {}",
        share.to_f64()
    );
}
