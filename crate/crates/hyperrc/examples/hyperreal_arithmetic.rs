//! Tour of the grid transseries model: exact arithmetic with eps, series
//! inverses, exponentials, classification, and standard parts.

use hyperrc::{Classification, HyperValue};

fn show(label: &str, v: &HyperValue) {
    println!("{label:>24} = {v}");
    println!("{:>24}   class {}, exact {}", "", v.classify(), v.is_exact());
}

fn main() {
    let k = 8;
    let eps = HyperValue::eps(k);
    let one = HyperValue::one(k);

    show("eps", &eps);
    show("1 + eps", &(&one + &eps));
    show("eps * eps", &(&eps * &eps));

    // Exact cancellation gives a true zero, not a small residue.
    let cancelled = &(&one + &eps) - &(&one + &eps);
    show("(1+eps) - (1+eps)", &cancelled);
    assert_eq!(cancelled.classify(), Classification::Zero);

    // Inverting a sum needs a geometric series; the truncation order caps
    // how much of it is kept and the exact flag records the cut.
    let inv = (&one + &eps).inv().unwrap();
    show("1/(1+eps)", &inv);
    let residual = &(&(&one + &eps) * &inv) - &one;
    show("(1+eps)*inv - 1", &residual);

    // exp splits its argument into unlimited, constant, and infinitesimal
    // parts; the unlimited part must be a pure 1/eps term.
    let decay = (-&one).div(&eps).unwrap().exp().unwrap();
    show("exp(-1/eps)", &decay);

    let taylor = eps.exp().unwrap();
    show("exp(eps)", &taylor);

    // Standard parts strip infinitesimal dust from limited values.
    let nearly_two = &HyperValue::from_integer(2, k) + &(&eps * &eps);
    println!(
        "{:>24}   st = {}",
        nearly_two.to_string(),
        nearly_two.standard_part().unwrap()
    );

    // Comparison is decided by the leading term of the difference.
    let head = &one - &decay;
    println!(
        "{:>24}   1 - exp(-1/eps) vs 1: {}",
        head.to_string(),
        head.compare(&one)
    );
}
