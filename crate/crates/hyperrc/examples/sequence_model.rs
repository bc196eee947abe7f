//! The sequence model: hyperreals as real sequences, classified from
//! sampled evidence with honest refusals.

use hyperrc::ultraproduct::{eventual_sign, seq_classify};
use hyperrc::{SamplingPlan, SeqHyper, Verdict};

fn report<T: std::fmt::Debug>(label: &str, verdict: &Verdict<T>) {
    match verdict {
        Verdict::Decided(v) => println!("{label:>28}: {v:?}"),
        Verdict::Undecided { reason } => println!("{label:>28}: undecided ({reason})"),
    }
}

fn main() {
    let plan = SamplingPlan::default();
    println!(
        "sampling at 2^k for k=4..=26, stability window {}",
        plan.stability_window()
    );
    println!();

    let eps = SeqHyper::reciprocal();
    report("1/(n+1)", &seq_classify(&eps, &plan));
    report("(n+1)^2", &seq_classify(&SeqHyper::power(2.0), &plan));
    report("constant 3", &seq_classify(&SeqHyper::constant(3.0), &plan));

    // Decay fast enough to underflow the float range: still recognized,
    // because the trailing zeros follow a certified decay run.
    let gaussian_tail = SeqHyper::constant(-1.0).div(&eps).exp();
    report("exp(-(n+1))", &seq_classify(&gaussian_tail, &plan));

    // Growth that overflows is recognized the same way.
    let blowup = SeqHyper::constant(1.0).div(&eps).exp();
    report("exp(n+1)", &seq_classify(&blowup, &plan));

    // A drift too slow to certify stays undecided rather than guessed.
    let drift = SeqHyper::constant(1e-6).add(&eps);
    report("1e-6 + 1/(n+1)", &seq_classify(&drift, &plan));

    println!();
    report("sign of 1/(n+1)", &eventual_sign(&eps, &plan));
    report("sign of 0", &eventual_sign(&SeqHyper::constant(0.0), &plan));

    // The default plan samples only even indices; parity questions need a
    // plan that sees both parities.
    let alternating = SeqHyper::from_fn("(-1)^n", |n| if n % 2 == 0 { 1.0 } else { -1.0 });
    let dense = SamplingPlan::new((100..140).collect(), 6);
    report("sign of (-1)^n", &eventual_sign(&alternating, &dense));
}
