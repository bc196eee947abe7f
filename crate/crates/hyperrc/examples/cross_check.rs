//! Check the grid model against the sequence model on a corpus of
//! expressions. Decided disagreements are contradictions; everything the
//! sequence heuristics cannot settle is reported, never glossed over.

use hyperrc::exprlang::{grid_bindings, parse, seq_bindings};
use hyperrc::ultraproduct::{cross_check, read_corpus, Agreement};
use hyperrc::SamplingPlan;
use std::path::Path;

fn main() {
    let k = 8;
    let grid = grid_bindings(k);
    let seq = seq_bindings();
    let plan = SamplingPlan::default();

    // A few handpicked expressions, one report line each.
    for text in ["eps", "1/eps", "3 + eps", "exp(-1/eps)", "eps - eps"] {
        let expr = parse(text).unwrap();
        let report = cross_check(&expr, &grid, &seq, &plan);
        println!("{}", report.to_json_line());
    }

    // exp(1/eps^2) grows off the grid's scale lattice: the grid refuses,
    // the sequence model still decides, and the disagreement is a coverage
    // gap rather than a contradiction.
    let expr = parse("exp(1/eps^2)").unwrap();
    let report = cross_check(&expr, &grid, &seq, &plan);
    println!("{}", report.to_json_line());

    // The shipped corpus, summarized the same way the crosscheck
    // subcommand summarizes it.
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/expressions.txt");
    let text = std::fs::read_to_string(&path).expect("corpus file");
    let mut matched = 0usize;
    let mut decided = 0usize;
    let mut undecided = 0usize;
    let mut contradictions = 0usize;
    let lines = read_corpus(&text);
    let total = lines.len();
    for line in &lines {
        let expr = parse(line).expect("corpus parses");
        let report = cross_check(&expr, &grid, &seq, &plan);
        if report.seq.is_decided() {
            decided += 1;
        } else {
            undecided += 1;
        }
        match report.agreement {
            Agreement::Match => matched += 1,
            Agreement::Contradiction => {
                contradictions += 1;
                println!("contradiction: {}", report.to_json_line());
            }
            _ => {}
        }
    }
    println!();
    println!("matched/decided/undecided/total: {matched}/{decided}/{undecided}/{total}");
    println!("contradictions: {contradictions}");
}
