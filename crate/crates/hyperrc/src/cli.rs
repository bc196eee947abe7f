//! Command-line surface.
//!
//! Subcommands: `classify` an expression under either model, `audit` the
//! circuit's energy books, `table` the waveform classifications, `delta`
//! the normalized-current experiment, `plotdata` decay curves as CSV, and
//! `crosscheck` a corpus of expressions against both models.
//!
//! Exit codes: 0 success, 1 syntax error or unreadable input, 2 invalid
//! parameters or evaluation error, 3 undecided verdict, 4 model
//! contradiction. The truncation order defaults to 8 and can be set by
//! `--k` or the `HYPERRC_TRUNCATION` environment variable. JSON and CSV
//! output is byte-stable for identical invocations.

use crate::circuit::{self, CircuitParams, Resistance, Time, TimeSpec, WaveformRow};
use crate::distribution::DeltaFamily;
use crate::exprlang::{self, Expr};
use crate::rational::{self, Rational};
use crate::transfield::{Coefficient, HyperValue, DEFAULT_TRUNCATION};
use crate::ultraproduct::{
    cross_check, read_corpus, seq_classify, Agreement, SamplingPlan, SeqHyper, Verdict,
};
use clap::{Parser, Subcommand, ValueEnum};
use num::Signed;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "hyperrc",
    version,
    about = "Hyperreal arithmetic and the two-capacitor energy audit"
)]
struct Cli {
    /// Transseries truncation order (default 8, or HYPERRC_TRUNCATION).
    #[arg(long, global = true)]
    k: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an expression as zero, infinitesimal, appreciable, or
    /// unlimited.
    Classify {
        expr: String,
        /// Bind a symbol, e.g. --let r=eps; later bindings may use earlier
        /// ones.
        #[arg(long = "let", value_name = "NAME=EXPR")]
        bindings: Vec<String>,
        #[arg(long, value_enum, default_value_t = Backend::Grid)]
        backend: Backend,
    },
    /// Energy books for the discharge over (0, t).
    Audit {
        #[arg(long)]
        q0: String,
        #[arg(long)]
        c: String,
        /// Resistance: a positive rational, or `eps`.
        #[arg(long)]
        r: String,
        /// End time: a nonnegative rational, or `inf`.
        #[arg(long)]
        t: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Waveform classification table with r = eps.
    Table {
        #[arg(long)]
        q0: String,
        #[arg(long)]
        c: String,
        /// Comma-separated times: `<rational>` or `<rational>*eps` or `eps`.
        #[arg(long)]
        times: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Normalized-current experiment: unit mass, tail masses, r-independent
    /// squared-density energy. JSON output.
    Delta {
        #[arg(long)]
        q0: String,
        #[arg(long)]
        c: String,
        /// Resistance: a positive rational, or `eps`.
        #[arg(long)]
        r: String,
    },
    /// Decay curves over a log-spaced time grid, one CSV column per r.
    Plotdata {
        #[arg(long)]
        q0: String,
        #[arg(long)]
        c: String,
        /// Comma-separated positive rational resistances.
        #[arg(long)]
        r: String,
        #[arg(long, value_enum)]
        quantity: Quantity,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify every corpus expression under both models and compare.
    Crosscheck {
        #[arg(long)]
        corpus: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Grid,
    Seq,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    /// Current through r.
    #[value(name = "i")]
    Current,
    /// Power dissipated in r.
    #[value(name = "p")]
    Power,
    /// Energy dissipated over (0, t).
    #[value(name = "E")]
    Energy,
}

/// Runs the CLI against the process arguments and returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage problems are invalid parameters; --help and --version
            // are successes.
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let k = match resolve_truncation(cli.k) {
        Ok(k) => k,
        Err(msg) => {
            eprintln!("{msg}");
            return 2;
        }
    };
    match cli.command {
        Command::Classify {
            expr,
            bindings,
            backend,
        } => cmd_classify(&expr, &bindings, backend, k),
        Command::Audit { q0, c, r, t, format } => cmd_audit(&q0, &c, &r, &t, format, k),
        Command::Table {
            q0,
            c,
            times,
            format,
        } => cmd_table(&q0, &c, &times, format, k),
        Command::Delta { q0, c, r } => cmd_delta(&q0, &c, &r, k),
        Command::Plotdata {
            q0,
            c,
            r,
            quantity,
            out,
        } => cmd_plotdata(&q0, &c, &r, quantity, &out),
        Command::Crosscheck { corpus } => cmd_crosscheck(&corpus, k),
    }
}

fn resolve_truncation(flag: Option<usize>) -> Result<usize, String> {
    let k = match flag {
        Some(k) => k,
        None => match std::env::var("HYPERRC_TRUNCATION") {
            Ok(text) => text
                .parse::<usize>()
                .map_err(|_| format!("invalid HYPERRC_TRUNCATION value '{text}'"))?,
            Err(_) => DEFAULT_TRUNCATION,
        },
    };
    if k == 0 {
        return Err("truncation order must be at least 1".to_string());
    }
    Ok(k)
}

fn parse_positive_rational(text: &str, what: &str) -> Result<Rational, String> {
    let q = rational::parse(text).ok_or_else(|| format!("invalid {what} '{text}'"))?;
    if !q.is_positive() {
        return Err(format!("{what} must be positive"));
    }
    Ok(q)
}

fn parse_resistance(text: &str, k: usize) -> Result<Resistance, String> {
    if text.trim() == "eps" {
        return Ok(Resistance::Hyper(HyperValue::eps(k)));
    }
    parse_positive_rational(text, "resistance").map(Resistance::Real)
}

fn parse_params(q0: &str, c: &str, r: &str, k: usize) -> Result<CircuitParams, String> {
    let q0 = parse_positive_rational(q0, "charge")?;
    let c = parse_positive_rational(c, "capacitance")?;
    let r = parse_resistance(r, k)?;
    CircuitParams::new(q0, c, r).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- classify

fn cmd_classify(expr_text: &str, binding_args: &[String], backend: Backend, k: usize) -> i32 {
    let expr = match exprlang::parse(expr_text) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("{e}");
            return 1;
        }
    };
    let bindings = match parse_bindings(binding_args, backend, k) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("{msg}");
            return 2;
        }
    };
    println!("expression: {}", exprlang::print(&expr));
    match backend {
        Backend::Grid => match eval_grid_report(&expr, &bindings.grid) {
            Ok(report) => {
                print!("{report}");
                0
            }
            Err(msg) => {
                eprintln!("{msg}");
                2
            }
        },
        Backend::Seq => match bindings.seq_verdict(&expr) {
            Ok(Verdict::Decided(class)) => {
                println!("sequence model: {class}");
                0
            }
            Ok(Verdict::Undecided { reason }) => {
                println!("sequence model: undecided ({reason})");
                3
            }
            Err(msg) => {
                eprintln!("{msg}");
                2
            }
        },
        Backend::Both => {
            let report = cross_check(
                &expr,
                &bindings.grid,
                &bindings.seq,
                &SamplingPlan::default(),
            );
            match &report.grid {
                Ok(class) => {
                    // Rebuild the detailed grid report; classification
                    // already succeeded.
                    if let Ok(text) = eval_grid_report(&expr, &bindings.grid) {
                        print!("{text}");
                    } else {
                        println!("classification: {class}");
                    }
                }
                Err(msg) => println!("grid model: error: {msg}"),
            }
            match &report.seq {
                Verdict::Decided(class) => println!("sequence model: {class}"),
                Verdict::Undecided { reason } => {
                    println!("sequence model: undecided ({reason})")
                }
            }
            println!("agreement: {}", report.agreement);
            match report.agreement {
                Agreement::Match | Agreement::Undecided => 0,
                // The sequence model answered where the grid could not.
                Agreement::CoverageGap if report.seq.is_decided() => 0,
                Agreement::CoverageGap => 2,
                Agreement::Contradiction => 4,
            }
        }
    }
}

struct Bindings {
    grid: HashMap<String, HyperValue>,
    seq: HashMap<String, SeqHyper>,
}

impl Bindings {
    fn seq_verdict(&self, expr: &Expr) -> Result<Verdict<crate::transfield::Classification>, String> {
        let value = exprlang::eval_seq(expr, &self.seq).map_err(|e| e.to_string())?;
        Ok(seq_classify(&value, &SamplingPlan::default()))
    }
}

/// Parses `name=expr` bindings in order; each value expression may use
/// previously bound names (and `eps`).
fn parse_bindings(args: &[String], backend: Backend, k: usize) -> Result<Bindings, String> {
    let mut grid = exprlang::grid_bindings(k);
    let mut seq = exprlang::seq_bindings();
    for arg in args {
        let (name, value_text) = arg
            .split_once('=')
            .ok_or_else(|| format!("invalid binding '{arg}': expected NAME=EXPR"))?;
        let name = name.trim();
        let mut chars = name.chars();
        let head_ok = chars
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
        if !head_ok || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(format!("invalid symbol name '{name}'"));
        }
        let value = exprlang::parse(value_text)
            .map_err(|e| format!("in binding '{name}': {e}"))?;
        if matches!(backend, Backend::Grid | Backend::Both) {
            let v = exprlang::eval_grid(&value, &grid)
                .map_err(|e| format!("in binding '{name}': {e}"))?;
            grid.insert(name.to_string(), v);
        }
        if matches!(backend, Backend::Seq | Backend::Both) {
            let v = exprlang::eval_seq(&value, &seq)
                .map_err(|e| format!("in binding '{name}': {e}"))?;
            seq.insert(name.to_string(), v);
        }
    }
    Ok(Bindings { grid, seq })
}

fn eval_grid_report(expr: &Expr, grid: &HashMap<String, HyperValue>) -> Result<String, String> {
    let value = exprlang::eval_grid(expr, grid).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let _ = writeln!(out, "classification: {}", value.classify());
    match value.leading() {
        Some(term) => {
            let _ = writeln!(out, "leading term: {term}");
        }
        None => {
            let _ = writeln!(out, "leading term: 0");
        }
    }
    if let Ok(st) = value.standard_part() {
        let _ = writeln!(out, "standard part: {st}");
    }
    let _ = writeln!(out, "exact: {}", value.is_exact());
    Ok(out)
}

// ------------------------------------------------------------------- audit

#[derive(Serialize)]
struct AuditJson {
    q0: String,
    c: String,
    r: String,
    t: String,
    initial_stored: String,
    final_stored: String,
    dissipated_total: String,
    residual: String,
}

fn cmd_audit(q0: &str, c: &str, r: &str, t: &str, format: Format, k: usize) -> i32 {
    let params = match parse_params(q0, c, r, k) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("{msg}");
            return 2;
        }
    };
    let time = if t.trim() == "inf" {
        Time::Infinity
    } else {
        match rational::parse(t.trim()) {
            Some(q) if !q.is_negative() => Time::At(HyperValue::constant(q)),
            _ => {
                eprintln!("invalid time '{t}'");
                return 2;
            }
        }
    };
    let audit = match params.grid().energy_audit(&time) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let time_text = match &time {
        Time::Infinity => "inf".to_string(),
        Time::At(v) => v.to_string(),
    };
    match format {
        Format::Table => {
            println!("q0 = {}, c = {}, r = {}, t = {}", params.q0(), params.c(), params.r(), time_text);
            println!("initial stored:   {}", human_value(&audit.initial_stored));
            println!("final stored:     {}", human_value(&audit.final_stored));
            println!("dissipated total: {}", human_value(&audit.dissipated_total));
            println!("residual:         {}", human_value(&audit.residual));
        }
        Format::Json => {
            let row = AuditJson {
                q0: params.q0().to_string(),
                c: params.c().to_string(),
                r: params.r().to_string(),
                t: time_text,
                initial_stored: audit.initial_stored.to_string(),
                final_stored: audit.final_stored.to_string(),
                dissipated_total: audit.dissipated_total.to_string(),
                residual: audit.residual.to_string(),
            };
            println!("{}", serde_json::to_string(&row).expect("serializes"));
        }
        Format::Csv => {
            println!("initial_stored,final_stored,dissipated_total,residual");
            println!(
                "{},{},{},{}",
                audit.initial_stored, audit.final_stored, audit.dissipated_total, audit.residual
            );
        }
    }
    0
}

/// Exact form, with a decimal gloss for non-integer rational constants.
fn human_value(v: &HyperValue) -> String {
    if let Some(term) = v.terms().first() {
        if v.terms().len() == 1 && term.monomial.is_one() {
            if let Some(q) = term.coeff.as_exact() {
                if !q.is_integer() {
                    return format!("{v} ({})", rational::to_f64(q));
                }
            }
        }
    }
    v.to_string()
}

// ------------------------------------------------------------------- table

#[derive(Serialize)]
struct TableRowJson {
    t_spec: String,
    class_i: Option<String>,
    class_p: Option<String>,
    st_i: Option<String>,
    st_p: Option<String>,
    #[serde(rename = "E_0_t")]
    e_head: Option<String>,
    #[serde(rename = "E_t_inf")]
    e_tail: Option<String>,
    error: Option<String>,
}

/// One table row: either a classified waveform at a parsed time spec, or
/// the error that kept the row from being produced. Bad rows never abort
/// the table; they carry their failure in the error column.
struct TableEntry {
    spec_text: String,
    row: Result<WaveformRow, String>,
}

fn table_entry_json(entry: &TableEntry) -> TableRowJson {
    match &entry.row {
        Ok(row) => TableRowJson {
            t_spec: entry.spec_text.clone(),
            class_i: Some(row.current_class.to_string()),
            class_p: Some(row.power_class.to_string()),
            st_i: row.st_current.as_ref().map(Coefficient::to_string),
            st_p: row.st_power.as_ref().map(Coefficient::to_string),
            e_head: Some(row.dissipated_head.to_string()),
            e_tail: Some(row.dissipated_tail.to_string()),
            error: None,
        },
        Err(e) => TableRowJson {
            t_spec: entry.spec_text.clone(),
            class_i: None,
            class_p: None,
            st_i: None,
            st_p: None,
            e_head: None,
            e_tail: None,
            error: Some(e.clone()),
        },
    }
}

fn cmd_table(q0: &str, c: &str, times: &str, format: Format, k: usize) -> i32 {
    let params = match parse_params(q0, c, "eps", k) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("{msg}");
            return 2;
        }
    };
    if times.trim().is_empty() {
        eprintln!("no times given");
        return 2;
    }
    let entries: Vec<TableEntry> = times
        .split(',')
        .map(|part| match TimeSpec::from_str(part) {
            Ok(spec) => {
                let outcome = circuit::classify_waveforms(&params, &[spec], k)
                    .pop()
                    .expect("one spec yields one outcome");
                TableEntry {
                    spec_text: outcome.spec.to_string(),
                    row: outcome.result.map_err(|e| e.to_string()),
                }
            }
            Err(msg) => TableEntry {
                spec_text: part.trim().to_string(),
                row: Err(msg),
            },
        })
        .collect();
    let any_ok = entries.iter().any(|e| e.row.is_ok());
    match format {
        Format::Table => {
            for entry in &entries {
                match &entry.row {
                    Ok(row) => {
                        let st = |c: &Option<Coefficient>| match c {
                            Some(c) => format!(" (st {c})"),
                            None => String::new(),
                        };
                        println!(
                            "t={}: current {}{}, power {}{}, E(0,t) = {}, E(t,inf) = {}",
                            entry.spec_text,
                            row.current_class,
                            st(&row.st_current),
                            row.power_class,
                            st(&row.st_power),
                            row.dissipated_head,
                            row.dissipated_tail,
                        );
                    }
                    Err(e) => println!("t={}: error: {e}", entry.spec_text),
                }
            }
        }
        Format::Json => {
            let body: Vec<TableRowJson> = entries.iter().map(table_entry_json).collect();
            println!("{}", serde_json::to_string(&body).expect("serializes"));
        }
        Format::Csv => {
            println!("t_spec,class_i,class_p,st_i,st_p,E_0_t,E_t_inf,error");
            for entry in &entries {
                let row = table_entry_json(entry);
                let cell = |o: &Option<String>| o.clone().unwrap_or_default();
                println!(
                    "{},{},{},{},{},{},{},{}",
                    row.t_spec,
                    cell(&row.class_i),
                    cell(&row.class_p),
                    cell(&row.st_i),
                    cell(&row.st_p),
                    cell(&row.e_head),
                    cell(&row.e_tail),
                    cell(&row.error),
                );
            }
        }
    }
    if any_ok {
        0
    } else {
        2
    }
}

// ------------------------------------------------------------------- delta

#[derive(Serialize)]
struct TailRow {
    #[serde(rename = "T")]
    t: String,
    value: String,
    classification: String,
}

#[derive(Serialize)]
struct DeltaReport {
    q0: String,
    c: String,
    r: String,
    delta_integral: String,
    tail_mass: Vec<TailRow>,
    delta_squared_energy: String,
}

fn cmd_delta(q0: &str, c: &str, r: &str, k: usize) -> i32 {
    let params = match parse_params(q0, c, r, k) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("{msg}");
            return 2;
        }
    };
    let family = DeltaFamily::grid(&params);
    let run = || -> Result<DeltaReport, circuit::Error> {
        let integral = family.integral()?;
        let energy = family.squared_energy()?;
        let mut tails = Vec::new();
        for (num, den) in [(1i64, 1000i64), (1, 100), (1, 10), (1, 1), (10, 1)] {
            let t = rational::ratio(num, den);
            let mass = family.tail_mass(&HyperValue::constant(t.clone()))?;
            tails.push(TailRow {
                t: t.to_string(),
                value: mass.to_string(),
                classification: mass.classify().to_string(),
            });
        }
        Ok(DeltaReport {
            q0: params.q0().to_string(),
            c: params.c().to_string(),
            r: params.r().to_string(),
            delta_integral: integral.to_string(),
            tail_mass: tails,
            delta_squared_energy: energy.to_string(),
        })
    };
    match run() {
        Ok(report) => {
            println!("{}", serde_json::to_string(&report).expect("serializes"));
            0
        }
        Err(e) => {
            eprintln!("{e}");
            2
        }
    }
}

// ---------------------------------------------------------------- plotdata

fn cmd_plotdata(q0: &str, c: &str, r_list: &str, quantity: Quantity, out: &PathBuf) -> i32 {
    let mut resistances = Vec::new();
    for part in r_list.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        match parse_positive_rational(part, "resistance") {
            Ok(q) => resistances.push(q),
            Err(msg) => {
                eprintln!("{msg}");
                return 2;
            }
        }
    }
    if resistances.is_empty() {
        eprintln!("no resistances given");
        return 2;
    }
    let mut circuits = Vec::new();
    for r in &resistances {
        let params = match parse_params(q0, c, &r.to_string(), DEFAULT_TRUNCATION) {
            Ok(p) => p,
            Err(msg) => {
                eprintln!("{msg}");
                return 2;
            }
        };
        match params.float() {
            Ok(circuit) => circuits.push(circuit),
            Err(e) => {
                eprintln!("{e}");
                return 2;
            }
        }
    }

    // One shared grid: t = 0, then points log-spaced between the smallest
    // rc*1e-3 and the largest rc*10.
    let rcs: Vec<f64> = circuits.iter().map(|c| *c.rc()).collect();
    let lo = rcs.iter().cloned().fold(f64::MAX, f64::min) * 1e-3;
    let hi = rcs.iter().cloned().fold(f64::MIN, f64::max) * 10.0;
    const POINTS: usize = 200;
    let mut grid = vec![0.0];
    for j in 0..(POINTS - 1) {
        let frac = j as f64 / (POINTS - 2) as f64;
        grid.push(lo * (hi / lo).powf(frac));
    }

    let mut csv = String::new();
    csv.push('t');
    for r in &resistances {
        let _ = write!(csv, ",r={r}");
    }
    csv.push('\n');
    for &t in &grid {
        let _ = write!(csv, "{t}");
        for circuit in &circuits {
            let value = match quantity {
                Quantity::Current => circuit.current(&t),
                Quantity::Power => circuit.power(&t),
                Quantity::Energy => circuit
                    .decay_at(&t)
                    .and_then(|x| circuit.dissipated_between_decays(&1.0, &x)),
            };
            match value {
                Ok(v) => {
                    let _ = write!(csv, ",{v}");
                }
                Err(e) => {
                    eprintln!("{e}");
                    return 2;
                }
            }
        }
        csv.push('\n');
    }
    if let Err(e) = std::fs::write(out, csv) {
        eprintln!("cannot write {}: {e}", out.display());
        return 1;
    }
    0
}

// --------------------------------------------------------------- crosscheck

fn cmd_crosscheck(corpus_path: &PathBuf, k: usize) -> i32 {
    let text = match std::fs::read_to_string(corpus_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", corpus_path.display());
            return 1;
        }
    };
    let grid = exprlang::grid_bindings(k);
    let seq = exprlang::seq_bindings();
    let plan = SamplingPlan::default();
    let mut matched = 0usize;
    let mut decided = 0usize;
    let mut undecided = 0usize;
    let mut contradictions = 0usize;
    let mut total = 0usize;
    for line in read_corpus(&text) {
        total += 1;
        match exprlang::parse(&line) {
            Ok(expr) => {
                let report = cross_check(&expr, &grid, &seq, &plan);
                if report.seq.is_decided() {
                    decided += 1;
                }
                match report.agreement {
                    Agreement::Match => matched += 1,
                    Agreement::Undecided => undecided += 1,
                    Agreement::CoverageGap => {}
                    Agreement::Contradiction => contradictions += 1,
                }
                println!("{}", report.to_json_line());
            }
            Err(e) => {
                // A malformed corpus line is its own kind of coverage gap;
                // report it without aborting the run.
                #[derive(Serialize)]
                struct GapRow<'a> {
                    expr: &'a str,
                    grid: String,
                    seq: String,
                    #[serde(rename = "match")]
                    agreement: &'a str,
                }
                let row = GapRow {
                    expr: &line,
                    grid: format!("error: {e}"),
                    seq: format!("error: {e}"),
                    agreement: "coverage-gap",
                };
                println!("{}", serde_json::to_string(&row).expect("serializes"));
            }
        }
    }
    println!("matched/decided/undecided/total: {matched}/{decided}/{undecided}/{total}");
    if contradictions > 0 {
        4
    } else {
        0
    }
}
