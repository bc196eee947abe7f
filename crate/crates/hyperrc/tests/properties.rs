//! Randomized laws. Each test states an algebraic or numeric property and
//! lets proptest hunt for a counterexample: field structure of the grid
//! model, order against a float oracle, printer stability, circuit
//! identities, and the sequence model's indifference to finite prefixes.

use hyperrc::circuit::{CircuitParams, Resistance, Time};
use hyperrc::exprlang::{parse, print, print_full, Expr};
use hyperrc::rational::{integer, ratio, to_f64, Rational};
use hyperrc::transfield::{Coefficient, Monomial};
use hyperrc::ultraproduct::seq_classify;
use hyperrc::{Classification, Comparison, HyperValue, SamplingPlan, SeqHyper, Sign};
use proptest::prelude::*;

const K: usize = 8;

fn exact(c: Coefficient) -> Rational {
    match c {
        Coefficient::Exact(q) => q,
        Coefficient::Approx(x) => panic!("expected exact coefficient, got {x}"),
    }
}

/// Nonzero coefficients with magnitude in [1/3, 5].
fn arb_coeff() -> impl Strategy<Value = Rational> {
    (1i64..=5, 1i64..=3, any::<bool>()).prop_map(|(n, d, neg)| ratio(if neg { -n } else { n }, d))
}

fn value_from(pairs: Vec<((Rational, Rational), Rational)>) -> HyperValue {
    HyperValue::from_terms(
        pairs
            .into_iter()
            .map(|((a, b), c)| (Monomial::new(a, b), Coefficient::Exact(c)))
            .collect(),
        K,
    )
}

/// One or two terms, integer exponent pools small enough that sums and
/// products of three such values never exceed the truncation order. Every
/// operation below therefore stays term-exact.
fn arb_exact_value() -> impl Strategy<Value = HyperValue> {
    proptest::collection::vec(((-2i64..=2, -1i64..=1), arb_coeff()), 1..=2).prop_map(|pairs| {
        value_from(
            pairs
                .into_iter()
                .map(|((a, b), c)| ((integer(a), integer(b)), c))
                .collect(),
        )
    })
}

// ----------------------------------------------------------- field algebra

proptest! {
    #[test]
    fn addition_and_multiplication_form_a_commutative_ring(
        a in arb_exact_value(),
        b in arb_exact_value(),
        c in arb_exact_value(),
    ) {
        let zero = HyperValue::zero(K);
        let one = HyperValue::one(K);
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&zero), a.clone());
        prop_assert_eq!(a.mul(&one), a.clone());
        prop_assert!(a.sub(&a).is_zero());
        prop_assert!(a.add(&b).is_exact());
        prop_assert!(a.mul(&b).is_exact());
    }

    #[test]
    fn single_term_values_invert_exactly(
        a in -2i64..=2,
        b in -1i64..=1,
        c in arb_coeff(),
    ) {
        let v = value_from(vec![((integer(a), integer(b)), c)]);
        let inv = v.inv().unwrap();
        prop_assert!(inv.is_exact());
        prop_assert_eq!(v.mul(&inv), HyperValue::one(K));
    }

    #[test]
    fn comparison_is_reflexive_antisymmetric_and_transitive(
        a in arb_exact_value(),
        b in arb_exact_value(),
        c in arb_exact_value(),
    ) {
        prop_assert_eq!(a.compare(&a), Comparison::Equal);
        let flipped = match a.compare(&b) {
            Comparison::Less => Comparison::Greater,
            Comparison::Greater => Comparison::Less,
            Comparison::Equal => Comparison::Equal,
            u @ Comparison::Undecidable { .. } => {
                return Err(TestCaseError::fail(format!("exact compare undecidable: {u:?}")));
            }
        };
        prop_assert_eq!(b.compare(&a), flipped);
        if a.compare(&b) == Comparison::Less && b.compare(&c) == Comparison::Less {
            prop_assert_eq!(a.compare(&c), Comparison::Less);
        }
    }
}

// ------------------------------------------------------- order vs. floats

proptest! {
    /// Pure powers of eps, half-integer exponents allowed. At eps = 1e-5
    /// the trailing terms of any difference sum to under 5% of its leading
    /// term, so the float sign is the transseries sign.
    #[test]
    fn order_matches_float_evaluation_for_power_values(
        a in proptest::collection::vec((-4i64..=4, arb_coeff()), 1..=2),
        b in proptest::collection::vec((-4i64..=4, arb_coeff()), 1..=2),
    ) {
        let build = |pairs: Vec<(i64, Rational)>| {
            value_from(
                pairs
                    .into_iter()
                    .map(|(n, c)| ((ratio(n, 2), integer(0)), c))
                    .collect(),
            )
        };
        let (a, b) = (build(a), build(b));
        let diff = a.sub(&b).eval_f64(1e-5);
        match a.compare(&b) {
            Comparison::Less => prop_assert!(diff < 0.0, "diff {diff}"),
            Comparison::Greater => prop_assert!(diff > 0.0, "diff {diff}"),
            Comparison::Equal => prop_assert_eq!(diff, 0.0),
            u @ Comparison::Undecidable { .. } => {
                return Err(TestCaseError::fail(format!("{u:?}")));
            }
        }
    }

    /// Exponential scales included, half-integer rates. At eps = 0.01 the
    /// slots are e^50 apart while integer eps powers can only claw back
    /// 1e8, so again the float sign is decisive.
    #[test]
    fn order_matches_float_evaluation_across_exponential_scales(
        a in proptest::collection::vec(((-2i64..=2, -2i64..=2), arb_coeff()), 1..=2),
        b in proptest::collection::vec(((-2i64..=2, -2i64..=2), arb_coeff()), 1..=2),
    ) {
        let build = |pairs: Vec<((i64, i64), Rational)>| {
            value_from(
                pairs
                    .into_iter()
                    .map(|((n, m), c)| ((integer(n), ratio(m, 2)), c))
                    .collect(),
            )
        };
        let (a, b) = (build(a), build(b));
        let diff = a.sub(&b).eval_f64(0.01);
        prop_assert!(diff.is_finite());
        match a.compare(&b) {
            Comparison::Less => prop_assert!(diff < 0.0, "diff {diff}"),
            Comparison::Greater => prop_assert!(diff > 0.0, "diff {diff}"),
            Comparison::Equal => prop_assert_eq!(diff, 0.0),
            u @ Comparison::Undecidable { .. } => {
                return Err(TestCaseError::fail(format!("{u:?}")));
            }
        }
    }
}

// ------------------------------------------------- standard part and halo

proptest! {
    /// On limited values the standard part is a ring homomorphism onto the
    /// rationals, and every limited value sits in the halo of its own
    /// standard part.
    #[test]
    fn standard_part_is_a_ring_homomorphism_on_limited_values(
        a in proptest::collection::vec(((0i64..=2, -1i64..=0), arb_coeff()), 1..=2),
        b in proptest::collection::vec(((0i64..=2, -1i64..=0), arb_coeff()), 1..=2),
    ) {
        let build = |pairs: Vec<((i64, i64), Rational)>| {
            value_from(
                pairs
                    .into_iter()
                    .map(|((n, m), c)| ((integer(n), integer(m)), c))
                    .collect(),
            )
        };
        let (a, b) = (build(a), build(b));
        let (sa, sb) = (
            exact(a.standard_part().unwrap()),
            exact(b.standard_part().unwrap()),
        );
        prop_assert_eq!(exact(a.add(&b).standard_part().unwrap()), &sa + &sb);
        prop_assert_eq!(exact(a.mul(&b).standard_part().unwrap()), &sa * &sb);
        prop_assert!(a.is_in_halo(&sa));
    }

    /// An unlimited value times an appreciable one is unlimited, with the
    /// product of the signs.
    #[test]
    fn unlimited_times_appreciable_is_unlimited(
        k in 1i64..=2,
        cu in arb_coeff(),
        ca in arb_coeff(),
        tail in proptest::option::of(arb_coeff()),
    ) {
        let u = value_from(vec![((integer(-k), integer(0)), cu.clone())]);
        let mut pairs = vec![((integer(0), integer(0)), ca.clone())];
        if let Some(t) = tail {
            pairs.push(((integer(1), integer(0)), t));
        }
        let a = value_from(pairs);
        prop_assert_eq!(a.classify(), Classification::Appreciable(sign_of(&ca)));
        let expected = if (cu < integer(0)) == (ca < integer(0)) {
            Sign::Positive
        } else {
            Sign::Negative
        };
        prop_assert_eq!(u.mul(&a).classify(), Classification::Unlimited(expected));
    }
}

fn sign_of(q: &Rational) -> Sign {
    if *q < integer(0) {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

// ------------------------------------------------------------ exponential

proptest! {
    /// exp on infinitesimal arguments agrees with the float exponential
    /// and turns sums into products.
    #[test]
    fn exp_matches_floats_and_is_a_homomorphism_on_infinitesimals(
        a in proptest::collection::vec((1i64..=2, arb_coeff()), 1..=2),
        b in proptest::collection::vec((1i64..=2, arb_coeff()), 1..=2),
    ) {
        let build = |pairs: Vec<(i64, Rational)>| {
            value_from(
                pairs
                    .into_iter()
                    .map(|(n, c)| ((integer(n), integer(0)), c))
                    .collect(),
            )
        };
        let (a, b) = (build(a), build(b));
        let eps = 0.05;
        let ea = a.exp().unwrap().eval_f64(eps);
        prop_assert!((ea - a.eval_f64(eps).exp()).abs() <= 1e-6 * ea.abs());
        let eab = a.add(&b).exp().unwrap().eval_f64(eps);
        let product = ea * b.exp().unwrap().eval_f64(eps);
        prop_assert!((eab - product).abs() <= 1e-6 * product.abs());
    }
}

// ---------------------------------------------------------------- printer

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..=9, 1i64..=9).prop_map(|(n, d)| Expr::number(ratio(n, d))),
        (-9i64..=9).prop_map(|n| Expr::number(integer(n))),
        prop_oneof![Just("x"), Just("eps"), Just("q0"), Just("t")].prop_map(Expr::symbol),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sub(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.div(b)),
            inner.clone().prop_map(|a| a.neg()),
            (inner.clone(), -3i32..=3).prop_map(|(a, n)| a.pow(n)),
            inner.prop_map(|a| a.exp()),
        ]
    })
}

proptest! {
    /// The canonical printer reaches a fixpoint after one parse, and the
    /// fully parenthesized printer denotes the same expression.
    #[test]
    fn printing_is_idempotent_and_both_printers_agree(e in arb_expr()) {
        let printed = print(&e);
        let reparsed = parse(&printed)
            .map_err(|err| TestCaseError::fail(format!("'{printed}': {err}")))?;
        prop_assert_eq!(print(&reparsed), printed.clone());

        let full = print_full(&e);
        let from_full = parse(&full)
            .map_err(|err| TestCaseError::fail(format!("'{full}': {err}")))?;
        prop_assert_eq!(print(&from_full), printed);
    }
}

// ---------------------------------------------------------------- circuit

proptest! {
    /// Stored plus dissipated energy is the initial budget, exactly, for
    /// any rational parameters and any symbolic decay factor.
    #[test]
    fn energy_books_balance_exactly_for_rational_parameters(
        q0 in (1i64..=9, 1i64..=9),
        c in (1i64..=9, 1i64..=9),
        r in (1i64..=9, 1i64..=9),
    ) {
        let (q0, c, r) = (ratio(q0.0, q0.1), ratio(c.0, c.1), ratio(r.0, r.1));
        let params = CircuitParams::new(q0.clone(), c, Resistance::Real(r)).unwrap();
        let circuit = params.grid();
        let x = HyperValue::eps(K);
        let total = circuit
            .stored_from_decay(&x)
            .unwrap()
            .add(&circuit.dissipated_between_decays(&HyperValue::one(K), &x).unwrap());
        let budget = HyperValue::constant(q0 * params.v0() / integer(2));
        prop_assert!(total.is_exact());
        prop_assert_eq!(total.compare(&budget), Comparison::Equal);
    }

    /// The float engine keeps the same books to machine precision at
    /// arbitrary times.
    #[test]
    fn float_energy_books_balance_to_machine_precision(
        q0 in 1i64..=40,
        c in 1i64..=40,
        r in 1i64..=400,
        t_frac in 0.0f64..5.0,
    ) {
        let params = CircuitParams::new(
            ratio(q0, 8),
            ratio(c, 8),
            Resistance::Real(ratio(r, 40)),
        )
        .unwrap();
        let circuit = params.float().unwrap();
        let audit = circuit.energy_audit(&Time::At(t_frac * circuit.rc())).unwrap();
        prop_assert!(audit.residual.abs() <= 1e-12 * audit.initial_stored);
    }

    /// The total dissipated energy is q0*v0/4 no matter the resistance,
    /// and the share spent by time alpha*rc is 1 - e^(-4 alpha).
    #[test]
    fn dissipation_total_ignores_resistance_and_concentrates_near_zero(
        q0 in (1i64..=9, 1i64..=9),
        c in (1i64..=9, 1i64..=9),
        r1 in (1i64..=9, 1i64..=9),
        r2 in (1i64..=9, 1i64..=9),
        alpha in 1i64..=6,
    ) {
        let (q0, c) = (ratio(q0.0, q0.1), ratio(c.0, c.1));
        let target = HyperValue::constant(&q0 * &q0 / (&c * integer(4)));
        for r in [ratio(r1.0, r1.1), ratio(r2.0, r2.1)] {
            let params =
                CircuitParams::new(q0.clone(), c.clone(), Resistance::Real(r)).unwrap();
            let audit = params.grid().energy_audit(&Time::Infinity).unwrap();
            prop_assert_eq!(audit.dissipated_total.compare(&target), Comparison::Equal);

            let circuit = params.float().unwrap();
            let head = circuit
                .dissipated(&0.0, &Time::At(alpha as f64 * circuit.rc()))
                .unwrap();
            let total = circuit.dissipated(&0.0, &Time::Infinity).unwrap();
            let share = 1.0 - (-4.0 * alpha as f64).exp();
            prop_assert!((head / total - share).abs() <= 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]
    /// Closed-form dissipation agrees with brute-force quadrature of i^2 r.
    #[test]
    fn quadrature_confirms_the_closed_form_dissipation(
        r in (1i64..=8, 1i64..=2),
        q0 in 1i64..=4,
    ) {
        let params = CircuitParams::new(
            integer(q0),
            integer(1),
            Resistance::Real(ratio(r.0, r.1)),
        )
        .unwrap();
        let circuit = params.float().unwrap();
        let t_end = 20.0 * circuit.rc();
        let numeric = circuit.trapezoid_dissipated(t_end, 50_000).unwrap();
        let closed = circuit.dissipated(&0.0, &Time::At(t_end)).unwrap();
        prop_assert!(
            (numeric - closed).abs() <= 1e-4 * closed,
            "numeric {numeric} closed {closed}"
        );
    }
}

// --------------------------------------------------------- sequence model

/// Classification reads only sampled evidence, so refining the sampling
/// plan may settle more cases but must never reverse a decided one.
#[test]
fn refining_the_sampling_plan_preserves_decided_corpus_verdicts() {
    use hyperrc::exprlang::{eval_seq, seq_bindings};
    use hyperrc::ultraproduct::read_corpus;

    let text = std::fs::read_to_string(
        std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/expressions.txt"),
    )
    .unwrap();
    let bindings = seq_bindings();
    let coarse = SamplingPlan::default();
    let fine = SamplingPlan::new((4..=28).map(|k| 1u64 << k).collect(), 6);
    let mut agreed = 0;
    for line in read_corpus(&text) {
        let expr = parse(&line).unwrap();
        let seq = match eval_seq(&expr, &bindings) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let before = seq_classify(&seq, &coarse);
        let after = seq_classify(&seq, &fine);
        if let (Some(b), Some(a)) = (before.decided(), after.decided()) {
            assert_eq!(b, a, "{line}: refined plan flipped the verdict");
            agreed += 1;
        }
    }
    assert!(agreed >= 40, "only {agreed} expressions decided under both plans");
}

/// Two sequences that differ on finitely many indices are the same
/// hyperreal; the classifier's verdict cannot depend on a finite prefix.
#[test]
fn classification_ignores_finite_prefixes() {
    let plan = SamplingPlan::default();
    let cases: Vec<(Box<dyn Fn(u64) -> f64 + Send + Sync>, Classification)> = vec![
        (
            Box::new(|n| 1.0 / (n as f64 + 1.0)),
            Classification::Infinitesimal(Sign::Positive),
        ),
        (
            Box::new(|n| (n as f64).sqrt()),
            Classification::Unlimited(Sign::Positive),
        ),
        (Box::new(|_| 3.0), Classification::Appreciable(Sign::Positive)),
        (
            Box::new(|n| -2.0 - 1.0 / (n as f64 + 1.0)),
            Classification::Appreciable(Sign::Negative),
        ),
        (
            // Underflows to literal zero well inside the sampled range.
            Box::new(|n| (-(n as f64)).exp()),
            Classification::Infinitesimal(Sign::Positive),
        ),
    ];
    for (gen, expected) in cases {
        let gen = std::sync::Arc::new(gen);
        let original = {
            let g = gen.clone();
            SeqHyper::from_fn("original", move |n| g(n))
        };
        let mangled = {
            let g = gen.clone();
            SeqHyper::from_fn("mangled", move |n| if n < 100 { 42.0 } else { g(n) })
        };
        let v_original = seq_classify(&original, &plan);
        let v_mangled = seq_classify(&mangled, &plan);
        assert_eq!(v_original.decided(), Some(&expected));
        assert_eq!(v_original, v_mangled, "prefix changed the verdict");
    }
}

// ------------------------------------------------------------- invariants

proptest! {
    /// eval_f64 is linear over term lists: evaluating a sum of values
    /// matches the sum of evaluations (same grid, no cancellation pitfalls
    /// at this scale).
    #[test]
    fn evaluation_is_additive(a in arb_exact_value(), b in arb_exact_value()) {
        let eps = 0.37;
        let lhs = a.add(&b).eval_f64(eps);
        let rhs = a.eval_f64(eps) + b.eval_f64(eps);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }

    /// Rational round-trip through the constant embedding.
    #[test]
    fn constants_embed_faithfully(n in -99i64..=99, d in 1i64..=99) {
        let q = ratio(n, d);
        let v = HyperValue::constant(q.clone());
        prop_assert!(v.is_exact());
        prop_assert_eq!(exact(v.standard_part().unwrap()), q.clone());
        let back = v.eval_f64(0.5);
        prop_assert!((back - to_f64(&q)).abs() <= 1e-12 * (1.0 + back.abs()));
    }
}
