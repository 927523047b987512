//! Resolution followed by canonical emission must preserve meaning for any
//! grammatical definition. Fields are drawn independently from pools of
//! forms seen in practice, so pairings the fixed examples never combine
//! (clusters with groups, coverings with open cost properties) get hit too.

use proptest::prelude::*;
use t3co::semantics::{
    canonical_longhand, canonical_shorthand, check_wellformed, resolve, resolved_equal,
    Resolution,
};
use t3co::syntax::parse;

const ALPHA: &[&str] = &["=1", "≥1", "=Θ(1)", "=k", "=|T|", "=1 or ≥1", "*"];

const BETA: &[&str] = &[
    "=1",
    "≥1",
    "≤1",
    "≥0",
    "d_v",
    "≥ d(v) ∈ {0, 1}",
    "=1; always",
    "≥0; ≤once",
    "≤1; k-partition (once, k=O(log n))",
    "≥1; once",
    "=1; all(c, ≤ b)",
    "≤1; cover(≥ once)",
    "*",
];

const GAMMA: &[&str] = &[
    "circuit; complete; undirected",
    "start; end; path; undirected",
    "circuit; strongly connected; directed",
    "start; undirected; tree",
    "circuit; complete; undirected; partition(startend)",
    "circuit; complete; directed; precedences = atomic",
    "start; circuit; complete; bidirected",
    "circuit; undirected; graphtype = tree(b)",
    "circuit; graphtype = *",
    "start = False",
];

const DELTA: &[&str] = &[
    "c : E ↦ ℝ≥0",
    "c : E ↦ ℝ≥0, metric",
    "c : E ↦ ℝ≥0, (triangle)",
    "c : E ↦ ℝ≥0, (symmetric, triangle); p : V ↦ ℝ≥0",
    "c : E ↦ ℤ≥0, euclid",
    "c : E ↦ ℝ≥0, grid(m, n)",
    "c : E ↦ ℝ>0, shoreline; w : V ↦ ℝ≥0, waiting",
    "c : E ↦ ℝ≥0, euclidean, costzone(2)",
    "c : E ↦ ℝ≥0, property = *",
];

const EPSILON: &[&str] = &[
    "min c(S)",
    "max |V_S|; c(S) ≤ b",
    "min max {c(e) : e ∈ E_S}",
    "max min {c(e) : e ∈ E_S}",
    "∀ i ∈ {0,…,n}: c(S_{<i}) ≤ d(v_i); min c(S)",
    "min *",
    "min 2 · c(S)",
];

fn resolve_text(text: &str) -> Resolution {
    let ast = parse(text, None).unwrap_or_else(|e| panic!("{text:?} fails to parse: {e}"));
    resolve(&ast).unwrap_or_else(|e| panic!("{text:?} fails to resolve: {}", e.msg))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn emission_preserves_any_assembled_definition(
        a in prop::sample::select(ALPHA),
        b in prop::sample::select(BETA),
        g in prop::sample::select(GAMMA),
        d in prop::sample::select(DELTA),
        e in prop::sample::select(EPSILON),
    ) {
        let text = format!("⟨ {a} ∣ {b} ∣ {g} ∣ {d} ∣ {e} ⟩");
        let first = resolve_text(&text);

        let long = canonical_longhand(&first.variant);
        let from_long = resolve_text(&long);
        prop_assert!(
            resolved_equal(&first.variant, &from_long.variant),
            "longhand shifted meaning:\n  in:  {text}\n  out: {long}"
        );
        prop_assert_eq!(&long, &canonical_longhand(&from_long.variant));

        let short = canonical_shorthand(&first.variant);
        let from_short = resolve_text(&short);
        prop_assert!(
            resolved_equal(&first.variant, &from_short.variant),
            "shorthand shifted meaning:\n  in:  {text}\n  out: {short}"
        );
        prop_assert_eq!(&short, &canonical_shorthand(&from_short.variant));

        let diags = check_wellformed(&first.variant);
        prop_assert!(diags.is_empty(), "unexpected diagnostics for {text}: {diags:?}");
    }
}
