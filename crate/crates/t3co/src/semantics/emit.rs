//! Canonical parse trees for a resolved variant.
//!
//! Emission is the inverse of resolution up to canonical form: longhand
//! names every attribute (word values become boolean attributes, as in
//! "complete = True"), shorthand drops names and False booleans. Objectives
//! are reproduced as written.

use super::types::{
    ClusterKind, ClusterSequence, ClusterSpec, CostDomain, CostSignature, CoverScope,
    CoveringSpec, GraphType, GroupSpec, GroupVisit, MetricParam, PropertyTag, ResolvedVariant,
    Spec, TemporalTag, TourSpec, TravelerCount, TraversalCount, TraversalSpec, VisitSpec,
};
use crate::syntax::{
    abbreviate, render, Attribute, CostAttr, CostFn, Expr, FamilyIndex, Name, Notation, Objective,
    RelOp, SourceSpan, Value, ValueAlt, VariantAst,
};

pub fn longhand_ast(v: &ResolvedVariant) -> VariantAst {
    VariantAst {
        notation: Notation::Longhand,
        alpha: vec![named("count", traveler_value(&v.traveler))],
        beta: beta_attrs(v),
        gamma: gamma_attrs(&v.tour),
        delta: v.costs.iter().map(cost_fn).collect(),
        epsilon: v
            .objective_src
            .iter()
            .map(|e| Objective {
                expr: e.clone(),
                span: SourceSpan::default(),
            })
            .collect(),
        extension: v.extension.clone(),
        annotations: v.annotations.clone(),
        span: SourceSpan::default(),
    }
}

pub fn shorthand_ast(v: &ResolvedVariant) -> VariantAst {
    let mut out = abbreviate(&longhand_ast(v));
    // Shorthand fields cannot be empty. An all-default tour field loses
    // every attribute to abbreviation, so one default is spelled out.
    if out.gamma.is_empty() {
        out.gamma.push(named("start", bool_value(false)));
    }
    out
}

/// The canonical longhand text.
pub fn canonical_longhand(v: &ResolvedVariant) -> String {
    render(&longhand_ast(v))
}

/// The canonical shorthand text.
pub fn canonical_shorthand(v: &ResolvedVariant) -> String {
    render(&shorthand_ast(v))
}

// ----- attribute builders -----------------------------------------------------

fn named(name: &str, value: Value) -> Attribute {
    Attribute {
        quant: Vec::new(),
        name: Some(Name::plain(name)),
        value: Some(value),
        span: SourceSpan::default(),
    }
}

fn alt(rel: Option<RelOp>, expr: Expr) -> ValueAlt {
    ValueAlt { rel, expr }
}

fn spec_value<T>(spec: &Spec<T>, alt_of: impl Fn(&T) -> ValueAlt) -> Value {
    match spec {
        Spec::Is(t) => Value {
            alts: vec![alt_of(t)],
        },
        Spec::Any => Value {
            alts: vec![alt(Some(RelOp::Eq), Expr::Star)],
        },
        Spec::OneOf(ts) => Value {
            alts: ts.iter().map(alt_of).collect(),
        },
    }
}

/// Cost attributes write their own "=", so their alternatives carry none.
fn cost_spec_value<T>(spec: &Spec<T>, expr_of: impl Fn(&T) -> Expr) -> Value {
    match spec {
        Spec::Is(t) => Value {
            alts: vec![alt(None, expr_of(t))],
        },
        Spec::Any => Value {
            alts: vec![alt(None, Expr::Star)],
        },
        Spec::OneOf(ts) => Value {
            alts: ts.iter().map(|t| alt(None, expr_of(t))).collect(),
        },
    }
}

fn word(w: &str) -> Expr {
    Expr::Ident(Name::plain(w))
}

fn bool_value(b: bool) -> Value {
    Value::single(Some(RelOp::Eq), word(if b { "True" } else { "False" }))
}

// ----- α ----------------------------------------------------------------------

fn traveler_value(spec: &Spec<TravelerCount>) -> Value {
    spec_value(spec, |t| match t {
        TravelerCount::One => alt(Some(RelOp::Eq), Expr::num(1)),
        TravelerCount::FixedParam => alt(
            Some(RelOp::Eq),
            Expr::Call(Name::plain("Θ"), vec![Expr::num(1)]),
        ),
        TravelerCount::Param(e) => alt(Some(RelOp::Eq), e.clone()),
        TravelerCount::AtLeastOne => alt(Some(RelOp::Ge), Expr::num(1)),
    })
}

// ----- β ----------------------------------------------------------------------

fn beta_attrs(v: &ResolvedVariant) -> Vec<Attribute> {
    let mut out = Vec::new();
    if let Some(t) = &v.traversals {
        out.push(named("traversals", spec_value(t, traversal_alt)));
    }
    if let Some(vis) = &v.visits {
        out.push(named("visits", spec_value(vis, visit_alt)));
    }
    if let Some(g) = &v.group {
        out.push(named("group", spec_value(g, group_alt)));
    }
    if let Some(c) = &v.covering {
        out.push(named("covering", spec_value(c, covering_alt)));
    }
    out
}

fn traversal_alt(t: &TraversalSpec) -> ValueAlt {
    let core = match &t.count {
        TraversalCount::Num(n) => Expr::Num(n.clone()),
        TraversalCount::Param(p) => word(p),
        TraversalCount::PerNode(table) => {
            Expr::Call(Name::plain(table), vec![word("v")])
        }
    };
    let expr = match &t.among {
        None => core,
        Some(set) => Expr::Rel(
            vec![RelOp::In],
            vec![
                core,
                Expr::SetLit(set.iter().map(|n| Expr::Num(n.clone())).collect()),
            ],
        ),
    };
    alt(Some(t.rel), expr)
}

fn visit_alt(v: &VisitSpec) -> ValueAlt {
    match v {
        VisitSpec::Always => alt(Some(RelOp::Eq), word("always")),
        VisitSpec::Once => alt(Some(RelOp::Eq), word("once")),
        VisitSpec::AtLeastOnce => alt(Some(RelOp::Ge), word("once")),
        VisitSpec::AtMostOnce => alt(Some(RelOp::Le), word("once")),
    }
}

fn group_alt(g: &GroupSpec) -> ValueAlt {
    let mut args = Vec::new();
    match g.visit {
        Some(GroupVisit::Once) => args.push(word("once")),
        Some(GroupVisit::AtLeastOnce) => {
            args.push(Expr::HalfRel(RelOp::Ge, Box::new(word("once"))))
        }
        None => {}
    }
    args.extend(g.params.iter().cloned());
    let expr = if args.is_empty() {
        word(g.kind.word())
    } else {
        Expr::Call(Name::plain(g.kind.word()), args)
    };
    alt(Some(RelOp::Eq), expr)
}

fn covering_alt(c: &CoveringSpec) -> ValueAlt {
    let scope = match c.scope {
        CoverScope::All => "all",
        CoverScope::Subset => "subset",
    };
    let expr = Expr::Call(
        Name::plain(scope),
        vec![
            Expr::Ident(name_from_text(&c.cost)),
            Expr::HalfRel(c.rel, Box::new(c.bound.clone())),
        ],
    );
    alt(Some(RelOp::Eq), expr)
}

/// Splits a rendered name back into base and subscript.
fn name_from_text(s: &str) -> Name {
    match s.split_once('_') {
        Some((base, sub)) => Name::sub(base, sub),
        None => Name::plain(s),
    }
}

// ----- γ ----------------------------------------------------------------------

fn gamma_attrs(tour: &TourSpec) -> Vec<Attribute> {
    let mut out = Vec::new();
    for (name, spec) in [
        ("start", &tour.start),
        ("end", &tour.end),
        ("circuit", &tour.circuit),
    ] {
        out.push(named(
            name,
            spec_value(spec, |b| {
                alt(Some(RelOp::Eq), word(if *b { "True" } else { "False" }))
            }),
        ));
    }
    match &tour.graphtype {
        Spec::Is(GraphType::Arbitrary) => {}
        Spec::Is(g) => match graphtype_expr(g) {
            Expr::Ident(n) => out.push(named(&n.base, bool_value(true))),
            call => out.push(named("graphtype", Value::single(Some(RelOp::Eq), call))),
        },
        open => out.push(named("graphtype", spec_value(open, |g| {
            alt(Some(RelOp::Eq), graphtype_expr(g))
        }))),
    }
    if let Some(spec) = &tour.edgetype {
        match spec {
            Spec::Is(e) => out.push(named(e.word(), bool_value(true))),
            open => out.push(named("edgetype", spec_value(open, |e| {
                alt(Some(RelOp::Eq), word(e.word()))
            }))),
        }
    }
    if let Some(spec) = &tour.precedences {
        out.push(named(
            "precedences",
            spec_value(spec, |p| alt(Some(RelOp::Eq), word(&p.to_string()))),
        ));
    }
    if let Some(spec) = &tour.cluster {
        out.push(named("cluster", spec_value(spec, cluster_alt)));
    }
    for flag in &tour.family_flags {
        out.push(Attribute {
            quant: vec![(Name::plain(&flag.index), flag.over.clone())],
            name: Some(Name::sub(&flag.name, &flag.index)),
            value: Some(bool_value(flag.value)),
            span: SourceSpan::default(),
        });
    }
    out
}

fn graphtype_expr(g: &GraphType) -> Expr {
    match g {
        GraphType::Arbitrary => word("arbitrary"),
        GraphType::Complete => word("complete"),
        GraphType::StronglyConnected => word("strongly connected"),
        GraphType::Planar => word("planar"),
        GraphType::Path => word("path"),
        GraphType::Cycle => word("cycle"),
        GraphType::BinaryTree => word("binary tree"),
        GraphType::Tree(None) => word("tree"),
        GraphType::Tree(Some(b)) => Expr::Call(Name::plain("tree"), vec![b.clone()]),
    }
}

fn cluster_alt(c: &ClusterSpec) -> ValueAlt {
    let kind = match c.kind {
        ClusterKind::Partition => "partition",
        ClusterKind::Cover => "cover",
    };
    let mut args = Vec::new();
    if c.ordered {
        args.push(word("ordered"));
    }
    match c.sequence {
        Some(ClusterSequence::Start) => args.push(word("start")),
        Some(ClusterSequence::StartEnd) => args.push(word("startend")),
        Some(ClusterSequence::Terminals) => args.push(word("terminals")),
        None => {}
    }
    let expr = if args.is_empty() {
        word(kind)
    } else {
        Expr::Call(Name::plain(kind), args)
    };
    alt(Some(RelOp::Eq), expr)
}

// ----- δ ----------------------------------------------------------------------

fn cost_fn(sig: &CostSignature) -> CostFn {
    let (name, family) = match &sig.family {
        Some(f) => (
            Name::sub(&sig.name, &f.var),
            Some(FamilyIndex {
                var: f.var.clone(),
                lo: f.lo.clone(),
                hi: f.hi.clone(),
            }),
        ),
        None => (name_from_text(&sig.name), None),
    };
    let domain = match &sig.domain {
        CostDomain::Nodes => word("V"),
        CostDomain::Edges => word("E"),
        CostDomain::EdgePairs => word("E×E"),
        CostDomain::Named(e) => e.clone(),
    };
    let mut attrs = Vec::new();
    if let Some(p) = &sig.property {
        attrs.push(property_attr(p));
    }
    if let Some(t) = &sig.temporal {
        attrs.push(match t {
            Spec::Is(tag) => temporal_attr(tag),
            open => CostAttr::Named(
                Name::plain("temporal"),
                cost_spec_value(open, temporal_expr),
            ),
        });
    }
    match &sig.partial {
        Spec::Is(false) => {}
        Spec::Is(true) => attrs.push(CostAttr::Tag(Name::plain("partial"))),
        open => attrs.push(CostAttr::Named(
            Name::plain("partial"),
            cost_spec_value(open, |b| word(if *b { "True" } else { "False" })),
        )),
    }
    CostFn {
        name,
        family,
        domain,
        range: sig.range.clone(),
        attrs,
        span: SourceSpan::default(),
    }
}

fn property_attr(spec: &Spec<PropertyTag>) -> CostAttr {
    match spec {
        Spec::Is(PropertyTag::Params(ps)) => {
            CostAttr::Tuple(ps.iter().map(param_name).collect())
        }
        Spec::Is(PropertyTag::Grid(args)) => {
            CostAttr::Call(Name::plain("grid"), args.clone())
        }
        Spec::Is(tag) => CostAttr::Tag(Name::plain(&tag.to_string())),
        open => CostAttr::Named(
            Name::plain("property"),
            cost_spec_value(open, property_expr),
        ),
    }
}

fn property_expr(tag: &PropertyTag) -> Expr {
    match tag {
        PropertyTag::Grid(args) => Expr::Call(Name::plain("grid"), args.clone()),
        PropertyTag::Params(ps) if ps.len() == 1 => Expr::Ident(param_name(&ps[0])),
        other => word(&other.to_string()),
    }
}

fn param_name(p: &MetricParam) -> Name {
    match p {
        MetricParam::Identity => Name::plain("identity"),
        MetricParam::Triangle => Name::plain("triangle"),
        MetricParam::RelaxedTriangle(factor) => Name::plain(&format!("{factor}-triangle")),
        MetricParam::Symmetric => Name::plain("symmetric"),
    }
}

fn temporal_attr(tag: &TemporalTag) -> CostAttr {
    match tag {
        TemporalTag::CostZone(args) => CostAttr::Call(Name::plain("costzone"), args.clone()),
        TemporalTag::PosZone(args) => CostAttr::Call(Name::plain("poszone"), args.clone()),
        other => CostAttr::Tag(Name::plain(&other.to_string())),
    }
}

fn temporal_expr(tag: &TemporalTag) -> Expr {
    match tag {
        TemporalTag::CostZone(args) => Expr::Call(Name::plain("costzone"), args.clone()),
        TemporalTag::PosZone(args) => Expr::Call(Name::plain("poszone"), args.clone()),
        other => word(&other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{resolve, resolved_equal};
    use crate::syntax::parse;

    fn resolved(text: &str) -> ResolvedVariant {
        let ast = parse(text, None).expect("parses");
        resolve(&ast).expect("resolves").variant
    }

    /// A spread of definitions exercising every slot the emitter rebuilds.
    const CORPUS: &[&str] = &[
        "⟨ α: count = 1; β: visits = 1; γ: start = False; end = False; circuit = True; \
         complete = True; undirected = True; δ: c: E ↦ ℝ≥0; ε: min c(S); ⟩",
        "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩",
        "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, (triangle) ∣ min c(S) ⟩",
        "⟨ =1 ∣ ≥1 ∣ circuit; undirected ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩",
        "⟨ =1 ∣ d_v ∣ start; end; complete; undirected ∣ c : E ↦ ℝ≥0, metric ∣ min c(S) ⟩",
        "⟨ =1 ∣ ≥ d(v) ∈ {0, 1} ∣ circuit; planar; undirected ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩",
        "⟨ =1 ∣ ≤1; k-partition (once, k=O(log n)) ∣ circuit; complete; directed ∣ \
         c : E ↦ ℝ≥0 ∣ min c(S) ⟩",
        "⟨ =1 ∣ ≤1; cover(≥ once) ∣ circuit; complete; directed ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩",
        "⟨ =1 ∣ =1; all(c, ≤ b) ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, metric ∣ \
         min c(S) ⟩",
        "⟨ =1 ∣ =1 ∣ circuit; complete; undirected; partition(startend) ∣ \
         c : E ↦ ℝ≥0, (symmetric, triangle) ∣ min c(S) ⟩",
        "⟨ =1 ∣ =1 ∣ circuit; complete; undirected; cluster = partition(ordered) ∣ \
         c : E ↦ ℝ≥0 ∣ min c(S) ⟩",
        "⟨ =1 ∣ ≥1 ∣ start; undirected; graphtype = tree(b) ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩",
        "⟨ =1 ∣ =1 ∣ circuit; strongly connected; directed ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩",
        "⟨ α: count = 1; β: traversals = 1; γ: start = True; circuit = False; \
         complete = True; directed = True; precedences = atomic; δ: c: E ↦ ℝ≥0; \
         ε: min c(S); ⟩",
        "⟨ α: count = |T|; β: traversals =1; γ: start = True; ∀ t ∈ T: circuit_t = True; \
         complete = True; δ: c : E ↦ ℝ≥0; ε: min c(S); ⟩",
        "⟨ =Θ(1) ∣ =1 ∣ circuit; complete ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩",
        "⟨ =k ∣ =1 ∣ circuit; complete ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩",
        "⟨ =1 ∣ ≤1; always ∣ complete; directed ∣ c : E ↦ ℝ>0; \
         {avail_i}_{i=1}^m : V ↦ {0, ∞}, partial; {price_i}_{i=1}^m : V ↦ ℝ>0 ∣ \
         ∀ i ∈ {1,…,m}: share_i(S_V) ≥ d_i; \
         ∀ i ∈ {1,…,m} ∀ v ∈ V: share_i(v) ≤ avail_i(v); \
         min c(S) + Σ_{i=1}^m Σ_{v ∈ S_V} price_i(v) · share_i(v) ⟩",
        "⟨ =1 ∣ =1; always ∣ start; circuit; complete; directed ∣ \
         c : E ↦ ℝ≥0; w : V ↦ ℝ≥0, waiting; h : V ↦ ℝ≥0 ∣ \
         ∀ i ∈ {0,…,k}: r(v_i) ≤ c(S_{<i}) + w(S_{≤i}) + h(S_{<i}) ≤ d(v_i) − h(S_i); \
         min c(S) + w(S) + h(S) ⟩",
        "⟨ =1 ∣ =1; always ∣ start; circuit; complete; undirected ∣ c : E ↦ ℝ≥0, metric ∣ \
         ∀ i ∈ {0,…,n}: c(S_{<i}) ≤ d(v_i); min c(S) ⟩",
        "⟨ =1 ∣ ≥0; ≤once ∣ start; undirected ∣ c : E ↦ ℝ≥0, metric ∣ \
         ∀ i ∈ {0,…,k}: r(v_i) ≤ c(S_{<i}) ≤ d; max |V_S| ⟩",
        "⟨ =1 ∣ ≥0; ≤once ∣ start; undirected; tree ∣ c : E ↦ ℤ≥0, metric; p : V ↦ ℤ>0 ∣ \
         ∀ i ∈ {0,…,k}: c(S_{<i}) ≤ (1 + 2ε) · d(v_i); max p(S) ⟩",
        "⟨ =1 ∣ =1; always ∣ start; end; path; undirected ∣ c : E ↦ ℝ≥0; h : V ↦ ℝ≥0 ∣ \
         min max_i max {0, c(S_{<i}) + h(S_{<i}) − d(v_i)} ⟩",
        "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, (triangle) ∣ \
         min max {c(e) : e ∈ E_S} ⟩",
        "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ \
         max min {c(e) : e ∈ E_S} ⟩",
        "⟨ =1 ∣ ≥0; ≤once ∣ start; undirected ∣ c : E ↦ ℝ≥0, metric; q : V ↦ ℝ≥0 ∣ \
         min c(S); q(S) ≥ b ⟩",
        "⟨ =1 ∣ ≥0; once ∣ start; end; complete; directed ∣ c : E ↦ ℝ≥0; p : V ↦ ℝ≥0 ∣ \
         min c(S) + p̄(S) ⟩",
        "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, euclid ∣ min c(S) ⟩",
        "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, euclidean, costzone(2) ∣ \
         min c(S) ⟩",
        "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, grid(m, n) ∣ min c(S) ⟩",
        "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, shoreline ∣ min c(S) ⟩",
        "⟨ =1 or ≥1 ∣ =1 ∣ circuit; undirected; graphtype = * ∣ c : E ↦ ℝ≥0, property = * ∣ \
         min * ⟩",
        "⟨ α: count = 1; β: traversals = 1; γ: δ: c: E ↦ ℝ≥0; ε: min c(S); ⟩",
    ];

    #[test]
    fn canonical_longhand_reaches_a_fixpoint() {
        for text in CORPUS {
            let v = resolved(text);
            let long = canonical_longhand(&v);
            let again = resolved(&long);
            assert!(
                resolved_equal(&v, &again),
                "longhand of {text:?} shifted meaning:\n{long}"
            );
            assert_eq!(
                long,
                canonical_longhand(&again),
                "longhand of {text:?} is not stable"
            );
        }
    }

    #[test]
    fn canonical_shorthand_reaches_a_fixpoint() {
        for text in CORPUS {
            let v = resolved(text);
            let short = canonical_shorthand(&v);
            let again = resolved(&short);
            assert!(
                resolved_equal(&v, &again),
                "shorthand of {text:?} shifted meaning:\n{short}"
            );
            assert_eq!(
                short,
                canonical_shorthand(&again),
                "shorthand of {text:?} is not stable"
            );
        }
    }

    #[test]
    fn notations_meet_in_one_canonical_form() {
        let long = resolved(CORPUS[0]);
        let short = resolved(CORPUS[1]);
        assert_eq!(canonical_longhand(&long), canonical_longhand(&short));
        assert_eq!(canonical_shorthand(&long), canonical_shorthand(&short));
    }

    #[test]
    fn canonical_longhand_spells_out_the_defaults() {
        let v = resolved(CORPUS[1]);
        let long = canonical_longhand(&v);
        assert!(long.contains("count"), "got: {long}");
        assert!(long.contains("traversals"), "got: {long}");
        assert!(long.contains("start = False"), "got: {long}");
        assert!(long.contains("end = False"), "got: {long}");
        assert!(long.contains("circuit = True"), "got: {long}");
        assert!(!long.contains("visits"), "got: {long}");

        let short = canonical_shorthand(&v);
        assert!(!short.contains("start"), "got: {short}");
        assert!(!short.contains("traversals"), "got: {short}");
        assert!(short.contains("circuit"), "got: {short}");
    }

    #[test]
    fn extension_marks_survive_emission() {
        let text = "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩^{⊕1}\n\
                    ⊕1: costs may change once mid-tour.";
        let v = resolved(text);
        assert!(v.extension.is_some());
        assert_eq!(v.annotations.len(), 1);
        let long = canonical_longhand(&v);
        let again = resolved(&long);
        assert_eq!(again.extension, v.extension);
        assert_eq!(again.annotations, v.annotations);
    }
}
