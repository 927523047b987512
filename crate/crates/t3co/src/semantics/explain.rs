//! Plain-language account of a resolved variant, one line per attribute.

use std::fmt::Write;

use super::types::{
    ClusterKind, ClusterSequence, ClusterSpec, CostDomain, CostSignature, CoverScope,
    CoveringSpec, EdgeType, GraphType, GroupKind, GroupSpec, GroupVisit, PrecedenceKind,
    PropertyTag, ResolvedVariant, Spec, TemporalTag, TravelerCount, TraversalCount,
    TraversalSpec, VisitSpec,
};
use crate::syntax::{render_expr, RelOp};

/// Describes every field of a resolved variant in prose.
pub fn explain(v: &ResolvedVariant) -> String {
    let mut out = String::new();
    if v.is_template() {
        out.push_str("template: starred slots accept any value\n");
    }

    line(&mut out, "α", "count", &v.traveler.to_string(), &spec_gloss(&v.traveler, traveler_gloss));

    match &v.traversals {
        Some(t) => line(&mut out, "β", "traversals", &t.to_string(), &spec_gloss(t, traversal_gloss)),
        None => absent(&mut out, "β", "traversals", "no constraint on how often nodes appear"),
    }
    match &v.visits {
        Some(s) => line(&mut out, "β", "visits", &s.to_string(), &spec_gloss(s, visit_gloss)),
        None => absent(&mut out, "β", "visits", "every traversal counts as a visit"),
    }
    if let Some(g) = &v.group {
        line(&mut out, "β", "group", &g.to_string(), &spec_gloss(g, group_gloss));
    }
    if let Some(c) = &v.covering {
        line(&mut out, "β", "covering", &c.to_string(), &spec_gloss(c, covering_gloss));
    }

    line(&mut out, "γ", "start", &bool_spec_text(&v.tour.start), &bool_spec_gloss(&v.tour.start, "the walk starts at a node given with the input", "the walk may start anywhere"));
    line(&mut out, "γ", "end", &bool_spec_text(&v.tour.end), &bool_spec_gloss(&v.tour.end, "the walk ends at a node given with the input", "the walk may end anywhere"));
    line(&mut out, "γ", "circuit", &bool_spec_text(&v.tour.circuit), &bool_spec_gloss(&v.tour.circuit, "the walk returns to its first node", "the walk may end away from its start"));
    line(&mut out, "γ", "graphtype", &v.tour.graphtype.to_string(), &spec_gloss(&v.tour.graphtype, graphtype_gloss));
    match &v.tour.edgetype {
        Some(e) => line(&mut out, "γ", "edgetype", &e.to_string(), &spec_gloss(e, edgetype_gloss)),
        None => absent(&mut out, "γ", "edgetype", "edge direction left unstated"),
    }
    if let Some(p) = &v.tour.precedences {
        line(&mut out, "γ", "precedences", &p.to_string(), &spec_gloss(p, precedence_gloss));
    }
    if let Some(c) = &v.tour.cluster {
        line(&mut out, "γ", "cluster", &c.to_string(), &spec_gloss(c, cluster_gloss));
    }
    for flag in &v.tour.family_flags {
        let _ = writeln!(
            out,
            "γ  ∀ {i} ∈ {over}: {name}_{i} = {val}  ({name} holds for each walk of the family)",
            i = flag.index,
            over = render_expr(&flag.over),
            name = flag.name,
            val = if flag.value { "True" } else { "False" },
        );
    }

    for sig in &v.costs {
        cost_lines(&mut out, sig);
    }

    for stmt in &v.objectives {
        let _ = writeln!(out, "ε  {stmt}");
    }

    if let Some(ext) = &v.extension {
        let marks: Vec<String> = ext.nums.iter().map(|n| format!("⊕{n}")).collect();
        let _ = writeln!(out, "⊕  extended by notes {}", marks.join(", "));
    }
    for ann in &v.annotations {
        match ann.num {
            Some(n) => {
                let _ = writeln!(out, "⊕{n} {}", ann.text);
            }
            None => {
                let _ = writeln!(out, "⊕  {}", ann.text);
            }
        }
    }
    out
}

fn line(out: &mut String, field: &str, attr: &str, value: &str, gloss: &str) {
    let _ = writeln!(out, "{field}  {attr} = {value}  ({gloss})");
}

fn absent(out: &mut String, field: &str, attr: &str, gloss: &str) {
    let _ = writeln!(out, "{field}  {attr} absent  ({gloss})");
}

fn spec_gloss<T>(spec: &Spec<T>, gloss: impl Fn(&T) -> String) -> String {
    match spec {
        Spec::Is(t) => gloss(t),
        Spec::Any => "left open".to_string(),
        Spec::OneOf(ts) => {
            let parts: Vec<String> = ts.iter().map(|t| gloss(t)).collect();
            format!("either {}", parts.join(", or "))
        }
    }
}

fn bool_spec_text(spec: &Spec<bool>) -> String {
    match spec {
        Spec::Is(true) => "True".to_string(),
        Spec::Is(false) => "False".to_string(),
        Spec::Any => "*".to_string(),
        Spec::OneOf(bs) => {
            let parts: Vec<&str> = bs.iter().map(|b| if *b { "True" } else { "False" }).collect();
            parts.join(" or ")
        }
    }
}

fn bool_spec_gloss(spec: &Spec<bool>, when_true: &str, when_false: &str) -> String {
    spec_gloss(spec, |b| {
        if *b {
            when_true.to_string()
        } else {
            when_false.to_string()
        }
    })
}

fn traveler_gloss(t: &TravelerCount) -> String {
    match t {
        TravelerCount::One => "a single walk forms the solution".to_string(),
        TravelerCount::FixedParam => {
            "a fixed number of walks, set by the variant rather than the input".to_string()
        }
        TravelerCount::Param(e) => format!(
            "{} walks, the count given with the input",
            render_expr(e)
        ),
        TravelerCount::AtLeastOne => "any number of walks, at least one".to_string(),
    }
}

fn rel_word(rel: RelOp) -> &'static str {
    match rel {
        RelOp::Eq => "exactly",
        RelOp::Ge => "at least",
        RelOp::Le => "at most",
        RelOp::Gt => "more than",
        RelOp::Lt => "fewer than",
        RelOp::In => "among",
    }
}

fn traversal_gloss(t: &TraversalSpec) -> String {
    let count = match &t.count {
        TraversalCount::Num(n) => format!("{n} time(s)"),
        TraversalCount::Param(p) => format!("{p} times, a shared demand"),
        TraversalCount::PerNode(table) => format!("{table}(v) times, a per-node demand"),
    };
    let mut s = format!("each node appears in the walk {} {count}", rel_word(t.rel));
    if let Some(set) = &t.among {
        let vals: Vec<String> = set.iter().map(|n| n.to_string()).collect();
        let _ = write!(s, ", with demands drawn from {{{}}}", vals.join(", "));
    }
    s
}

fn visit_gloss(v: &VisitSpec) -> String {
    match v {
        VisitSpec::Always => "every traversal of a node is a visit".to_string(),
        VisitSpec::Once => "each traversed node is visited exactly once".to_string(),
        VisitSpec::AtLeastOnce => "each traversed node is visited at least once".to_string(),
        VisitSpec::AtMostOnce => "each traversed node is visited at most once".to_string(),
    }
}

fn group_gloss(g: &GroupSpec) -> String {
    let kind = match g.kind {
        GroupKind::Partition => "clusters partition the nodes".to_string(),
        GroupKind::Cover => "clusters cover the nodes, possibly overlapping".to_string(),
        GroupKind::Bipartition => "two clusters partition the nodes".to_string(),
        GroupKind::KPartition => "k clusters partition the nodes".to_string(),
    };
    let visit = match g.visit {
        Some(GroupVisit::Once) => "; each cluster is visited exactly once",
        Some(GroupVisit::AtLeastOnce) => "; each cluster is visited at least once",
        None => "",
    };
    let mut s = format!("{kind}{visit}");
    if !g.params.is_empty() {
        let parts: Vec<String> = g.params.iter().map(render_expr).collect();
        let _ = write!(s, "; with {}", parts.join(", "));
    }
    s
}

fn covering_gloss(c: &CoveringSpec) -> String {
    let scope = match c.scope {
        CoverScope::All => "every node",
        CoverScope::Subset => "every node of a demanded subset",
    };
    format!(
        "{scope} lies within {} {} of a visited node, by shortest paths under {}",
        rel_word(c.rel),
        render_expr(&c.bound),
        c.cost
    )
}

fn graphtype_gloss(g: &GraphType) -> String {
    match g {
        GraphType::Arbitrary => "any graph".to_string(),
        GraphType::Complete => "every node pair is joined by an edge".to_string(),
        GraphType::StronglyConnected => {
            "every ordered node pair is joined by a directed path".to_string()
        }
        GraphType::Planar => "the graph is planar".to_string(),
        GraphType::Path => "the graph is a single path".to_string(),
        GraphType::Cycle => "the graph is a single cycle".to_string(),
        GraphType::BinaryTree => "the graph is a binary tree".to_string(),
        GraphType::Tree(None) => "the graph is a tree".to_string(),
        GraphType::Tree(Some(b)) => {
            format!("the graph is a tree with {} leaves", render_expr(b))
        }
    }
}

fn edgetype_gloss(e: &EdgeType) -> String {
    match e {
        EdgeType::Undirected => "edges are unordered node pairs".to_string(),
        EdgeType::Directed => "edges are ordered node pairs".to_string(),
        EdgeType::Bidirected => {
            "edges are ordered pairs present in both directions".to_string()
        }
    }
}

fn precedence_gloss(p: &PrecedenceKind) -> String {
    match p {
        PrecedenceKind::Atomic => {
            "given node pairs (u, v) force u to be visited before v".to_string()
        }
        PrecedenceKind::Arbitrary => {
            "order constraints are described in an extension note".to_string()
        }
    }
}

fn cluster_gloss(c: &ClusterSpec) -> String {
    let kind = match c.kind {
        ClusterKind::Partition => "partition",
        ClusterKind::Cover => "cover",
    };
    let mut s = format!("visits finish each {kind} cluster before entering the next");
    if c.ordered {
        s.push_str("; clusters are taken in index order");
    }
    match c.sequence {
        Some(ClusterSequence::Start) => {
            s.push_str("; the first node of each cluster is prescribed");
        }
        Some(ClusterSequence::StartEnd) => {
            s.push_str("; the first and last nodes of each cluster are prescribed");
        }
        Some(ClusterSequence::Terminals) => {
            s.push_str("; each cluster starts and ends within its terminal set");
        }
        None => {}
    }
    s
}

fn cost_lines(out: &mut String, sig: &CostSignature) {
    let family = match &sig.family {
        Some(f) => format!(
            " for each {} from {} to {}",
            f.var,
            render_expr(&f.lo),
            render_expr(&f.hi)
        ),
        None => String::new(),
    };
    let _ = writeln!(
        out,
        "δ  {} : {} ↦ {}  (cost on {}{family})",
        sig.name,
        sig.domain,
        sig.range_text(),
        domain_gloss(&sig.domain),
    );
    if let Some(p) = &sig.property {
        let _ = writeln!(out, "δ    property {}  ({})", p, spec_gloss(p, property_gloss));
    }
    if let Some(t) = &sig.temporal {
        let _ = writeln!(out, "δ    temporal {}  ({})", t, spec_gloss(t, temporal_gloss));
    }
    match &sig.partial {
        Spec::Is(false) => {}
        spec => {
            let _ = writeln!(
                out,
                "δ    partial {}  ({})",
                bool_spec_text(spec),
                bool_spec_gloss(spec, "the walk pays only part of each cost", "full costs apply"),
            );
        }
    }
}

fn domain_gloss(d: &CostDomain) -> &'static str {
    match d {
        CostDomain::Nodes => "nodes",
        CostDomain::Edges => "edges",
        CostDomain::EdgePairs => "edge pairs",
        CostDomain::Named(_) => "a named domain",
    }
}

fn property_gloss(p: &PropertyTag) -> String {
    match p {
        PropertyTag::Params(ps) => {
            let parts: Vec<String> = ps.iter().map(|m| m.to_string()).collect();
            format!("declared properties: {}", parts.join(", "))
        }
        PropertyTag::Metric => "symmetric, positive off the diagonal, triangle inequality".to_string(),
        PropertyTag::Graphic => "shortest-path hop counts of an unweighted graph".to_string(),
        PropertyTag::Planar => "costs of a planar graph".to_string(),
        PropertyTag::SubsetPlanar => "costs planar on the demanded subset".to_string(),
        PropertyTag::Euclidean => "distances between points in some ℝ^d".to_string(),
        PropertyTag::EuclideanFixedDim => {
            "distances between points, the dimension fixed by the variant".to_string()
        }
        PropertyTag::EuclideanPlane => "distances between points in the plane".to_string(),
        PropertyTag::Grid(_) => "distances on a rectangular grid".to_string(),
        PropertyTag::Shoreline => {
            "ordered points on a shore: moving endpoints inward never costs more".to_string()
        }
    }
}

fn temporal_gloss(t: &TemporalTag) -> String {
    match t {
        TemporalTag::Time => "costs change with arrival time".to_string(),
        TemporalTag::Position => "costs change with the number of steps taken".to_string(),
        TemporalTag::CostZone(args) => format!(
            "time-dependent costs with at most {} − 1 change points",
            args.first().map(render_expr).unwrap_or_else(|| "k".to_string())
        ),
        TemporalTag::PosZone(args) => format!(
            "position-dependent costs with at most {} − 1 change points",
            args.first().map(render_expr).unwrap_or_else(|| "k".to_string())
        ),
        TemporalTag::Waiting => "the traveler may wait before moving on".to_string(),
        TemporalTag::Kinetic => {
            "nodes move with constant speeds in fixed directions".to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::explain;
    use crate::semantics::resolve;
    use crate::syntax::parse;

    fn explained(text: &str) -> String {
        let ast = parse(text, None).expect("parse");
        explain(&resolve(&ast).expect("resolve").variant)
    }

    #[test]
    fn covers_every_field_of_the_classic_tour() {
        let out = explained("⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩");
        for needle in [
            "α  count = =1  (a single walk forms the solution)",
            "β  traversals = =1  (each node appears in the walk exactly 1 time(s))",
            "β  visits absent  (every traversal counts as a visit)",
            "γ  start = False  (the walk may start anywhere)",
            "γ  circuit = True  (the walk returns to its first node)",
            "γ  graphtype = complete  (every node pair is joined by an edge)",
            "γ  edgetype = undirected  (edges are unordered node pairs)",
            "δ  c : E ↦ ℝ≥0  (cost on edges)",
            "ε  min c(S)",
        ] {
            assert!(out.contains(needle), "missing {needle:?} in:\n{out}");
        }
        assert!(!out.contains("property"), "no property was declared:\n{out}");
    }

    #[test]
    fn spells_out_groups_costs_and_windows() {
        let out = explained(
            "⟨ ≥1 ∣ ≥0; cover(≥ once) ∣ circuit; graphtype = * ∣ c : E ↦ ℝ≥0, metric, costzone(2); w : V ↦ ℝ≥0, partial ∣ ∀ i ∈ {0,…,n}: c(S_{<i}) ≤ d(v_i); min c(S) ⟩",
        );
        for needle in [
            "α  count = ≥1  (any number of walks, at least one)",
            "β  traversals = ≥0  (each node appears in the walk at least 0 time(s))",
            "clusters cover the nodes, possibly overlapping; each cluster is visited at least once",
            "γ  graphtype = *  (left open)",
            "δ    property metric  (symmetric, positive off the diagonal, triangle inequality)",
            "δ    temporal costzone(2)  (time-dependent costs with at most 2 − 1 change points)",
            "δ    partial True  (the walk pays only part of each cost)",
            "ε  ∀ i ∈ {0,…,n}: arrival(i) ≤ d(v_i)",
        ] {
            assert!(out.contains(needle), "missing {needle:?} in:\n{out}");
        }
    }

    #[test]
    fn marks_templates_and_extensions() {
        let template = explained("⟨ =1 or ≥1 ∣ * ∣ circuit ∣ c : E ↦ ℝ≥0 ∣ min * ⟩");
        assert!(template.starts_with("template: starred slots accept any value\n"));
        assert!(template.contains("either a single walk forms the solution, or any number of walks, at least one"));
        assert!(template.contains("β  traversals = *  (left open)"));

        let extended = explained(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩^{⊕1}\n⊕1 the walk must cross the river at most twice",
        );
        assert!(extended.contains("⊕  extended by notes ⊕1"));
        assert!(extended.contains("⊕1 the walk must cross the river at most twice"));
    }
}
