//! Checks declared cost properties against concrete tables.
//!
//! Pair costs collapse parallel edges to their minimum. Checks that
//! quantify over triples run the full O(n³) scan; violations carry the
//! concrete nodes so a reader can replay them by hand.

use num::{Signed, ToPrimitive, Zero};

use super::Instance;
use crate::model::CostDomain;
use crate::rat::{fmt_rat, parse_rat, Rat};
use crate::semantics::{
    CostDomain as DeclaredDomain, MetricParam, PropertyTag, ResolvedVariant, Spec,
};

/// The concrete elements reproducing a violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub nodes: Vec<String>,
    pub detail: String,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}): {}", self.nodes.join(", "), self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Violated(Witness),
    /// Accepted on the variant's word; no instance-level check exists.
    DeclaredOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub cost: String,
    pub property: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn verdict(&self, cost: &str, property: &str) -> Option<&Verdict> {
        self.checks
            .iter()
            .find(|c| c.cost == cost && c.property == property)
            .map(|c| &c.verdict)
    }

    /// True when nothing was violated (declared-only entries pass).
    pub fn clean(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.verdict, Verdict::Violated(_)))
    }
}

impl std::fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            let verdict = match &c.verdict {
                Verdict::Verified => "verified".to_string(),
                Verdict::Violated(w) => format!("violated at {w}"),
                Verdict::DeclaredOnly => "declared only".to_string(),
            };
            writeln!(f, "{} {}: {}", c.cost, c.property, verdict)?;
        }
        Ok(())
    }
}

fn witness(nodes: &[&str], detail: String) -> Witness {
    Witness {
        nodes: nodes.iter().map(|s| s.to_string()).collect(),
        detail,
    }
}

/// Self-loop costs must vanish. Vacuously verified without self-loops.
pub fn identity_violation(inst: &Instance, cost: &str) -> Option<Witness> {
    let c = inst.edge_cost(cost)?;
    for (e, edge) in inst.graph.edges().iter().enumerate() {
        if edge.from == edge.to {
            if let Some(v) = c.get(e) {
                if !v.is_zero() {
                    let name = inst.graph.node_name(edge.from);
                    return Some(witness(
                        &[name],
                        format!("{cost}({name}, {name}) = {} instead of 0", fmt_rat(v)),
                    ));
                }
            }
        }
    }
    None
}

fn pair_costs(inst: &Instance, cost: &str, a: usize, b: usize) -> Vec<Rat> {
    let Some(c) = inst.edge_cost(cost) else {
        return Vec::new();
    };
    let mut values: Vec<Rat> = inst
        .graph
        .edges_from(a)
        .filter(|&(_, t)| t == b)
        .filter_map(|(e, _)| c.get(e).cloned())
        .collect();
    values.sort();
    values
}

/// Costs must agree in both directions; on directed graphs the full
/// multisets of parallel-edge costs are compared.
pub fn symmetry_violation(inst: &Instance, cost: &str) -> Option<Witness> {
    if !inst.graph.kind().is_directed() {
        return None;
    }
    let n = inst.graph.node_count();
    for a in 0..n {
        for b in (a + 1)..n {
            let ab = pair_costs(inst, cost, a, b);
            let ba = pair_costs(inst, cost, b, a);
            if ab != ba {
                let (na, nb) = (inst.graph.node_name(a), inst.graph.node_name(b));
                let fmt = |v: &[Rat]| {
                    if v.is_empty() {
                        "no value".to_string()
                    } else {
                        v.iter().map(fmt_rat).collect::<Vec<_>>().join("|")
                    }
                };
                return Some(witness(
                    &[na, nb],
                    format!(
                        "{cost}({na}, {nb}) = {} but {cost}({nb}, {na}) = {}",
                        fmt(&ab),
                        fmt(&ba)
                    ),
                ));
            }
        }
    }
    None
}

fn triangle_scan(inst: &Instance, cost: &str, factor: Option<&Rat>) -> Option<Witness> {
    let n = inst.graph.node_count();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let Some(direct) = inst.pair_cost(cost, u, v) else {
                continue;
            };
            for w in 0..n {
                if w == u || w == v {
                    continue;
                }
                let (Some(leg1), Some(leg2)) =
                    (inst.pair_cost(cost, u, w), inst.pair_cost(cost, w, v))
                else {
                    continue;
                };
                let mut detour = leg1 + leg2;
                if let Some(f) = factor {
                    detour *= f;
                }
                if *direct > detour {
                    let (nu, nw, nv) = (
                        inst.graph.node_name(u),
                        inst.graph.node_name(w),
                        inst.graph.node_name(v),
                    );
                    let relax = factor.map(|f| format!("{} · ", fmt_rat(f))).unwrap_or_default();
                    return Some(witness(
                        &[nu, nw, nv],
                        format!(
                            "{cost}({nu}, {nv}) = {} > {} = {relax}({cost}({nu}, {nw}) + {cost}({nw}, {nv}))",
                            fmt_rat(direct),
                            fmt_rat(&detour),
                        ),
                    ));
                }
            }
        }
    }
    None
}

/// Direct connections may never beat a detour.
pub fn triangle_violation(inst: &Instance, cost: &str) -> Option<Witness> {
    triangle_scan(inst, cost, None)
}

/// Triangle inequality relaxed by a factor.
pub fn relaxed_triangle_violation(inst: &Instance, cost: &str, factor: &Rat) -> Option<Witness> {
    triangle_scan(inst, cost, Some(factor))
}

fn negative_violation(inst: &Instance, cost: &str) -> Option<Witness> {
    let c = inst.edge_cost(cost)?;
    for (e, edge) in inst.graph.edges().iter().enumerate() {
        if let Some(v) = c.get(e) {
            if v.is_negative() {
                let (na, nb) = (
                    inst.graph.node_name(edge.from),
                    inst.graph.node_name(edge.to),
                );
                return Some(witness(
                    &[na, nb],
                    format!("{cost}({na}, {nb}) = {} is negative", fmt_rat(v)),
                ));
            }
        }
    }
    None
}

fn zero_offdiagonal_violation(inst: &Instance, cost: &str) -> Option<Witness> {
    let c = inst.edge_cost(cost)?;
    for (e, edge) in inst.graph.edges().iter().enumerate() {
        if edge.from != edge.to {
            if let Some(v) = c.get(e) {
                if v.is_zero() {
                    let (na, nb) = (
                        inst.graph.node_name(edge.from),
                        inst.graph.node_name(edge.to),
                    );
                    return Some(witness(
                        &[na, nb],
                        format!("{cost}({na}, {nb}) = 0 though the nodes differ"),
                    ));
                }
            }
        }
    }
    None
}

/// Full metric check: nonnegative, zero exactly on the diagonal,
/// symmetric, triangle.
pub fn metric_violation(inst: &Instance, cost: &str) -> Option<Witness> {
    negative_violation(inst, cost)
        .or_else(|| identity_violation(inst, cost))
        .or_else(|| zero_offdiagonal_violation(inst, cost))
        .or_else(|| symmetry_violation(inst, cost))
        .or_else(|| triangle_violation(inst, cost))
}

const EUCLID_TOL: f64 = 1e-9;

/// Edge costs must equal point distances within the relative tolerance.
pub fn euclidean_violation(inst: &Instance, cost: &str) -> Option<Witness> {
    let Some(coords) = &inst.coords else {
        return Some(witness(&[], "the instance carries no coordinates".to_string()));
    };
    let c = inst.edge_cost(cost)?;
    for (e, edge) in inst.graph.edges().iter().enumerate() {
        let Some(v) = c.get(e) else { continue };
        let (xa, ya) = coords[edge.from];
        let (xb, yb) = coords[edge.to];
        let dist = ((xa - xb).powi(2) + (ya - yb).powi(2)).sqrt();
        let value = v.to_f64().unwrap_or(f64::NAN);
        let scale = 1.0_f64.max(dist.abs()).max(value.abs());
        if !((value - dist).abs() <= EUCLID_TOL * scale) {
            let (na, nb) = (
                inst.graph.node_name(edge.from),
                inst.graph.node_name(edge.to),
            );
            return Some(witness(
                &[na, nb],
                format!(
                    "{cost}({na}, {nb}) = {} but the points lie {dist} apart",
                    fmt_rat(v)
                ),
            ));
        }
    }
    None
}

/// The five shoreline conditions over the declared node order: zero
/// diagonal, symmetry, costs monotone in both endpoints, and the
/// triangle inequality on ordered triples.
pub fn shoreline_violation(inst: &Instance, cost: &str) -> Option<Witness> {
    if let Some(w) = identity_violation(inst, cost) {
        return Some(w);
    }
    if let Some(w) = symmetry_violation(inst, cost) {
        return Some(w);
    }
    let n = inst.graph.node_count();
    for i in 0..n {
        for j in (i + 1)..n {
            let Some(outer) = inst.pair_cost(cost, i, j) else {
                continue;
            };
            for k in i..=j {
                let (ni, nk, nj) = (
                    inst.graph.node_name(i),
                    inst.graph.node_name(k),
                    inst.graph.node_name(j),
                );
                if k != i && k != j {
                    if let Some(inner) = inst.pair_cost(cost, i, k) {
                        if outer < inner {
                            return Some(witness(
                                &[ni, nk, nj],
                                format!(
                                    "{cost}({ni}, {nj}) = {} < {} = {cost}({ni}, {nk})",
                                    fmt_rat(outer),
                                    fmt_rat(inner)
                                ),
                            ));
                        }
                    }
                    if let Some(inner) = inst.pair_cost(cost, k, j) {
                        if outer < inner {
                            return Some(witness(
                                &[ni, nk, nj],
                                format!(
                                    "{cost}({ni}, {nj}) = {} < {} = {cost}({nk}, {nj})",
                                    fmt_rat(outer),
                                    fmt_rat(inner)
                                ),
                            ));
                        }
                    }
                    if let (Some(leg1), Some(leg2)) =
                        (inst.pair_cost(cost, i, k), inst.pair_cost(cost, k, j))
                    {
                        let detour = leg1 + leg2;
                        if *outer > detour {
                            return Some(witness(
                                &[ni, nk, nj],
                                format!(
                                    "{cost}({ni}, {nj}) = {} > {} = {cost}({ni}, {nk}) + {cost}({nk}, {nj})",
                                    fmt_rat(outer),
                                    fmt_rat(&detour)
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
    None
}

fn verdict_from(v: Option<Witness>) -> Verdict {
    match v {
        None => Verdict::Verified,
        Some(w) => Verdict::Violated(w),
    }
}

/// Resolves a relaxation factor: a literal number, or a scalar parameter
/// of the instance.
fn factor_value(inst: &Instance, text: &str) -> Option<Rat> {
    parse_rat(text)
        .ok()
        .or_else(|| inst.params.get(text).cloned())
}

/// Checks every property the variant declares on each cost function it
/// actually can check, and reports the rest as declared-only.
pub fn check_declared_properties(inst: &Instance, variant: &ResolvedVariant) -> PropertyReport {
    let mut report = PropertyReport::default();
    let mut push = |cost: &str, property: String, verdict: Verdict| {
        report.checks.push(PropertyCheck {
            cost: cost.to_string(),
            property,
            verdict,
        });
    };

    for sig in &variant.costs {
        let Some(spec) = &sig.property else { continue };
        let tag = match spec {
            Spec::Is(tag) => tag,
            Spec::Any => continue,
            Spec::OneOf(_) => {
                push(&sig.name, "property".into(), Verdict::DeclaredOnly);
                continue;
            }
        };
        let name = &sig.name;
        let checkable = sig.family.is_none()
            && sig.domain == DeclaredDomain::Edges
            && inst.costs.get(name).is_some_and(|c| c.domain == CostDomain::Edges);
        if !checkable {
            push(name, tag.to_string(), Verdict::DeclaredOnly);
            continue;
        }
        match tag {
            PropertyTag::Params(params) => {
                for p in params {
                    let verdict = match p {
                        MetricParam::Identity => verdict_from(identity_violation(inst, name)),
                        MetricParam::Symmetric => verdict_from(symmetry_violation(inst, name)),
                        MetricParam::Triangle => verdict_from(triangle_violation(inst, name)),
                        MetricParam::RelaxedTriangle(f) => match factor_value(inst, f) {
                            Some(factor) => {
                                verdict_from(relaxed_triangle_violation(inst, name, &factor))
                            }
                            None => Verdict::DeclaredOnly,
                        },
                    };
                    push(name, p.to_string(), verdict);
                }
            }
            PropertyTag::Metric => {
                push(name, "metric".into(), verdict_from(metric_violation(inst, name)));
            }
            PropertyTag::Euclidean | PropertyTag::EuclideanFixedDim | PropertyTag::EuclideanPlane => {
                push(name, tag.to_string(), verdict_from(euclidean_violation(inst, name)));
            }
            PropertyTag::Shoreline => {
                push(name, "shoreline".into(), verdict_from(shoreline_violation(inst, name)));
            }
            PropertyTag::Graphic
            | PropertyTag::Planar
            | PropertyTag::SubsetPlanar
            | PropertyTag::Grid(_) => {
                push(name, tag.to_string(), Verdict::DeclaredOnly);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CostFunction, EdgeKind, Graph};
    use crate::rat::{rat, ratio};
    use crate::semantics::resolve;
    use crate::syntax::parse;

    fn variant(text: &str) -> ResolvedVariant {
        resolve(&parse(text, None).unwrap()).unwrap().variant
    }

    fn complete(names: &[&str], costs: &[(&str, &str, i64)]) -> Instance {
        let edges: Vec<(String, String, String)> = costs
            .iter()
            .map(|(a, b, _)| (format!("{a}-{b}"), a.to_string(), b.to_string()))
            .collect();
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let graph = Graph::new(EdgeKind::Undirected, &names, &edges).unwrap();
        let mut table = CostFunction::new("c", CostDomain::Edges, graph.edge_count());
        for (a, b, v) in costs {
            table.set(graph.edge_id(&format!("{a}-{b}")).unwrap(), rat(*v));
        }
        let mut inst = Instance::bare(graph);
        inst.costs.insert("c".into(), table);
        inst
    }

    #[test]
    fn unit_costs_on_k4_are_metric() {
        let inst = complete(
            &["a", "b", "c", "d"],
            &[
                ("a", "b", 1),
                ("a", "c", 1),
                ("a", "d", 1),
                ("b", "c", 1),
                ("b", "d", 1),
                ("c", "d", 1),
            ],
        );
        assert_eq!(identity_violation(&inst, "c"), None);
        assert_eq!(symmetry_violation(&inst, "c"), None);
        assert_eq!(triangle_violation(&inst, "c"), None);
        assert_eq!(metric_violation(&inst, "c"), None);

        let v = variant(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, (identity, symmetric, triangle) ∣ min c(S) ⟩",
        );
        let report = check_declared_properties(&inst, &v);
        assert!(report.clean());
        assert_eq!(report.checks.len(), 3);
        assert!(report.checks.iter().all(|c| c.verdict == Verdict::Verified));
    }

    #[test]
    fn a_long_shortcut_breaks_the_triangle_with_a_named_witness() {
        let inst = complete(
            &["a", "w", "b"],
            &[("a", "w", 1), ("w", "b", 1), ("a", "b", 5)],
        );
        let w = triangle_violation(&inst, "c").unwrap();
        assert_eq!(w.nodes, vec!["a", "w", "b"]);
        assert!(w.detail.contains("c(a, b) = 5 > 2"), "{}", w.detail);

        assert!(relaxed_triangle_violation(&inst, "c", &rat(3)).is_none());
        assert!(relaxed_triangle_violation(&inst, "c", &rat(2)).is_some());
        assert!(relaxed_triangle_violation(&inst, "c", &ratio(5, 2)).is_none());
    }

    #[test]
    fn directed_asymmetry_is_caught() {
        let graph = Graph::new(
            EdgeKind::Directed,
            &["a", "b"],
            &[("ab", "a", "b"), ("ba", "b", "a")],
        )
        .unwrap();
        let mut table = CostFunction::new("c", CostDomain::Edges, 2);
        table.set(0, rat(3));
        table.set(1, rat(4));
        let mut inst = Instance::bare(graph);
        inst.costs.insert("c".into(), table);
        let w = symmetry_violation(&inst, "c").unwrap();
        assert_eq!(w.nodes, vec!["a", "b"]);
        assert!(w.detail.contains("3"), "{}", w.detail);
        assert!(w.detail.contains("4"), "{}", w.detail);
    }

    #[test]
    fn pythagorean_coordinates_verify_and_a_nudged_cost_fails() {
        let mut inst = complete(
            &["a", "b", "c"],
            &[("a", "b", 3), ("a", "c", 4), ("b", "c", 5)],
        );
        inst.coords = Some(vec![(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)]);
        assert_eq!(euclidean_violation(&inst, "c"), None);

        let e = inst.graph.edge_id("b-c").unwrap();
        inst.costs.get_mut("c").unwrap().set(e, rat(6));
        let w = euclidean_violation(&inst, "c").unwrap();
        assert_eq!(w.nodes, vec!["b", "c"]);

        inst.coords = None;
        let w = euclidean_violation(&inst, "c").unwrap();
        assert!(w.detail.contains("no coordinates"), "{}", w.detail);
    }

    #[test]
    fn shoreline_accepts_a_line_and_rejects_an_outward_dip() {
        let line = complete(
            &["p1", "p2", "p3"],
            &[("p1", "p2", 1), ("p2", "p3", 1), ("p1", "p3", 2)],
        );
        assert_eq!(shoreline_violation(&line, "c"), None);

        let dip = complete(
            &["p1", "p2", "p3"],
            &[("p1", "p2", 5), ("p2", "p3", 1), ("p1", "p3", 2)],
        );
        let w = shoreline_violation(&dip, "c").unwrap();
        assert_eq!(w.nodes, vec!["p1", "p2", "p3"]);
        assert!(w.detail.contains("c(p1, p3) = 2 < 5"), "{}", w.detail);
    }

    #[test]
    fn unverifiable_declarations_stay_declared_only() {
        let inst = complete(&["a", "b"], &[("a", "b", 1)]);
        let v = variant(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, graphic; p : V ↦ ℝ≥0 ∣ min c(S) + p(S) ⟩",
        );
        let report = check_declared_properties(&inst, &v);
        assert_eq!(
            report.verdict("c", "graphic"),
            Some(&Verdict::DeclaredOnly)
        );

        let open = variant(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, property = * ∣ min c(S) ⟩",
        );
        assert!(check_declared_properties(&inst, &open).checks.is_empty());
    }
}
