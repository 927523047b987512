//! Concrete problem instances: a graph, bound cost tables, scalar
//! parameters, groups, and optional coordinates, plus the loaders and
//! checks that connect them to variant definitions.
//!
//! Instances are variant-agnostic data. [`Instance::check_bound`] decides
//! whether a given resolved variant finds every symbol it needs.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{CostDomain, CostFunction, Graph};
use crate::rat::{ExtRat, Rat};
use crate::semantics::{
    CostDomain as DeclaredDomain, GroupKind, ResolvedVariant, Spec, TemporalTag,
};
use crate::syntax::{Expr, RangeTag};
use num::Signed;

mod closure;
pub mod gen;
mod native;
mod properties;
mod tsplib;

pub use closure::{metric_closure, ClosureError};
pub use native::{load_native, save_native, SchemaError};
pub use properties::{
    check_declared_properties, euclidean_violation, identity_violation, metric_violation,
    relaxed_triangle_violation, shoreline_violation, symmetry_violation, triangle_violation,
    PropertyCheck, PropertyReport, Verdict, Witness,
};
pub use tsplib::load_tsplib;

/// An indexed node set with optional prescribed entry and exit points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub index: usize,
    pub nodes: BTreeSet<usize>,
    pub start: Option<usize>,
    pub end: Option<usize>,
    pub terminals: BTreeSet<usize>,
}

/// What a temporal cost table is keyed by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TemporalKey {
    /// Arrival time when the edge is entered.
    Time,
    /// Number of edges traversed so far.
    Position,
}

/// Piecewise-constant edge costs: per edge, `(breakpoint, value)` pairs
/// with ascending breakpoints starting at zero; the value holds from its
/// breakpoint up to the next one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalTable {
    pub key: TemporalKey,
    pub rows: BTreeMap<usize, Vec<(Rat, Rat)>>,
}

impl TemporalTable {
    /// Cost of `edge` at time or position `t`.
    pub fn value_at(&self, edge: usize, t: &Rat) -> Option<&Rat> {
        let row = self.rows.get(&edge)?;
        row.iter().rev().find(|(b, _)| b <= t).map(|(_, v)| v)
    }
}

/// Start point and velocity of a moving node.
#[derive(Clone, Debug, PartialEq)]
pub struct KineticNode {
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
}

/// A fully concrete problem instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub graph: Graph,
    /// Cost tables by name, over edges or nodes. Finite values only;
    /// unbounded entries are listed in `inf_entries` instead.
    pub costs: BTreeMap<String, CostFunction>,
    /// Node ids where the named table is unbounded (deadlines and
    /// availability tables admit ∞).
    pub inf_entries: BTreeMap<String, BTreeSet<usize>>,
    /// Declared value ranges for cost tables, enforced at load time.
    pub ranges: BTreeMap<String, RangeTag>,
    /// Scalar symbols: budgets, quotas, demands, relaxation factors.
    pub params: BTreeMap<String, Rat>,
    pub groups: Vec<Group>,
    /// Prescribed start node, for variants whose walks begin at an input
    /// node.
    pub start: Option<usize>,
    /// Prescribed end node.
    pub end: Option<usize>,
    /// Ordered pairs (u, v): u must be visited before v.
    pub precedences: Vec<(usize, usize)>,
    /// 2D point per node, in node-id order.
    pub coords: Option<Vec<(f64, f64)>>,
    /// Time- or position-dependent replacements for edge cost tables.
    pub temporal: BTreeMap<String, TemporalTable>,
    /// Moving-node data, parsed but never evaluated.
    pub kinetic: Option<Vec<KineticNode>>,
}

impl Instance {
    /// An instance with no tables at all.
    pub fn bare(graph: Graph) -> Instance {
        Instance {
            graph,
            costs: BTreeMap::new(),
            inf_entries: BTreeMap::new(),
            ranges: BTreeMap::new(),
            params: BTreeMap::new(),
            groups: Vec::new(),
            start: None,
            end: None,
            precedences: Vec::new(),
            coords: None,
            temporal: BTreeMap::new(),
            kinetic: None,
        }
    }

    pub fn cost(&self, name: &str) -> Option<&CostFunction> {
        self.costs.get(name)
    }

    /// The named edge-domain cost table.
    pub fn edge_cost(&self, name: &str) -> Option<&CostFunction> {
        self.costs.get(name).filter(|c| c.domain == CostDomain::Edges)
    }

    /// Finite value of a node table at `v`.
    pub fn node_value(&self, name: &str, v: usize) -> Option<&Rat> {
        let c = self.costs.get(name)?;
        if c.domain != CostDomain::Nodes {
            return None;
        }
        c.get(v)
    }

    /// Value of a node table at `v`, honoring unbounded entries.
    pub fn node_value_ext(&self, name: &str, v: usize) -> Option<ExtRat> {
        if self.inf_entries.get(name).is_some_and(|s| s.contains(&v)) {
            return Some(ExtRat::Inf);
        }
        self.node_value(name, v).cloned().map(ExtRat::Finite)
    }

    pub fn scalar(&self, name: &str) -> Option<&Rat> {
        self.params.get(name)
    }

    /// Cheapest traversable edge from `a` to `b` under the named cost,
    /// with its id. Parallel edges collapse to the minimum; ties keep the
    /// smallest edge id.
    pub fn cheapest_edge(&self, name: &str, a: usize, b: usize) -> Option<(usize, &Rat)> {
        let c = self.edge_cost(name)?;
        let mut best: Option<(usize, &Rat)> = None;
        for (e, _) in self.graph.edges_from(a).filter(|&(_, t)| t == b) {
            if let Some(v) = c.get(e) {
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((e, v));
                }
            }
        }
        best
    }

    /// Cheapest cost from `a` to `b`, ignoring which edge realizes it.
    pub fn pair_cost(&self, name: &str, a: usize, b: usize) -> Option<&Rat> {
        self.cheapest_edge(name, a, b).map(|(_, v)| v)
    }
}

/// A symbol the variant needs but the instance does not supply.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{msg}")]
pub struct BindError {
    pub msg: String,
}

fn bind_err(msg: impl Into<String>) -> BindError {
    BindError { msg: msg.into() }
}

impl Instance {
    /// Checks that every cost table the variant declares is bound with
    /// the right domain and coverage, and that declared group kinds match
    /// the group data. Waiting tables are exempt: waits belong to the
    /// solution, not the instance.
    pub fn check_bound(&self, variant: &ResolvedVariant) -> Result<(), BindError> {
        for sig in &variant.costs {
            if sig.temporal_admits(|t| *t == TemporalTag::Waiting) {
                continue;
            }
            let names = match &sig.family {
                None => vec![sig.name.clone()],
                Some(fam) => {
                    let lo = self.eval_index(&fam.lo);
                    let hi = self.eval_index(&fam.hi);
                    match (lo, hi) {
                        (Some(lo), Some(hi)) => {
                            (lo..=hi).map(|i| format!("{}_{}", sig.name, i)).collect()
                        }
                        _ => {
                            return Err(bind_err(format!(
                                "cost family {} has an index range the instance \
                                 parameters cannot pin down",
                                sig.name
                            )))
                        }
                    }
                }
            };
            let want = match &sig.domain {
                DeclaredDomain::Nodes => CostDomain::Nodes,
                DeclaredDomain::Edges => CostDomain::Edges,
                other => {
                    return Err(bind_err(format!(
                        "cost {} ranges over {other}, which instance files cannot carry",
                        sig.name
                    )))
                }
            };
            let may_be_partial = matches!(sig.partial, Spec::Is(true) | Spec::Any)
                || self.temporal_covers(&names);
            for name in names {
                if self.temporal.contains_key(&name) {
                    continue;
                }
                let Some(table) = self.costs.get(&name) else {
                    return Err(bind_err(format!("no cost table bound for {name}")));
                };
                if table.domain != want {
                    return Err(bind_err(format!(
                        "cost {name} is declared over {} but bound over {}",
                        sig.domain,
                        match table.domain {
                            CostDomain::Edges => "E",
                            CostDomain::Nodes => "V",
                        }
                    )));
                }
                if !may_be_partial {
                    let missing = (0..table.len()).find(|&i| {
                        table.get(i).is_none()
                            && !self.inf_entries.get(&name).is_some_and(|s| s.contains(&i))
                    });
                    if let Some(i) = missing {
                        let what = match want {
                            CostDomain::Edges => self.graph.edge(i).name.clone(),
                            CostDomain::Nodes => self.graph.node_name(i).to_string(),
                        };
                        return Err(bind_err(format!("cost {name} has no value at {what}")));
                    }
                }
            }
        }
        self.check_group_shape(variant)
    }

    fn temporal_covers(&self, names: &[String]) -> bool {
        names.iter().all(|n| self.temporal.contains_key(n))
    }

    fn eval_index(&self, e: &Expr) -> Option<usize> {
        let r = match e {
            Expr::Num(r) => r.clone(),
            Expr::Ident(n) if n.sub.is_none() => self.params.get(&n.base)?.clone(),
            _ => return None,
        };
        if r.is_integer() && !r.is_negative() {
            usize::try_from(r.numer()).ok()
        } else {
            None
        }
    }

    fn check_group_shape(&self, variant: &ResolvedVariant) -> Result<(), BindError> {
        let kind = match (&variant.group, &variant.tour.cluster) {
            (Some(Spec::Is(g)), _) => Some(g.kind),
            (_, Some(Spec::Is(c))) => Some(match c.kind {
                crate::semantics::ClusterKind::Partition => GroupKind::Partition,
                crate::semantics::ClusterKind::Cover => GroupKind::Cover,
            }),
            _ => None,
        };
        let Some(kind) = kind else { return Ok(()) };
        if self.groups.is_empty() {
            return Err(bind_err("the variant needs groups but the instance has none"));
        }
        let n = self.graph.node_count();
        let mut seen = vec![0usize; n];
        for g in &self.groups {
            for &v in &g.nodes {
                seen[v] += 1;
            }
        }
        match kind {
            GroupKind::Partition | GroupKind::Bipartition | GroupKind::KPartition => {
                if kind == GroupKind::Bipartition && self.groups.len() != 2 {
                    return Err(bind_err(format!(
                        "a bipartition needs exactly 2 groups, found {}",
                        self.groups.len()
                    )));
                }
                if let Some(v) = (0..n).find(|&v| seen[v] != 1) {
                    return Err(bind_err(format!(
                        "groups must partition the nodes, but {} lies in {} of them",
                        self.graph.node_name(v),
                        seen[v]
                    )));
                }
            }
            GroupKind::Cover => {
                if let Some(v) = (0..n).find(|&v| seen[v] == 0) {
                    return Err(bind_err(format!(
                        "groups must cover the nodes, but {} lies in none",
                        self.graph.node_name(v)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// True when `value` lies in the declared range.
pub fn range_admits(tag: &RangeTag, value: &Rat) -> bool {
    match tag {
        RangeTag::R => true,
        RangeTag::RNonNeg => !value.is_negative(),
        RangeTag::RPos => value.is_positive(),
        RangeTag::Z => value.is_integer(),
        RangeTag::ZNonNeg => value.is_integer() && !value.is_negative(),
        RangeTag::ZPos => value.is_integer() && value.is_positive(),
        RangeTag::Set(items) => items.iter().any(|e| match e {
            Expr::Num(r) => r == value,
            _ => true,
        }),
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::semantics::resolve;
    use crate::syntax::parse;

    fn variant(text: &str) -> ResolvedVariant {
        resolve(&parse(text, None).unwrap()).unwrap().variant
    }

    fn k3_with_c() -> Instance {
        let graph = Graph::new(
            crate::model::EdgeKind::Undirected,
            &["a", "b", "c"],
            &[("ab", "a", "b"), ("bc", "b", "c"), ("ac", "a", "c")],
        )
        .unwrap();
        let mut cost = CostFunction::new("c", CostDomain::Edges, 3);
        for e in 0..3 {
            cost.set(e, rat(1));
        }
        let mut inst = Instance::bare(graph);
        inst.costs.insert("c".into(), cost);
        inst
    }

    #[test]
    fn binding_demands_each_declared_table() {
        let inst = k3_with_c();
        let tsp = variant("⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩");
        assert!(inst.check_bound(&tsp).is_ok());

        let two = variant(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0; p : V ↦ ℝ≥0 ∣ min c(S) + p(S) ⟩",
        );
        let err = inst.check_bound(&two).unwrap_err();
        assert!(err.msg.contains("no cost table bound for p"), "{}", err.msg);
    }

    #[test]
    fn binding_checks_domain_and_coverage() {
        let mut inst = k3_with_c();
        inst.costs
            .insert("p".into(), CostFunction::new("p", CostDomain::Edges, 3));
        let two = variant(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0; p : V ↦ ℝ≥0 ∣ min c(S) + p(S) ⟩",
        );
        let err = inst.check_bound(&two).unwrap_err();
        assert!(err.msg.contains("declared over V"), "{}", err.msg);

        let mut hole = CostFunction::new("p", CostDomain::Nodes, 3);
        hole.set(0, rat(1));
        inst.costs.insert("p".into(), hole.clone());
        let err = inst.check_bound(&two).unwrap_err();
        assert!(err.msg.contains("no value at b"), "{}", err.msg);

        let partial = variant(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0; p : V ↦ ℝ≥0, partial ∣ min c(S) + p(S) ⟩",
        );
        assert!(inst.check_bound(&partial).is_ok());
    }

    #[test]
    fn family_tables_expand_through_params() {
        let mut inst = k3_with_c();
        let tpp = variant(
            "⟨ =1 ∣ ≤1 ∣ circuit ∣ c : E ↦ ℝ≥0; {avail_i}_{i=1}^m : V ↦ ℝ≥0 ∣ min c(S) ⟩",
        );
        let err = inst.check_bound(&tpp).unwrap_err();
        assert!(err.msg.contains("cannot pin down"), "{}", err.msg);

        inst.params.insert("m".into(), rat(2));
        let err = inst.check_bound(&tpp).unwrap_err();
        assert!(err.msg.contains("no cost table bound for avail_1"), "{}", err.msg);

        for name in ["avail_1", "avail_2"] {
            inst.costs.insert(
                name.into(),
                CostFunction::constant(name, CostDomain::Nodes, 3, rat(4)),
            );
        }
        assert!(inst.check_bound(&tpp).is_ok());
    }

    #[test]
    fn group_shapes_follow_the_declared_kind() {
        let mut inst = k3_with_c();
        let grouped =
            variant("⟨ =1 ∣ ≤1; partition(once) ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩");
        let err = inst.check_bound(&grouped).unwrap_err();
        assert!(err.msg.contains("needs groups"), "{}", err.msg);

        inst.groups = vec![
            Group {
                index: 1,
                nodes: [0, 1].into(),
                start: None,
                end: None,
                terminals: BTreeSet::new(),
            },
            Group {
                index: 2,
                nodes: [1, 2].into(),
                start: None,
                end: None,
                terminals: BTreeSet::new(),
            },
        ];
        let err = inst.check_bound(&grouped).unwrap_err();
        assert!(err.msg.contains("b lies in 2"), "{}", err.msg);

        inst.groups[1].nodes = [2].into();
        assert!(inst.check_bound(&grouped).is_ok());
    }

    #[test]
    fn waiting_tables_are_solution_data() {
        let inst = k3_with_c();
        let tw = variant(
            "⟨ =1 ∣ =1; always ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0; w : V ↦ ℝ≥0, waiting ∣ min c(S) + w(S) ⟩",
        );
        assert!(inst.check_bound(&tw).is_ok());
    }

    #[test]
    fn ranges_sort_values() {
        assert!(range_admits(&RangeTag::RNonNeg, &rat(0)));
        assert!(!range_admits(&RangeTag::RNonNeg, &rat(-1)));
        assert!(!range_admits(&RangeTag::ZPos, &crate::rat::ratio(1, 2)));
        assert!(range_admits(&RangeTag::Z, &rat(-3)));
        assert!(!range_admits(&RangeTag::RPos, &rat(0)));
    }
}
