//! The metric closure: shortest-path costs on a complete graph over the
//! same nodes. Turning an arbitrary connected instance into its closure
//! is what lets single-visit tours stand in for revisiting walks.

use std::collections::BTreeMap;

use super::Instance;
use crate::model::{CostDomain, CostFunction, EdgeKind, Graph};
use crate::rat::Rat;
use num::Signed;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosureError {
    #[error("no path from {from} to {to} under cost {cost:?}")]
    Unreachable {
        cost: String,
        from: String,
        to: String,
    },
    #[error("cost {cost:?} is negative on edge {edge:?}")]
    NegativeCost { cost: String, edge: String },
    #[error("cost {cost:?} varies over time; its closure is undefined")]
    Temporal { cost: String },
}

/// Replaces the graph with a complete one and every edge cost table with
/// shortest-path distances (directed distances on directed graphs).
/// Node tables, parameters, groups, and coordinates carry over. Applying
/// the closure twice changes nothing.
pub fn metric_closure(inst: &Instance) -> Result<Instance, ClosureError> {
    if let Some(name) = inst.temporal.keys().next() {
        return Err(ClosureError::Temporal { cost: name.clone() });
    }
    let g = &inst.graph;
    let n = g.node_count();
    let directed = g.kind().is_directed();

    let mut closed: BTreeMap<String, Vec<Vec<Option<Rat>>>> = BTreeMap::new();
    for (name, table) in &inst.costs {
        if table.domain != CostDomain::Edges {
            continue;
        }
        for (e, edge) in g.edges().iter().enumerate() {
            if table.get(e).is_some_and(|v| v.is_negative()) {
                return Err(ClosureError::NegativeCost {
                    cost: name.clone(),
                    edge: edge.name.clone(),
                });
            }
        }
        let mut dist: Vec<Vec<Option<Rat>>> = vec![vec![None; n]; n];
        for a in 0..n {
            dist[a][a] = Some(Rat::from_integer(0.into()));
            for (e, b) in g.edges_from(a) {
                if let Some(v) = table.get(e) {
                    if dist[a][b].as_ref().is_none_or(|old| v < old) {
                        dist[a][b] = Some(v.clone());
                    }
                }
            }
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let (Some(ak), Some(kb)) = (&dist[a][k], &dist[k][b]) else {
                        continue;
                    };
                    let via = ak + kb;
                    if dist[a][b].as_ref().is_none_or(|old| via < *old) {
                        dist[a][b] = Some(via);
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && dist[a][b].is_none() {
                    return Err(ClosureError::Unreachable {
                        cost: name.clone(),
                        from: g.node_name(a).to_string(),
                        to: g.node_name(b).to_string(),
                    });
                }
            }
        }
        closed.insert(name.clone(), dist);
    }

    let kind = if directed {
        EdgeKind::Directed
    } else {
        EdgeKind::Undirected
    };
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || (!directed && a > b) {
                continue;
            }
            edges.push((
                format!("{}-{}", g.node_name(a), g.node_name(b)),
                g.node_name(a).to_string(),
                g.node_name(b).to_string(),
            ));
        }
    }
    let names: Vec<String> = g.node_names().to_vec();
    let graph = Graph::new(kind, &names, &edges).expect("closure graph");

    let mut out = inst.clone();
    for (name, dist) in closed {
        let mut table = CostFunction::new(&name, CostDomain::Edges, graph.edge_count());
        for a in 0..n {
            for b in 0..n {
                if a == b || (!directed && a > b) {
                    continue;
                }
                let e = graph
                    .edge_id(&format!("{}-{}", g.node_name(a), g.node_name(b)))
                    .unwrap();
                table.set(e, dist[a][b].clone().unwrap());
            }
        }
        out.costs.insert(name, table);
    }
    out.graph = graph;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fig1;
    use crate::instance::triangle_violation;
    use crate::model::EdgeKind;
    use crate::rat::rat;

    fn fig1_instance() -> Instance {
        let f = fig1();
        let mut inst = Instance::bare(f.graph);
        inst.costs.insert("c".into(), f.edge_cost);
        inst
    }

    #[test]
    fn shortest_paths_become_the_new_costs() {
        let closed = metric_closure(&fig1_instance()).unwrap();
        assert!(closed.graph.is_complete());
        assert_eq!(closed.graph.edge_count(), 6);
        let at = |a: &str, b: &str| {
            closed
                .pair_cost(
                    "c",
                    closed.graph.node_id(a).unwrap(),
                    closed.graph.node_id(b).unwrap(),
                )
                .cloned()
                .unwrap()
        };
        assert_eq!(at("v1", "v3"), rat(3));
        assert_eq!(at("v3", "v4"), rat(3));
        assert_eq!(at("v1", "v4"), rat(2));
        assert_eq!(at("v1", "v2"), rat(2));
        assert!(triangle_violation(&closed, "c").is_none());
    }

    #[test]
    fn closing_twice_changes_nothing() {
        let once = metric_closure(&fig1_instance()).unwrap();
        let twice = metric_closure(&once).unwrap();
        assert_eq!(twice, once);
    }

    #[test]
    fn unreachable_pairs_are_named() {
        let graph = Graph::new(EdgeKind::Undirected, &["a", "b"], &[]).unwrap();
        let mut inst = Instance::bare(graph);
        inst.costs
            .insert("c".into(), CostFunction::new("c", CostDomain::Edges, 0));
        let e = metric_closure(&inst).unwrap_err();
        assert_eq!(
            e,
            ClosureError::Unreachable {
                cost: "c".into(),
                from: "a".into(),
                to: "b".into()
            }
        );
    }

    #[test]
    fn directed_distances_stay_asymmetric() {
        let graph = Graph::new(
            EdgeKind::Directed,
            &["a", "b", "c"],
            &[
                ("ab", "a", "b"),
                ("bc", "b", "c"),
                ("ca", "c", "a"),
            ],
        )
        .unwrap();
        let mut table = CostFunction::new("c", CostDomain::Edges, 3);
        table.set(0, rat(1));
        table.set(1, rat(1));
        table.set(2, rat(1));
        let mut inst = Instance::bare(graph);
        inst.costs.insert("c".into(), table);
        let closed = metric_closure(&inst).unwrap();
        assert_eq!(closed.graph.kind(), EdgeKind::Directed);
        assert_eq!(closed.pair_cost("c", 0, 1), Some(&rat(1)));
        assert_eq!(closed.pair_cost("c", 1, 0), Some(&rat(2)));
        let again = metric_closure(&closed).unwrap();
        assert_eq!(again, closed);
    }

    #[test]
    fn negative_edges_are_refused() {
        let graph = Graph::new(EdgeKind::Undirected, &["a", "b"], &[("ab", "a", "b")]).unwrap();
        let mut table = CostFunction::new("c", CostDomain::Edges, 1);
        table.set(0, rat(-1));
        let mut inst = Instance::bare(graph);
        inst.costs.insert("c".into(), table);
        assert!(matches!(
            metric_closure(&inst).unwrap_err(),
            ClosureError::NegativeCost { .. }
        ));
    }
}
