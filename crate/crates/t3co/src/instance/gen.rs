//! Seeded random instances for oracle sweeps: connected graphs with
//! uniform small integer costs, and verified-metric complete graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{metric_closure, Instance};
use crate::model::{CostDomain, CostFunction, EdgeKind, Graph};
use crate::rat::rat;

/// A connected undirected instance on `n` nodes with integer edge costs
/// in 1..=9: a random spanning tree plus a sprinkling of extra edges.
/// The same seed always yields the same instance.
pub fn random_connected(n: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((
            format!("e{}", edges.len() + 1),
            names[j].clone(),
            names[i].clone(),
        ));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            let in_tree = edges
                .iter()
                .any(|(_, f, t)| (*f == names[a] && *t == names[b]) || (*f == names[b] && *t == names[a]));
            if !in_tree && rng.gen_bool(0.4) {
                edges.push((format!("e{}", edges.len() + 1), names[a].clone(), names[b].clone()));
            }
        }
    }
    let graph = Graph::new(EdgeKind::Undirected, &names, &edges).expect("generated graph");
    let mut cost = CostFunction::new("c", CostDomain::Edges, graph.edge_count());
    for e in 0..graph.edge_count() {
        cost.set(e, rat(rng.gen_range(1..=9)));
    }
    let mut inst = Instance::bare(graph);
    inst.costs.insert("c".into(), cost);
    inst
}

/// A complete undirected instance on `n` nodes whose costs satisfy the
/// triangle inequality: random positive costs passed through the metric
/// closure.
pub fn random_metric(n: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            edges.push((
                format!("{}-{}", names[a], names[b]),
                names[a].clone(),
                names[b].clone(),
            ));
        }
    }
    let graph = Graph::new(EdgeKind::Undirected, &names, &edges).expect("generated graph");
    let mut cost = CostFunction::new("c", CostDomain::Edges, graph.edge_count());
    for e in 0..graph.edge_count() {
        cost.set(e, rat(rng.gen_range(1..=9)));
    }
    let mut inst = Instance::bare(graph);
    inst.costs.insert("c".into(), cost);
    metric_closure(&inst).expect("complete graphs close")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{metric_violation, triangle_violation};

    #[test]
    fn connected_instances_are_connected_and_deterministic() {
        for seed in 0..20 {
            let inst = random_connected(6, seed);
            assert!(inst.graph.is_strongly_connected(), "seed {seed}");
            assert_eq!(inst.graph.node_count(), 6);
            let again = random_connected(6, seed);
            assert_eq!(again, inst);
        }
        assert_ne!(random_connected(6, 1), random_connected(6, 2));
    }

    #[test]
    fn metric_instances_verify_their_name() {
        for seed in 0..20 {
            let inst = random_metric(5, seed);
            assert!(inst.graph.is_complete(), "seed {seed}");
            assert!(triangle_violation(&inst, "c").is_none(), "seed {seed}");
            assert!(metric_violation(&inst, "c").is_none(), "seed {seed}");
        }
    }

    #[test]
    fn tiny_sizes_work() {
        assert_eq!(random_connected(1, 7).graph.node_count(), 1);
        assert_eq!(random_metric(2, 7).graph.edge_count(), 1);
    }
}
