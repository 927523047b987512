//! Named fixtures shared by tests, docs, and the acceptance suite.

use crate::model::{CostDomain, CostFunction, EdgeKind, Graph, Walk, WalkToken};
use crate::rat::rat;

/// The four-node multigraph used throughout the walk documentation: five
/// edges including the parallel pair e4/e5 between v4 and v1, edge costs
/// 2,1,2,2,3 and unit node costs.
pub struct Fig1 {
    pub graph: Graph,
    pub edge_cost: CostFunction,
    pub node_cost: CostFunction,
}

impl Fig1 {
    fn walk(&self, spec: &[&str]) -> Walk {
        let tokens: Vec<WalkToken> = spec
            .iter()
            .map(|name| match self.graph.node_id(name) {
                Some(v) => WalkToken::Node(v, true),
                None => WalkToken::Edge(self.graph.edge_id(name).expect("fixture id")),
            })
            .collect();
        Walk::from_tokens(&self.graph, &tokens).expect("fixture walk")
    }

    /// (v1,e1,v2,e2,v3,e2,e3,v4,e4): v2 traversed twice, visited once.
    pub fn s1(&self) -> Walk {
        self.walk(&["v1", "e1", "v2", "e2", "v3", "e2", "e3", "v4", "e4"])
    }

    /// (v1,e1,v2,e2,v3,e2,v2,e3,v4,e4): the second v2 is visited too.
    pub fn s2(&self) -> Walk {
        self.walk(&["v1", "e1", "v2", "e2", "v3", "e2", "v2", "e3", "v4", "e4"])
    }

    /// (v1,e1,v2,e2,v3,e2,e3,v4,e5): closes over the parallel edge e5.
    pub fn s3(&self) -> Walk {
        self.walk(&["v1", "e1", "v2", "e2", "v3", "e2", "e3", "v4", "e5"])
    }
}

pub fn fig1() -> Fig1 {
    let graph = Graph::new(
        EdgeKind::Undirected,
        &["v1", "v2", "v3", "v4"],
        &[
            ("e1", "v1", "v2"),
            ("e2", "v2", "v3"),
            ("e3", "v2", "v4"),
            ("e4", "v4", "v1"),
            ("e5", "v4", "v1"),
        ],
    )
    .expect("fixture graph");
    let mut edge_cost = CostFunction::new("c", CostDomain::Edges, graph.edge_count());
    for (name, value) in [("e1", 2), ("e2", 1), ("e3", 2), ("e4", 2), ("e5", 3)] {
        edge_cost.set(graph.edge_id(name).unwrap(), rat(value));
    }
    let node_cost =
        CostFunction::constant("c", CostDomain::Nodes, graph.node_count(), rat(1));
    Fig1 {
        graph,
        edge_cost,
        node_cost,
    }
}
