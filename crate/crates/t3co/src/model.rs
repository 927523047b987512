//! Multigraphs, walks, and separable cost lifting.
//!
//! A walk is stored in proper form: every node occurrence is explicit and
//! carries a visited flag. Input sequences that drop non-visited
//! occurrences are reconstructed by constraint propagation along the
//! node/edge chain; reconstruction fails loudly when more than one
//! originating proper walk fits.

use crate::rat::Rat;
use num::Zero;
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Undirected,
    Directed,
    Bidirected,
}

impl EdgeKind {
    pub fn is_directed(self) -> bool {
        !matches!(self, EdgeKind::Undirected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("bidirected graph is missing the reverse of edge {0:?}")]
    MissingReverse(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    kind: EdgeKind,
    node_names: Vec<String>,
    node_ids: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_ids: HashMap<String, usize>,
}

impl Graph {
    /// Builds a multigraph. Edges are `(name, from, to)` node-name triples;
    /// for undirected graphs the endpoint order is irrelevant.
    pub fn new<S: AsRef<str>>(
        kind: EdgeKind,
        nodes: &[S],
        edges: &[(S, S, S)],
    ) -> Result<Graph, ModelError> {
        let mut node_names = Vec::with_capacity(nodes.len());
        let mut node_ids = HashMap::new();
        for n in nodes {
            let n = n.as_ref().to_string();
            if node_ids.insert(n.clone(), node_names.len()).is_some() {
                return Err(ModelError::DuplicateName(n));
            }
            node_names.push(n);
        }
        let mut es = Vec::with_capacity(edges.len());
        let mut edge_ids = HashMap::new();
        for (name, from, to) in edges {
            let name = name.as_ref().to_string();
            let from = *node_ids
                .get(from.as_ref())
                .ok_or_else(|| ModelError::UnknownNode(from.as_ref().to_string()))?;
            let to = *node_ids
                .get(to.as_ref())
                .ok_or_else(|| ModelError::UnknownNode(to.as_ref().to_string()))?;
            if edge_ids.insert(name.clone(), es.len()).is_some() {
                return Err(ModelError::DuplicateName(name));
            }
            es.push(Edge { name, from, to });
        }
        if kind == EdgeKind::Bidirected {
            for e in &es {
                if e.from != e.to && !es.iter().any(|r| r.from == e.to && r.to == e.from) {
                    return Err(ModelError::MissingReverse(e.name.clone()));
                }
            }
        }
        Ok(Graph {
            kind,
            node_names,
            node_ids,
            edges: es,
            edge_ids,
        })
    }

    pub fn kind(&self) -> EdgeKind {
        self.kind
    }

    pub fn node_count(&self) -> usize {
        self.node_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_id(&self, name: &str) -> Option<usize> {
        self.node_ids.get(name).copied()
    }

    pub fn node_name(&self, id: usize) -> &str {
        &self.node_names[id]
    }

    pub fn node_names(&self) -> &[String] {
        &self.node_names
    }

    pub fn edge_id(&self, name: &str) -> Option<usize> {
        self.edge_ids.get(name).copied()
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// True when edge `e` can be traversed from `a` to `b`.
    pub fn edge_joins(&self, e: usize, a: usize, b: usize) -> bool {
        let edge = &self.edges[e];
        if self.kind.is_directed() {
            edge.from == a && edge.to == b
        } else {
            (edge.from == a && edge.to == b) || (edge.from == b && edge.to == a)
        }
    }

    /// Traversable (edge, target) pairs leaving node `a`.
    pub fn edges_from(&self, a: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().enumerate().filter_map(move |(i, e)| {
            if e.from == a {
                Some((i, e.to))
            } else if !self.kind.is_directed() && e.to == a {
                Some((i, e.from))
            } else {
                None
            }
        })
    }

    /// Every distinct node pair joined by some edge (ordered pairs for
    /// directed and bidirected graphs).
    pub fn is_complete(&self) -> bool {
        let n = self.node_count();
        for a in 0..n {
            for b in 0..n {
                if a == b || (!self.kind.is_directed() && a > b) {
                    continue;
                }
                if !self.edges.iter().enumerate().any(|(i, _)| self.edge_joins(i, a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Reachability from every node to every node along traversable edges.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        (0..n).all(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(a) = stack.pop() {
                for (_, b) in self.edges_from(a) {
                    if !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen.iter().all(|&v| v)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CostDomain {
    Edges,
    Nodes,
}

/// A finite map from edges or nodes to exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostFunction {
    pub name: String,
    pub domain: CostDomain,
    values: Vec<Option<Rat>>,
}

impl CostFunction {
    pub fn new(name: &str, domain: CostDomain, size: usize) -> CostFunction {
        CostFunction {
            name: name.to_string(),
            domain,
            values: vec![None; size],
        }
    }

    /// Constant function over the whole domain.
    pub fn constant(name: &str, domain: CostDomain, size: usize, value: Rat) -> CostFunction {
        CostFunction {
            name: name.to_string(),
            domain,
            values: vec![Some(value); size],
        }
    }

    pub fn set(&mut self, id: usize, value: Rat) {
        self.values[id] = Some(value);
    }

    pub fn get(&self, id: usize) -> Option<&Rat> {
        self.values.get(id).and_then(|v| v.as_ref())
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(|v| v.is_some())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkToken {
    /// A node occurrence; `false` marks traversed-but-not-visited.
    Node(usize, bool),
    Edge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("empty walk")]
    Empty,
    #[error("two node occurrences in a row at position {0}")]
    NotAlternating(usize),
    #[error("edge {edge:?} does not continue the walk at position {position}")]
    NotAdjacent { edge: String, position: usize },
    #[error("dropped node at position {0} cannot be reconstructed uniquely")]
    Ambiguous(usize),
    #[error("walk references node id {0} outside the graph")]
    NodeOutOfRange(usize),
    #[error("walk references edge id {0} outside the graph")]
    EdgeOutOfRange(usize),
}

/// A proper walk: explicit alternating node/edge sequence with per-node
/// visited flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    start: usize,
    steps: Vec<(usize, usize)>,
    visited: Vec<bool>,
}

impl Walk {
    /// Single-node walk with no edges.
    pub fn trivial(node: usize) -> Walk {
        Walk {
            start: node,
            steps: Vec::new(),
            visited: vec![true],
        }
    }

    /// Builds a proper walk from explicit node and edge id sequences with
    /// all occurrences visited.
    pub fn proper(graph: &Graph, nodes: &[usize], edges: &[usize]) -> Result<Walk, WalkError> {
        let mut tokens = Vec::new();
        for (i, &n) in nodes.iter().enumerate() {
            tokens.push(WalkToken::Node(n, true));
            if i < edges.len() {
                tokens.push(WalkToken::Edge(edges[i]));
            }
        }
        Walk::from_tokens(graph, &tokens)
    }

    /// Reconstructs the originating proper walk from a possibly gappy token
    /// sequence. Dropped occurrences come back with `visited = false`.
    pub fn from_tokens(graph: &Graph, tokens: &[WalkToken]) -> Result<Walk, WalkError> {
        if tokens.is_empty() {
            return Err(WalkError::Empty);
        }
        let n = graph.node_count();
        let mut edges: Vec<usize> = Vec::new();
        let mut known: HashMap<usize, (usize, bool)> = HashMap::new();
        for tok in tokens {
            match *tok {
                WalkToken::Node(id, vis) => {
                    if id >= n {
                        return Err(WalkError::NodeOutOfRange(id));
                    }
                    let pos = edges.len();
                    if known.insert(pos, (id, vis)).is_some() {
                        return Err(WalkError::NotAlternating(pos));
                    }
                }
                WalkToken::Edge(id) => {
                    if id >= graph.edge_count() {
                        return Err(WalkError::EdgeOutOfRange(id));
                    }
                    edges.push(id);
                }
            }
        }
        let positions = edges.len() + 1;

        // Chain arc-consistency: forward and backward possibility sets per
        // node position, then their intersection.
        let domain = |pos: usize| -> Vec<bool> {
            match known.get(&pos) {
                Some(&(id, _)) => {
                    let mut d = vec![false; n];
                    d[id] = true;
                    d
                }
                None => vec![true; n],
            }
        };
        let mut forward: Vec<Vec<bool>> = Vec::with_capacity(positions);
        forward.push(domain(0));
        for (i, &e) in edges.iter().enumerate() {
            let prev = &forward[i];
            let dom = domain(i + 1);
            let mut next = vec![false; n];
            let edge = graph.edge(e);
            let mut admit = |a: usize, b: usize| {
                if prev[a] && dom[b] {
                    next[b] = true;
                }
            };
            admit(edge.from, edge.to);
            if !graph.kind().is_directed() {
                admit(edge.to, edge.from);
            }
            if next.iter().all(|&v| !v) {
                return Err(WalkError::NotAdjacent {
                    edge: edge.name.clone(),
                    position: i + 1,
                });
            }
            forward.push(next);
        }
        let mut backward: Vec<Vec<bool>> = vec![Vec::new(); positions];
        backward[positions - 1] = domain(positions - 1);
        for i in (0..edges.len()).rev() {
            let succ = &backward[i + 1];
            let dom = domain(i);
            let mut prev = vec![false; n];
            let edge = graph.edge(edges[i]);
            let mut admit = |a: usize, b: usize| {
                if succ[b] && dom[a] {
                    prev[a] = true;
                }
            };
            admit(edge.from, edge.to);
            if !graph.kind().is_directed() {
                admit(edge.to, edge.from);
            }
            if prev.iter().all(|&v| !v) {
                return Err(WalkError::NotAdjacent {
                    edge: edge.name.clone(),
                    position: i,
                });
            }
            backward[i] = prev;
        }

        let mut nodes = Vec::with_capacity(positions);
        for pos in 0..positions {
            let mut candidate = None;
            for id in 0..n {
                if forward[pos][id] && backward[pos][id] {
                    if candidate.is_some() {
                        return Err(WalkError::Ambiguous(pos));
                    }
                    candidate = Some(id);
                }
            }
            match candidate {
                Some(id) => nodes.push(id),
                None => {
                    return Err(WalkError::NotAdjacent {
                        edge: graph.edge(edges[pos.min(edges.len() - 1)]).name.clone(),
                        position: pos,
                    })
                }
            }
        }

        let visited = (0..positions)
            .map(|pos| known.get(&pos).map(|&(_, vis)| vis).unwrap_or(false))
            .collect();
        Ok(Walk {
            start: nodes[0],
            steps: edges.into_iter().zip(nodes.into_iter().skip(1)).collect(),
            visited,
        })
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Node id at proper-walk position `pos` (0-based over all occurrences).
    pub fn node_at(&self, pos: usize) -> usize {
        if pos == 0 {
            self.start
        } else {
            self.steps[pos - 1].1
        }
    }

    pub fn visited_at(&self, pos: usize) -> bool {
        self.visited[pos]
    }

    /// All occurrences, visited or not.
    pub fn node_positions(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn edge_seq(&self) -> Vec<usize> {
        self.steps.iter().map(|&(e, _)| e).collect()
    }

    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.steps.iter().map(|&(e, _)| e).collect()
    }

    /// First and last occurrence coincide.
    pub fn is_closed(&self) -> bool {
        self.node_at(self.node_positions() - 1) == self.start
    }

    pub fn start_node(&self) -> usize {
        self.start
    }

    pub fn end_node(&self) -> usize {
        self.node_at(self.node_positions() - 1)
    }

    /// Positions whose occurrence counts as a visit. For a closed walk the
    /// coinciding endpoints count once: the final occurrence folds into
    /// position 0.
    pub fn visited_positions(&self) -> Vec<usize> {
        let last = self.node_positions() - 1;
        let closed = self.is_closed() && last > 0;
        let mut out = Vec::new();
        for pos in 0..=last {
            let vis = if closed && pos == 0 {
                self.visited[0] || self.visited[last]
            } else if closed && pos == last {
                false
            } else {
                self.visited[pos]
            };
            if vis {
                out.push(pos);
            }
        }
        out
    }

    /// The visited-node sequence.
    pub fn visited_seq(&self) -> Vec<usize> {
        self.visited_positions()
            .into_iter()
            .map(|p| self.node_at(p))
            .collect()
    }

    pub fn visited_set(&self) -> BTreeSet<usize> {
        self.visited_seq().into_iter().collect()
    }

    pub fn visits_count(&self, node: usize) -> usize {
        self.visited_seq().iter().filter(|&&v| v == node).count()
    }

    /// Occurrences in the proper walk, coinciding endpoints counted once.
    pub fn traversals_count(&self, node: usize) -> usize {
        let last = self.node_positions() - 1;
        let upper = if self.is_closed() && last > 0 {
            last
        } else {
            last + 1
        };
        (0..upper).filter(|&p| self.node_at(p) == node).count()
    }

    /// Prefix ending at the `i`-th visited node (0-based).
    pub fn prefix_le(&self, i: usize) -> Walk {
        let pos = self.visited_positions()[i];
        Walk {
            start: self.start,
            steps: self.steps[..pos].to_vec(),
            visited: self.visited[..=pos].to_vec(),
        }
    }

    /// Like `prefix_le` but the final node occurrence no longer counts:
    /// same edges, one fewer visit.
    pub fn prefix_lt(&self, i: usize) -> Walk {
        let mut w = self.prefix_le(i);
        *w.visited.last_mut().expect("prefix keeps its end") = false;
        w
    }

    /// The `i`-th visited node.
    pub fn visited_node(&self, i: usize) -> usize {
        self.node_at(self.visited_positions()[i])
    }

    /// Marks every occurrence visited; reconstruction in reverse.
    pub fn fully_visited(&self) -> Walk {
        Walk {
            start: self.start,
            steps: self.steps.clone(),
            visited: vec![true; self.visited.len()],
        }
    }

    /// Walk text: ids in order, `!` marking non-visited occurrences.
    pub fn to_text(&self, graph: &Graph) -> String {
        let mut out = String::new();
        for pos in 0..self.node_positions() {
            if pos > 0 {
                let (e, _) = self.steps[pos - 1];
                out.push(' ');
                out.push_str(&graph.edge(e).name);
                out.push(' ');
            }
            out.push_str(graph.node_name(self.node_at(pos)));
            if !self.visited[pos] {
                out.push('!');
            }
        }
        out
    }

    /// Display form that drops non-visited occurrences.
    pub fn to_display(&self, graph: &Graph) -> String {
        let mut parts = Vec::new();
        for pos in 0..self.node_positions() {
            if pos > 0 {
                parts.push(graph.edge(self.steps[pos - 1].0).name.clone());
            }
            if self.visited[pos] {
                parts.push(graph.node_name(self.node_at(pos)).to_string());
            }
        }
        format!("({})", parts.join(","))
    }
}

/// True when the token sequence denotes some walk of the graph, even one
/// whose reconstruction is ambiguous.
pub fn is_valid_walk(graph: &Graph, tokens: &[WalkToken]) -> Result<bool, WalkError> {
    match Walk::from_tokens(graph, tokens) {
        Ok(_) | Err(WalkError::Ambiguous(_)) => Ok(true),
        Err(WalkError::NotAdjacent { .. }) | Err(WalkError::NotAlternating(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The originating proper walk of a token sequence: every occurrence made
/// explicit and visited.
pub fn originating_proper_walk(graph: &Graph, tokens: &[WalkToken]) -> Result<Walk, WalkError> {
    Ok(Walk::from_tokens(graph, tokens)?.fully_visited())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cost function {function:?} has no value for {element:?}")]
pub struct BindingError {
    pub function: String,
    pub element: String,
}

/// Lifts a cost function over a walk: edge-domain functions sum over the
/// edge sequence with multiplicity, node-domain functions over the visited
/// sequence.
pub fn lift_cost(graph: &Graph, c: &CostFunction, walk: &Walk) -> Result<Rat, BindingError> {
    let mut total = Rat::zero();
    match c.domain {
        CostDomain::Edges => {
            for e in walk.edge_seq() {
                total += c.get(e).ok_or_else(|| BindingError {
                    function: c.name.clone(),
                    element: graph.edge(e).name.clone(),
                })?;
            }
        }
        CostDomain::Nodes => {
            for v in walk.visited_seq() {
                total += c.get(v).ok_or_else(|| BindingError {
                    function: c.name.clone(),
                    element: graph.node_name(v).to_string(),
                })?;
            }
        }
    }
    Ok(total)
}

/// Sum of a node cost function over the nodes the walk never visits.
pub fn complement_cost(
    graph: &Graph,
    p: &CostFunction,
    walk: &Walk,
) -> Result<Rat, BindingError> {
    debug_assert_eq!(p.domain, CostDomain::Nodes);
    let visited = walk.visited_set();
    let mut total = Rat::zero();
    for v in 0..graph.node_count() {
        if !visited.contains(&v) {
            total += p.get(v).ok_or_else(|| BindingError {
                function: p.name.clone(),
                element: graph.node_name(v).to_string(),
            })?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rat::rat;

    fn fig1() -> fixtures::Fig1 {
        fixtures::fig1()
    }

    #[test]
    fn edge_costs_of_first_walk() {
        let f = fig1();
        let s1 = f.s1();
        let edge_only = lift_cost(&f.graph, &f.edge_cost, &s1).unwrap();
        assert_eq!(edge_only, rat(8));
    }

    #[test]
    fn combined_costs_of_the_three_walks() {
        let f = fig1();
        for (walk, expected) in [(f.s1(), 12), (f.s2(), 13), (f.s3(), 13)] {
            let total = lift_cost(&f.graph, &f.edge_cost, &walk).unwrap()
                + lift_cost(&f.graph, &f.node_cost, &walk).unwrap();
            assert_eq!(total, rat(expected));
        }
    }

    #[test]
    fn first_walk_reconstructs_to_its_proper_form() {
        let f = fig1();
        let s1 = f.s1();
        let id = |n: &str| f.graph.node_id(n).unwrap();
        let nodes: Vec<usize> = (0..s1.node_positions()).map(|p| s1.node_at(p)).collect();
        assert_eq!(
            nodes,
            vec![id("v1"), id("v2"), id("v3"), id("v2"), id("v4"), id("v1")]
        );
        // The occurrences dropped in the display form are exactly the
        // second v2 and the closing v1.
        let flags: Vec<bool> = (0..s1.node_positions()).map(|p| s1.visited_at(p)).collect();
        assert_eq!(flags, vec![true, true, true, false, true, false]);
        assert!(s1.is_closed());
    }

    #[test]
    fn visits_and_traversals() {
        let f = fig1();
        let id = |n: &str| f.graph.node_id(n).unwrap();
        let s1 = f.s1();
        let s2 = f.s2();
        assert_eq!(s2.visits_count(id("v2")), 2);
        assert_eq!(s1.visits_count(id("v2")), 1);
        assert_eq!(s1.traversals_count(id("v2")), 2);
        assert_eq!(s1.traversals_count(id("v3")), 1);
        assert_eq!(s1.visits_count(id("v1")), 1);
        assert_eq!(s1.traversals_count(id("v1")), 1);
        for v in 0..f.graph.node_count() {
            assert!(s1.visits_count(v) <= s1.traversals_count(v));
            assert!(s2.visits_count(v) <= s2.traversals_count(v));
        }
    }

    #[test]
    fn traversal_sum_matches_edge_count() {
        let f = fig1();
        for walk in [f.s1(), f.s2(), f.s3()] {
            let total: usize = (0..f.graph.node_count())
                .map(|v| walk.traversals_count(v))
                .sum();
            let expected = if walk.is_closed() {
                walk.len()
            } else {
                walk.len() + 1
            };
            assert_eq!(total, expected);
        }
    }

    #[test]
    fn closed_and_open_walk_parts() {
        let f = fig1();
        let s3 = f.s3();
        let id = |n: &str| f.graph.node_id(n).unwrap();
        // S3 returns to v1 over the parallel edge e5, so it is closed and
        // v1 counts once, which is what makes its node-cost part 4.
        assert!(s3.is_closed());
        assert_eq!(s3.start_node(), id("v1"));
        assert_eq!(s3.end_node(), id("v1"));
        assert_eq!(s3.visits_count(id("v1")), 1);
        let p = s3.prefix_le(2);
        assert!(!p.is_closed());
        assert_eq!(p.start_node(), id("v1"));
        assert_eq!(p.end_node(), id("v3"));
        assert_eq!(p.visited_seq(), vec![id("v1"), id("v2"), id("v3")]);
    }

    #[test]
    fn prefixes_keep_edges() {
        let f = fig1();
        let s2 = f.s2();
        let le1 = s2.prefix_le(1);
        assert_eq!(le1.edge_seq().len(), 1);
        assert_eq!(le1.visited_seq().len(), 2);
        let lt1 = s2.prefix_lt(1);
        assert_eq!(lt1.edge_seq().len(), 1);
        assert_eq!(lt1.visited_seq().len(), 1);
        let le0 = s2.prefix_le(0);
        assert!(le0.is_empty());
        assert_eq!(le0.visited_seq(), vec![f.graph.node_id("v1").unwrap()]);
    }

    #[test]
    fn invalid_and_trivial_walks() {
        let f = fig1();
        let id = |n: &str| f.graph.node_id(n).unwrap();
        let eid = |n: &str| f.graph.edge_id(n).unwrap();
        // e2 joins v2 and v3, so starting it from v1 cannot work.
        let bad = [
            WalkToken::Node(id("v1"), true),
            WalkToken::Edge(eid("e2")),
            WalkToken::Node(id("v3"), true),
        ];
        assert_eq!(is_valid_walk(&f.graph, &bad), Ok(false));
        let single = [WalkToken::Node(id("v1"), true)];
        assert_eq!(is_valid_walk(&f.graph, &single), Ok(true));
        let w = Walk::from_tokens(&f.graph, &single).unwrap();
        assert!(w.is_closed());
        assert_eq!(w.visits_count(id("v1")), 1);
    }

    #[test]
    fn ambiguous_reconstruction_is_an_error() {
        // Two nodes joined by parallel edges; an edge-only loop cannot tell
        // which endpoint it starts from.
        let g = Graph::new(
            EdgeKind::Undirected,
            &["a", "b"],
            &[("e1", "a", "b"), ("e2", "a", "b")],
        )
        .unwrap();
        let tokens = [WalkToken::Edge(0), WalkToken::Edge(1)];
        assert!(matches!(
            Walk::from_tokens(&g, &tokens),
            Err(WalkError::Ambiguous(_))
        ));
        // Still a valid walk of the graph.
        assert_eq!(is_valid_walk(&g, &tokens), Ok(true));
        // Pinning one endpoint resolves it.
        let pinned = [
            WalkToken::Node(0, true),
            WalkToken::Edge(0),
            WalkToken::Edge(1),
        ];
        let w = Walk::from_tokens(&g, &pinned).unwrap();
        assert_eq!(w.node_at(1), 1);
        assert_eq!(w.node_at(2), 0);
    }

    #[test]
    fn proper_walk_reconstruction_is_idempotent() {
        let f = fig1();
        for walk in [f.s1(), f.s2(), f.s3()] {
            let proper = walk.fully_visited();
            let again = proper.fully_visited();
            assert_eq!(proper, again);
        }
    }

    #[test]
    fn complement_cost_partition_identity() {
        let f = fig1();
        let ones = CostFunction::constant("p", CostDomain::Nodes, f.graph.node_count(), rat(1));
        let s1 = f.s1();
        assert_eq!(complement_cost(&f.graph, &ones, &s1).unwrap(), rat(0));
        let short = Walk::proper(
            &f.graph,
            &[
                f.graph.node_id("v1").unwrap(),
                f.graph.node_id("v2").unwrap(),
            ],
            &[f.graph.edge_id("e1").unwrap()],
        )
        .unwrap();
        assert_eq!(complement_cost(&f.graph, &ones, &short).unwrap(), rat(2));
        // p(V_S) + complement = p(V) on each of the fixture walks.
        for walk in [f.s1(), f.s2(), f.s3(), short] {
            let visited: Rat = walk
                .visited_set()
                .iter()
                .map(|&v| ones.get(v).unwrap().clone())
                .sum();
            let rest = complement_cost(&f.graph, &ones, &walk).unwrap();
            assert_eq!(visited + rest, rat(f.graph.node_count() as i64));
        }
    }

    #[test]
    fn directed_edges_respect_direction() {
        let g = Graph::new(
            EdgeKind::Directed,
            &["a", "b"],
            &[("e1", "a", "b")],
        )
        .unwrap();
        let forward = [
            WalkToken::Node(0, true),
            WalkToken::Edge(0),
            WalkToken::Node(1, true),
        ];
        let backward = [
            WalkToken::Node(1, true),
            WalkToken::Edge(0),
            WalkToken::Node(0, true),
        ];
        assert_eq!(is_valid_walk(&g, &forward), Ok(true));
        assert_eq!(is_valid_walk(&g, &backward), Ok(false));
    }

    #[test]
    fn bidirected_requires_reverses() {
        let missing = Graph::new(EdgeKind::Bidirected, &["a", "b"], &[("e1", "a", "b")]);
        assert!(matches!(missing, Err(ModelError::MissingReverse(_))));
        let ok = Graph::new(
            EdgeKind::Bidirected,
            &["a", "b"],
            &[("e1", "a", "b"), ("e2", "b", "a")],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn walk_text_round_trips_the_display_forms() {
        let f = fig1();
        let s1 = f.s1();
        assert_eq!(s1.to_display(&f.graph), "(v1,e1,v2,e2,v3,e2,e3,v4,e4)");
        assert_eq!(s1.to_text(&f.graph), "v1 e1 v2 e2 v3 e2 v2! e3 v4 e4 v1!");
    }
}
