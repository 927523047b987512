//! Catalog of attribute names, their admissible values, and one-line
//! meanings, used for diagnostics and the explain output.

use crate::syntax::FieldKind;

pub struct AttrInfo {
    pub field: FieldKind,
    pub name: &'static str,
    /// Value kind as written in definitions.
    pub kind: &'static str,
    /// Admissible value forms, for diagnostics.
    pub values: &'static str,
    pub meaning: &'static str,
}

pub const ATTRIBUTES: &[AttrInfo] = &[
    AttrInfo {
        field: FieldKind::Alpha,
        name: "count",
        kind: "int | expression",
        values: "=1, =Θ(1), =k, ≥1",
        meaning: "how many walks form a solution: exactly one, a fixed \
                  parameter, a named count given with the input, or at least one",
    },
    AttrInfo {
        field: FieldKind::Beta,
        name: "traversals",
        kind: "int | expression",
        values: "=1, =d, =d(v), ≥1, ≥0, ≤1, ≥d(v), ≥d(v) ∈ {0,1}",
        meaning: "how many times each node must appear in the originating walk",
    },
    AttrInfo {
        field: FieldKind::Beta,
        name: "visits",
        kind: "string",
        values: "always, once, ≥once, ≤once",
        meaning: "how visits relate to traversals at each traversed node; \
                  absent means every traversal counts as a visit",
    },
    AttrInfo {
        field: FieldKind::Beta,
        name: "group",
        kind: "string",
        values: "partition(once), partition(≥once), cover(once), cover(≥once), \
                 bipartition(…), k-partition(…)",
        meaning: "node clusters with a per-cluster visit demand: each cluster \
                  is visited once or at least once",
    },
    AttrInfo {
        field: FieldKind::Beta,
        name: "covering",
        kind: "string",
        values: "all(c, ≤b), subset(c, ≤b)",
        meaning: "every in-scope node must lie within a shortest-path distance \
                  bound of some visited node",
    },
    AttrInfo {
        field: FieldKind::Gamma,
        name: "start",
        kind: "bool",
        values: "True, False",
        meaning: "whether the walk must begin at a node given with the input",
    },
    AttrInfo {
        field: FieldKind::Gamma,
        name: "end",
        kind: "bool",
        values: "True, False",
        meaning: "whether the walk must end at a node given with the input",
    },
    AttrInfo {
        field: FieldKind::Gamma,
        name: "circuit",
        kind: "bool",
        values: "True, False",
        meaning: "whether the walk must return to its first node",
    },
    AttrInfo {
        field: FieldKind::Gamma,
        name: "graphtype",
        kind: "string",
        values: "complete, strongly connected, planar, path, cycle, \
                 binary tree, tree, tree(b)",
        meaning: "structure demanded of the input graph; absent means any graph",
    },
    AttrInfo {
        field: FieldKind::Gamma,
        name: "edgetype",
        kind: "string",
        values: "undirected, directed, bidirected",
        meaning: "whether edges are unordered pairs, ordered pairs, or ordered \
                  pairs present in both directions",
    },
    AttrInfo {
        field: FieldKind::Gamma,
        name: "precedences",
        kind: "string",
        values: "atomic, arbitrary",
        meaning: "order demands between visits: given node pairs must be \
                  visited in order, or constraints described in an extension note",
    },
    AttrInfo {
        field: FieldKind::Gamma,
        name: "cluster",
        kind: "string",
        values: "partition(order, sequence), cover(order, sequence)",
        meaning: "the walk must finish each node cluster before entering the \
                  next; parameters fix cluster order and entry/exit nodes",
    },
    AttrInfo {
        field: FieldKind::Delta,
        name: "property",
        kind: "string",
        values: "(identity | triangle | α-triangle | symmetric, …), metric, \
                 graphic, planar, subset planar, euclidean, \
                 euclidean fixed dim, euclidean plane, grid(m,n), shoreline",
        meaning: "declared structure of an edge-cost function",
    },
    AttrInfo {
        field: FieldKind::Delta,
        name: "partial",
        kind: "bool",
        values: "True, False",
        meaning: "whether the walk pays only a chosen part of each cost",
    },
    AttrInfo {
        field: FieldKind::Delta,
        name: "temporal",
        kind: "string",
        values: "time, position, costzone(k), poszone(k), waiting, kinetic",
        meaning: "dependence of the cost on arrival time or walk position",
    },
];

pub fn attr_info(field: FieldKind, name: &str) -> Option<&'static AttrInfo> {
    ATTRIBUTES
        .iter()
        .find(|a| a.field == field && a.name == name)
}

pub fn field_names(field: FieldKind) -> Vec<&'static str> {
    ATTRIBUTES
        .iter()
        .filter(|a| a.field == field)
        .map(|a| a.name)
        .collect()
}

/// Value words that identify an attribute of the field on their own.
pub fn value_words(field: FieldKind) -> Vec<(&'static str, &'static str)> {
    match field {
        FieldKind::Beta => vec![
            ("always", "visits"),
            ("once", "visits"),
            ("partition", "group"),
            ("cover", "group"),
            ("bipartition", "group"),
            ("k-partition", "group"),
            ("all", "covering"),
            ("subset", "covering"),
        ],
        FieldKind::Gamma => vec![
            ("complete", "graphtype"),
            ("strongly connected", "graphtype"),
            ("planar", "graphtype"),
            ("path", "graphtype"),
            ("cycle", "graphtype"),
            ("binary tree", "graphtype"),
            ("tree", "graphtype"),
            ("undirected", "edgetype"),
            ("directed", "edgetype"),
            ("bidirected", "edgetype"),
            ("atomic", "precedences"),
            ("arbitrary", "precedences"),
            ("partition", "cluster"),
            ("cover", "cluster"),
        ],
        FieldKind::Delta => vec![
            ("identity", "property"),
            ("triangle", "property"),
            ("symmetric", "property"),
            ("metric", "property"),
            ("graphic", "property"),
            ("planar", "property"),
            ("subset planar", "property"),
            ("euclidean", "property"),
            ("euclid", "property"),
            ("euclidean fixed dim", "property"),
            ("euclidean plane", "property"),
            ("grid", "property"),
            ("shoreline", "property"),
            ("partial", "partial"),
            ("time", "temporal"),
            ("position", "temporal"),
            ("costzone", "temporal"),
            ("poszone", "temporal"),
            ("waiting", "temporal"),
            ("kinetic", "temporal"),
        ],
        _ => Vec::new(),
    }
}
