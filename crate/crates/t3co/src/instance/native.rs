//! The `.t3i` sectioned instance format.
//!
//! Line-oriented and diff-friendly. `#` starts a comment. Sections:
//!
//! ```text
//! NODES
//! v1 v2 v3 v4
//! EDGES undirected
//! e1 v1 v2
//! COSTS c ℝ≥0
//! e1 2
//! COSTS d
//! v1 10
//! v2 inf
//! PARAMS
//! b = 3
//! GROUPS
//! 1: v1 v2; start = v1; end = v2
//! ENDPOINTS
//! start v1
//! end v4
//! PRECEDENCES
//! v1 v3
//! COORDS
//! v1 0 0
//! TEMPORAL c time
//! e1: 0 2; 5 4
//! KINETIC
//! v1 0 0 1 0.5
//! ```
//!
//! Cost values are exact rationals (`7`, `3/4`, `2.5`); `inf` marks an
//! unbounded entry in node tables. The optional range tag on a COSTS
//! header is enforced against every finite value. When both `r` and `d`
//! node tables are present they are read as time windows and must
//! satisfy r(v) ≤ d(v).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::{range_admits, Group, Instance, KineticNode, TemporalKey, TemporalTable};
use crate::model::{CostDomain, CostFunction, EdgeKind, Graph};
use crate::rat::{fmt_rat, parse_ext, parse_rat, ExtRat, Rat};
use crate::syntax::RangeTag;

/// A malformed instance file, with the offending line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct SchemaError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> SchemaError {
    SchemaError {
        line,
        msg: msg.into(),
    }
}

struct RawCosts {
    name: String,
    range: Option<RangeTag>,
    header_line: usize,
    entries: Vec<(usize, String, ExtRat)>,
}

struct RawTemporal {
    name: String,
    key: TemporalKey,
    header_line: usize,
    rows: Vec<(usize, String, Vec<(Rat, Rat)>)>,
}

enum Section {
    Nodes,
    Edges,
    Costs(usize),
    Params,
    Groups,
    Endpoints,
    Precedences,
    Coords,
    Temporal(usize),
    Kinetic,
}

fn range_tag(word: &str) -> Option<RangeTag> {
    Some(match word {
        "ℝ" | "R" => RangeTag::R,
        "ℝ≥0" | "R>=0" => RangeTag::RNonNeg,
        "ℝ>0" | "R>0" => RangeTag::RPos,
        "ℤ" | "Z" => RangeTag::Z,
        "ℤ≥0" | "Z>=0" => RangeTag::ZNonNeg,
        "ℤ>0" | "Z>0" => RangeTag::ZPos,
        _ => return None,
    })
}

fn range_word(tag: &RangeTag) -> &'static str {
    match tag {
        RangeTag::R => "ℝ",
        RangeTag::RNonNeg => "ℝ≥0",
        RangeTag::RPos => "ℝ>0",
        RangeTag::Z => "ℤ",
        RangeTag::ZNonNeg => "ℤ≥0",
        RangeTag::ZPos => "ℤ>0",
        RangeTag::Set(_) => "ℝ",
    }
}

/// Parses the native `.t3i` format.
pub fn load_native(text: &str) -> Result<Instance, SchemaError> {
    let mut nodes: Vec<String> = Vec::new();
    let mut edge_kind = EdgeKind::Undirected;
    let mut edge_kind_line = 0;
    let mut edges: Vec<(usize, String, String, String)> = Vec::new();
    let mut costs: Vec<RawCosts> = Vec::new();
    let mut params: BTreeMap<String, Rat> = BTreeMap::new();
    let mut groups: Vec<(usize, Group, Vec<(String, usize, Vec<String>)>)> = Vec::new();
    let mut endpoints: Vec<(usize, String, String)> = Vec::new();
    let mut precedences: Vec<(usize, String, String)> = Vec::new();
    let mut coords: Vec<(usize, String, f64, f64)> = Vec::new();
    let mut temporal: Vec<RawTemporal> = Vec::new();
    let mut kinetic: Vec<(usize, String, KineticNode)> = Vec::new();
    let mut saw_kinetic = false;

    let mut section: Option<Section> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.split_once('#') {
            Some((before, _)) => before.trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap();
        match head {
            "NODES" => {
                section = Some(Section::Nodes);
                continue;
            }
            "EDGES" => {
                let kind = words.next().unwrap_or("undirected");
                edge_kind = match kind {
                    "undirected" => EdgeKind::Undirected,
                    "directed" => EdgeKind::Directed,
                    "bidirected" => EdgeKind::Bidirected,
                    other => return Err(err(lineno, format!("unknown edge kind {other:?}"))),
                };
                edge_kind_line = lineno;
                section = Some(Section::Edges);
                continue;
            }
            "COSTS" => {
                let name = words
                    .next()
                    .ok_or_else(|| err(lineno, "COSTS needs a table name"))?;
                let range = match words.next() {
                    None => None,
                    Some(w) => Some(
                        range_tag(w)
                            .ok_or_else(|| err(lineno, format!("unknown range tag {w:?}")))?,
                    ),
                };
                if costs.iter().any(|c| c.name == name) {
                    return Err(err(lineno, format!("duplicate COSTS section for {name:?}")));
                }
                costs.push(RawCosts {
                    name: name.to_string(),
                    range,
                    header_line: lineno,
                    entries: Vec::new(),
                });
                section = Some(Section::Costs(costs.len() - 1));
                continue;
            }
            "PARAMS" => {
                section = Some(Section::Params);
                continue;
            }
            "GROUPS" | "CLUSTERS" => {
                section = Some(Section::Groups);
                continue;
            }
            "ENDPOINTS" => {
                section = Some(Section::Endpoints);
                continue;
            }
            "PRECEDENCES" => {
                section = Some(Section::Precedences);
                continue;
            }
            "COORDS" => {
                section = Some(Section::Coords);
                continue;
            }
            "TEMPORAL" => {
                let name = words
                    .next()
                    .ok_or_else(|| err(lineno, "TEMPORAL needs a table name"))?;
                let key = match words.next() {
                    Some("time") => TemporalKey::Time,
                    Some("position") => TemporalKey::Position,
                    other => {
                        return Err(err(
                            lineno,
                            format!("TEMPORAL key must be time or position, found {other:?}"),
                        ))
                    }
                };
                if temporal.iter().any(|t| t.name == name) {
                    return Err(err(lineno, format!("duplicate TEMPORAL section for {name:?}")));
                }
                temporal.push(RawTemporal {
                    name: name.to_string(),
                    key,
                    header_line: lineno,
                    rows: Vec::new(),
                });
                section = Some(Section::Temporal(temporal.len() - 1));
                continue;
            }
            "KINETIC" => {
                saw_kinetic = true;
                section = Some(Section::Kinetic);
                continue;
            }
            _ => {}
        }

        match section {
            None => return Err(err(lineno, "content before the first section header")),
            Some(Section::Nodes) => {
                for w in line.split_whitespace() {
                    nodes.push(w.to_string());
                }
            }
            Some(Section::Edges) => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let [name, from, to] = parts[..] else {
                    return Err(err(lineno, "an edge line is: id from to"));
                };
                edges.push((lineno, name.to_string(), from.to_string(), to.to_string()));
            }
            Some(Section::Costs(i)) => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let [elem, value] = parts[..] else {
                    return Err(err(lineno, "a cost line is: element value"));
                };
                let value = parse_ext(value).map_err(|e| err(lineno, e.to_string()))?;
                costs[i].entries.push((lineno, elem.to_string(), value));
            }
            Some(Section::Params) => {
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| err(lineno, "a parameter line is: name = value"))?;
                let key = key.trim().to_string();
                let value = parse_rat(value).map_err(|e| err(lineno, e.to_string()))?;
                if params.insert(key.clone(), value).is_some() {
                    return Err(err(lineno, format!("duplicate parameter {key:?}")));
                }
            }
            Some(Section::Groups) => {
                let (index, rest) = line
                    .split_once(':')
                    .ok_or_else(|| err(lineno, "a group line is: index: nodes [; start = …]"))?;
                let index: usize = index
                    .trim()
                    .parse()
                    .map_err(|_| err(lineno, "group index must be a number"))?;
                let mut parts = rest.split(';');
                let members: Vec<String> = parts
                    .next()
                    .unwrap()
                    .split_whitespace()
                    .map(str::to_string)
                    .collect();
                let mut named: Vec<(String, usize, Vec<String>)> =
                    vec![("members".into(), lineno, members)];
                for part in parts {
                    let (key, value) = part
                        .split_once('=')
                        .ok_or_else(|| err(lineno, "group options are: key = nodes"))?;
                    let key = key.trim();
                    if !matches!(key, "start" | "end" | "terminals") {
                        return Err(err(lineno, format!("unknown group option {key:?}")));
                    }
                    named.push((
                        key.to_string(),
                        lineno,
                        value.split_whitespace().map(str::to_string).collect(),
                    ));
                }
                groups.push((
                    lineno,
                    Group {
                        index,
                        nodes: BTreeSet::new(),
                        start: None,
                        end: None,
                        terminals: BTreeSet::new(),
                    },
                    named,
                ));
            }
            Some(Section::Coords) => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let [node, x, y] = parts[..] else {
                    return Err(err(lineno, "a coordinate line is: node x y"));
                };
                let x: f64 = x.parse().map_err(|_| err(lineno, "bad x coordinate"))?;
                let y: f64 = y.parse().map_err(|_| err(lineno, "bad y coordinate"))?;
                coords.push((lineno, node.to_string(), x, y));
            }
            Some(Section::Temporal(i)) => {
                let (elem, rest) = line
                    .split_once(':')
                    .ok_or_else(|| err(lineno, "a temporal line is: edge: from value; …"))?;
                let mut pairs = Vec::new();
                for piece in rest.split(';') {
                    let parts: Vec<&str> = piece.split_whitespace().collect();
                    let [from, value] = parts[..] else {
                        return Err(err(lineno, "each temporal piece is: breakpoint value"));
                    };
                    let from = parse_rat(from).map_err(|e| err(lineno, e.to_string()))?;
                    let value = parse_rat(value).map_err(|e| err(lineno, e.to_string()))?;
                    pairs.push((from, value));
                }
                if pairs.first().is_none_or(|(b, _)| !num::Zero::is_zero(b)) {
                    return Err(err(lineno, "the first breakpoint must be 0"));
                }
                if pairs.windows(2).any(|w| w[0].0 >= w[1].0) {
                    return Err(err(lineno, "breakpoints must increase"));
                }
                temporal[i].rows.push((lineno, elem.trim().to_string(), pairs));
            }
            Some(Section::Kinetic) => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let [node, x, y, vx, vy] = parts[..] else {
                    return Err(err(lineno, "a kinetic line is: node x y vx vy"));
                };
                let parse = |s: &str| s.parse::<f64>().map_err(|_| err(lineno, "bad number"));
                kinetic.push((
                    lineno,
                    node.to_string(),
                    KineticNode {
                        x: parse(x)?,
                        y: parse(y)?,
                        vx: parse(vx)?,
                        vy: parse(vy)?,
                    },
                ));
            }
        }
    }

    let edge_triples: Vec<(String, String, String)> = edges
        .iter()
        .map(|(_, n, f, t)| (n.clone(), f.clone(), t.clone()))
        .collect();
    let graph = Graph::new(edge_kind, &nodes, &edge_triples).map_err(|e| {
        let line = if nodes.is_empty() { 1 } else { edge_kind_line.max(1) };
        err(line, e.to_string())
    })?;

    let mut inst = Instance::bare(graph);
    inst.params = params;

    for raw in costs {
        let domain = infer_domain(&inst.graph, &raw)?;
        let size = match domain {
            CostDomain::Edges => inst.graph.edge_count(),
            CostDomain::Nodes => inst.graph.node_count(),
        };
        let mut table = CostFunction::new(&raw.name, domain, size);
        let mut inf: BTreeSet<usize> = BTreeSet::new();
        for (line, elem, value) in &raw.entries {
            let id = match domain {
                CostDomain::Edges => inst.graph.edge_id(elem),
                CostDomain::Nodes => inst.graph.node_id(elem),
            }
            .ok_or_else(|| err(*line, format!("unknown element {elem:?}")))?;
            match value {
                ExtRat::Finite(v) => {
                    if let Some(tag) = &raw.range {
                        if !range_admits(tag, v) {
                            return Err(err(
                                *line,
                                format!(
                                    "value {} lies outside the declared range {}",
                                    fmt_rat(v),
                                    range_word(tag)
                                ),
                            ));
                        }
                    }
                    if table.get(id).is_some() {
                        return Err(err(*line, format!("duplicate value for {elem:?}")));
                    }
                    table.set(id, v.clone());
                }
                ExtRat::Inf => {
                    if domain == CostDomain::Edges {
                        return Err(err(*line, "edge costs must be finite"));
                    }
                    inf.insert(id);
                }
            }
        }
        if let Some(tag) = raw.range {
            inst.ranges.insert(raw.name.clone(), tag);
        }
        if !inf.is_empty() {
            inst.inf_entries.insert(raw.name.clone(), inf);
        }
        inst.costs.insert(raw.name, table);
    }

    for raw in temporal {
        if inst.costs.contains_key(&raw.name) {
            return Err(err(
                raw.header_line,
                format!("table {:?} is both static and temporal", raw.name),
            ));
        }
        let mut rows = BTreeMap::new();
        for (line, elem, pairs) in raw.rows {
            let id = inst
                .graph
                .edge_id(&elem)
                .ok_or_else(|| err(line, format!("unknown edge {elem:?}")))?;
            if rows.insert(id, pairs).is_some() {
                return Err(err(line, format!("duplicate temporal row for {elem:?}")));
            }
        }
        inst.temporal.insert(raw.name, TemporalTable { key: raw.key, rows });
    }

    if !groups.is_empty() {
        let mut seen = BTreeSet::new();
        for (line, mut group, named) in groups {
            if !seen.insert(group.index) {
                return Err(err(line, format!("duplicate group index {}", group.index)));
            }
            for (key, line, names) in named {
                let ids: Vec<usize> = names
                    .iter()
                    .map(|n| {
                        inst.graph
                            .node_id(n)
                            .ok_or_else(|| err(line, format!("unknown node {n:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                match key.as_str() {
                    "members" => group.nodes = ids.into_iter().collect(),
                    "terminals" => group.terminals = ids.into_iter().collect(),
                    "start" | "end" => {
                        let [id] = ids[..] else {
                            return Err(err(line, format!("{key} takes exactly one node")));
                        };
                        if key == "start" {
                            group.start = Some(id);
                        } else {
                            group.end = Some(id);
                        }
                    }
                    _ => unreachable!("filtered at parse"),
                }
            }
            for opt in [group.start, group.end] {
                if let Some(v) = opt {
                    if !group.nodes.contains(&v) {
                        return Err(err(
                            line,
                            format!(
                                "{} is not a member of group {}",
                                inst.graph.node_name(v),
                                group.index
                            ),
                        ));
                    }
                }
            }
            if !group.terminals.is_subset(&group.nodes) {
                return Err(err(line, format!("terminals must be members of group {}", group.index)));
            }
            inst.groups.push(group);
        }
        inst.groups.sort_by_key(|g| g.index);
    }

    if !coords.is_empty() {
        let mut table = vec![None; inst.graph.node_count()];
        for (line, node, x, y) in coords {
            let id = inst
                .graph
                .node_id(&node)
                .ok_or_else(|| err(line, format!("unknown node {node:?}")))?;
            if table[id].replace((x, y)).is_some() {
                return Err(err(line, format!("duplicate coordinates for {node:?}")));
            }
        }
        if let Some(id) = table.iter().position(|c| c.is_none()) {
            return Err(err(
                1,
                format!("COORDS misses node {:?}", inst.graph.node_name(id)),
            ));
        }
        inst.coords = Some(table.into_iter().map(Option::unwrap).collect());
    }

    if saw_kinetic {
        let mut table: Vec<Option<KineticNode>> = vec![None; inst.graph.node_count()];
        for (line, node, k) in kinetic {
            let id = inst
                .graph
                .node_id(&node)
                .ok_or_else(|| err(line, format!("unknown node {node:?}")))?;
            if table[id].replace(k).is_some() {
                return Err(err(line, format!("duplicate kinetic data for {node:?}")));
            }
        }
        if let Some(id) = table.iter().position(|k| k.is_none()) {
            return Err(err(
                1,
                format!("KINETIC misses node {:?}", inst.graph.node_name(id)),
            ));
        }
        inst.kinetic = Some(table.into_iter().map(Option::unwrap).collect());
    }

    check_windows(&inst)?;
    Ok(inst)
}

fn infer_domain(graph: &Graph, raw: &RawCosts) -> Result<CostDomain, SchemaError> {
    let mut domain: Option<CostDomain> = None;
    for (line, elem, _) in &raw.entries {
        let here = if graph.edge_id(elem).is_some() {
            CostDomain::Edges
        } else if graph.node_id(elem).is_some() {
            CostDomain::Nodes
        } else {
            return Err(err(*line, format!("unknown element {elem:?}")));
        };
        match domain {
            None => domain = Some(here),
            Some(d) if d != here => {
                return Err(err(
                    *line,
                    format!("table {:?} mixes node and edge elements", raw.name),
                ))
            }
            _ => {}
        }
    }
    domain.ok_or_else(|| err(raw.header_line, format!("table {:?} has no entries", raw.name)))
}

fn check_windows(inst: &Instance) -> Result<(), SchemaError> {
    let (Some(r), Some(d)) = (inst.costs.get("r"), inst.costs.get("d")) else {
        return Ok(());
    };
    if r.domain != CostDomain::Nodes || d.domain != CostDomain::Nodes {
        return Ok(());
    }
    for v in 0..inst.graph.node_count() {
        let (Some(rv), Some(dv)) = (r.get(v), inst.node_value_ext("d", v)) else {
            continue;
        };
        if let ExtRat::Finite(dv) = dv {
            if *rv > dv {
                return Err(err(
                    1,
                    format!(
                        "time window of {} is empty: r = {} exceeds d = {}",
                        inst.graph.node_name(v),
                        fmt_rat(rv),
                        fmt_rat(&dv)
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// Renders the canonical `.t3i` text: fixed section order, sorted tables.
pub fn save_native(inst: &Instance) -> String {
    let mut out = String::new();
    let g = &inst.graph;

    out.push_str("NODES\n");
    let _ = writeln!(out, "{}", g.node_names().join(" "));

    let kind = match g.kind() {
        EdgeKind::Undirected => "undirected",
        EdgeKind::Directed => "directed",
        EdgeKind::Bidirected => "bidirected",
    };
    let _ = writeln!(out, "EDGES {kind}");
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.name, g.node_name(e.from), g.node_name(e.to));
    }

    for (name, table) in &inst.costs {
        match inst.ranges.get(name) {
            Some(tag) => {
                let _ = writeln!(out, "COSTS {name} {}", range_word(tag));
            }
            None => {
                let _ = writeln!(out, "COSTS {name}");
            }
        }
        for id in 0..table.len() {
            let elem = match table.domain {
                CostDomain::Edges => g.edge(id).name.as_str(),
                CostDomain::Nodes => g.node_name(id),
            };
            if let Some(v) = table.get(id) {
                let _ = writeln!(out, "{elem} {}", fmt_rat(v));
            } else if inst.inf_entries.get(name).is_some_and(|s| s.contains(&id)) {
                let _ = writeln!(out, "{elem} inf");
            }
        }
    }

    if !inst.params.is_empty() {
        out.push_str("PARAMS\n");
        for (k, v) in &inst.params {
            let _ = writeln!(out, "{k} = {}", fmt_rat(v));
        }
    }

    if !inst.groups.is_empty() {
        out.push_str("GROUPS\n");
        for group in &inst.groups {
            let members: Vec<&str> = group.nodes.iter().map(|&v| g.node_name(v)).collect();
            let _ = write!(out, "{}: {}", group.index, members.join(" "));
            if let Some(v) = group.start {
                let _ = write!(out, "; start = {}", g.node_name(v));
            }
            if let Some(v) = group.end {
                let _ = write!(out, "; end = {}", g.node_name(v));
            }
            if !group.terminals.is_empty() {
                let terms: Vec<&str> = group.terminals.iter().map(|&v| g.node_name(v)).collect();
                let _ = write!(out, "; terminals = {}", terms.join(" "));
            }
            out.push('\n');
        }
    }

    if let Some(coords) = &inst.coords {
        out.push_str("COORDS\n");
        for (v, (x, y)) in coords.iter().enumerate() {
            let _ = writeln!(out, "{} {x} {y}", g.node_name(v));
        }
    }

    for (name, table) in &inst.temporal {
        let key = match table.key {
            TemporalKey::Time => "time",
            TemporalKey::Position => "position",
        };
        let _ = writeln!(out, "TEMPORAL {name} {key}");
        for (&edge, pairs) in &table.rows {
            let pieces: Vec<String> = pairs
                .iter()
                .map(|(b, v)| format!("{} {}", fmt_rat(b), fmt_rat(v)))
                .collect();
            let _ = writeln!(out, "{}: {}", g.edge(edge).name, pieces.join("; "));
        }
    }

    if let Some(kin) = &inst.kinetic {
        out.push_str("KINETIC\n");
        for (v, k) in kin.iter().enumerate() {
            let _ = writeln!(out, "{} {} {} {} {}", g.node_name(v), k.x, k.y, k.vx, k.vy);
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    const FIG1: &str = "\
# four nodes, five edges, one parallel pair
NODES
v1 v2 v3 v4
EDGES undirected
e1 v1 v2
e2 v2 v3
e3 v2 v4
e4 v4 v1
e5 v4 v1
COSTS c ℝ≥0
e1 2
e2 1
e3 2
e4 2
e5 3
COSTS c2
v1 1
v2 1
v3 1
v4 1
";

    #[test]
    fn reads_the_documented_walk_fixture() {
        let inst = load_native(FIG1).unwrap();
        assert_eq!(inst.graph.node_count(), 4);
        assert_eq!(inst.graph.edge_count(), 5);
        let c = inst.edge_cost("c").unwrap();
        assert_eq!(c.get(inst.graph.edge_id("e5").unwrap()), Some(&rat(3)));
        assert_eq!(inst.node_value("c2", 3), Some(&rat(1)));
        assert_eq!(inst.ranges.get("c"), Some(&RangeTag::RNonNeg));
    }

    #[test]
    fn saving_and_reloading_is_lossless() {
        let mut inst = load_native(FIG1).unwrap();
        inst.params.insert("b".into(), ratio(7, 2));
        inst.groups.push(Group {
            index: 1,
            nodes: [0, 1].into(),
            start: Some(0),
            end: None,
            terminals: [1].into(),
        });
        inst.groups.push(Group {
            index: 2,
            nodes: [2, 3].into(),
            start: None,
            end: None,
            terminals: BTreeSet::new(),
        });
        inst.coords = Some(vec![(0.0, 0.0), (3.0, 0.0), (0.0, 4.0), (1.5, 1.5)]);

        let text = save_native(&inst);
        let back = load_native(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(save_native(&back), text);
    }

    #[test]
    fn windows_with_inf_deadlines_round_trip() {
        let text = "\
NODES
a b
EDGES undirected
ab a b
COSTS c
ab 5
COSTS r
a 0
b 7
COSTS d
a 10
b inf
";
        let inst = load_native(text).unwrap();
        assert_eq!(inst.node_value_ext("d", 1), Some(ExtRat::Inf));
        assert_eq!(inst.node_value_ext("d", 0), Some(ExtRat::Finite(rat(10))));
        let back = load_native(&save_native(&inst)).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn empty_windows_are_rejected() {
        let text = "\
NODES
a b
EDGES undirected
ab a b
COSTS c
ab 5
COSTS r
a 0
b 7
COSTS d
a 10
b 6
";
        let e = load_native(text).unwrap_err();
        assert!(e.msg.contains("time window of b is empty"), "{e}");
    }

    #[test]
    fn schema_errors_name_the_line() {
        let bad = "NODES\na b\nEDGES undirected\nab a b\nCOSTS c\nab nonsense\n";
        let e = load_native(bad).unwrap_err();
        assert_eq!(e.line, 6);

        let stray = "a b\n";
        assert!(load_native(stray).unwrap_err().msg.contains("before the first section"));

        let range = "NODES\na b\nEDGES undirected\nab a b\nCOSTS c ℝ≥0\nab -1\n";
        let e = load_native(range).unwrap_err();
        assert!(e.msg.contains("outside the declared range"), "{e}");

        let mixed = "NODES\na b\nEDGES undirected\nab a b\nCOSTS c\nab 1\na 2\n";
        let e = load_native(mixed).unwrap_err();
        assert!(e.msg.contains("mixes node and edge"), "{e}");
    }

    #[test]
    fn temporal_tables_step_at_breakpoints() {
        let text = "\
NODES
a b
EDGES undirected
ab a b
TEMPORAL c time
ab: 0 2; 5 4
";
        let inst = load_native(text).unwrap();
        let t = inst.temporal.get("c").unwrap();
        assert_eq!(t.value_at(0, &rat(0)), Some(&rat(2)));
        assert_eq!(t.value_at(0, &ratio(9, 2)), Some(&rat(2)));
        assert_eq!(t.value_at(0, &rat(5)), Some(&rat(4)));
        assert_eq!(t.value_at(0, &rat(50)), Some(&rat(4)));
        let back = load_native(&save_native(&inst)).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn kinetic_data_is_parsed_and_kept() {
        let text = "\
NODES
a b
EDGES undirected
ab a b
KINETIC
a 0 0 1 0.5
b 2 2 -1 0
";
        let inst = load_native(text).unwrap();
        let kin = inst.kinetic.as_ref().unwrap();
        assert_eq!(kin[0].vx, 1.0);
        assert_eq!(kin[1].vx, -1.0);
        let back = load_native(&save_native(&inst)).unwrap();
        assert_eq!(back, inst);
    }
}
