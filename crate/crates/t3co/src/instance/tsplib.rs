//! A reader for the small TSPLIB subset this toolkit consumes: TSP and
//! ATSP files with EUC_2D coordinates or explicit full matrices. EUC_2D
//! distances follow the library's convention exactly: the euclidean
//! distance rounded to the nearest integer.

use std::collections::BTreeMap;

use super::{Instance, SchemaError};
use crate::model::{CostDomain, CostFunction, EdgeKind, Graph};
use crate::rat::{parse_rat, Rat};

fn err(line: usize, msg: impl Into<String>) -> SchemaError {
    SchemaError {
        line,
        msg: msg.into(),
    }
}

/// Parses a TSPLIB file into a complete-graph instance with a single
/// edge cost table named `c`. Anything beyond the supported subset
/// fails with an error naming the keyword.
pub fn load_tsplib(text: &str) -> Result<Instance, SchemaError> {
    let mut keys: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut coord_lines: Vec<(usize, &str)> = Vec::new();
    let mut weight_values: Vec<(usize, &str)> = Vec::new();
    let mut section: Option<&str> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        if let Some((key, value)) = line.split_once(':') {
            let key = key.trim();
            if key.chars().all(|c| c.is_ascii_uppercase() || c == '_') {
                keys.insert(key.to_string(), (lineno, value.trim().to_string()));
                section = None;
                continue;
            }
        }
        if line.ends_with("_SECTION") {
            match line {
                "NODE_COORD_SECTION" | "EDGE_WEIGHT_SECTION" => section = Some(match line {
                    "NODE_COORD_SECTION" => "coords",
                    _ => "weights",
                }),
                other => return Err(err(lineno, format!("unsupported section {other}"))),
            }
            continue;
        }
        match section {
            Some("coords") => coord_lines.push((lineno, line)),
            Some("weights") => weight_values.push((lineno, line)),
            _ => return Err(err(lineno, format!("unexpected line {line:?}"))),
        }
    }

    let (type_line, kind) = match keys.get("TYPE") {
        Some((line, t)) => match t.as_str() {
            "TSP" => (*line, EdgeKind::Undirected),
            "ATSP" => (*line, EdgeKind::Directed),
            other => return Err(err(*line, format!("unsupported TYPE {other}"))),
        },
        None => return Err(err(1, "missing TYPE")),
    };
    let n: usize = match keys.get("DIMENSION") {
        Some((line, d)) => d
            .parse()
            .map_err(|_| err(*line, "DIMENSION must be a count"))?,
        None => return Err(err(type_line, "missing DIMENSION")),
    };

    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut matrix: Vec<Vec<Option<Rat>>> = vec![vec![None; n]; n];
    let mut coords: Option<Vec<(f64, f64)>> = None;

    match keys.get("EDGE_WEIGHT_TYPE") {
        Some((_, t)) if t == "EUC_2D" => {
            let mut table = vec![None; n];
            for (line, text) in &coord_lines {
                let parts: Vec<&str> = text.split_whitespace().collect();
                let [id, x, y] = parts[..] else {
                    return Err(err(*line, "a coordinate line is: id x y"));
                };
                let id: usize = id.parse().map_err(|_| err(*line, "bad node id"))?;
                if id == 0 || id > n {
                    return Err(err(*line, format!("node id {id} outside 1..={n}")));
                }
                let x: f64 = x.parse().map_err(|_| err(*line, "bad x coordinate"))?;
                let y: f64 = y.parse().map_err(|_| err(*line, "bad y coordinate"))?;
                if table[id - 1].replace((x, y)).is_some() {
                    return Err(err(*line, format!("duplicate coordinates for node {id}")));
                }
            }
            if let Some(i) = table.iter().position(|c| c.is_none()) {
                return Err(err(1, format!("no coordinates for node {}", i + 1)));
            }
            let pts: Vec<(f64, f64)> = table.into_iter().map(Option::unwrap).collect();
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        matrix[a][b] = Some(Rat::from_integer(nint_euc(pts[a], pts[b]).into()));
                    }
                }
            }
            coords = Some(pts);
        }
        Some((line, t)) if t == "EXPLICIT" => {
            match keys.get("EDGE_WEIGHT_FORMAT") {
                Some((_, f)) if f == "FULL_MATRIX" => {}
                Some((line, f)) => {
                    return Err(err(*line, format!("unsupported EDGE_WEIGHT_FORMAT {f}")))
                }
                None => return Err(err(*line, "EXPLICIT weights need EDGE_WEIGHT_FORMAT")),
            }
            let mut flat: Vec<(usize, Rat)> = Vec::new();
            for (line, text) in &weight_values {
                for w in text.split_whitespace() {
                    let v = parse_rat(w).map_err(|e| err(*line, e.to_string()))?;
                    flat.push((*line, v));
                }
            }
            if flat.len() != n * n {
                return Err(err(
                    weight_values.last().map_or(*line, |(l, _)| *l),
                    format!("FULL_MATRIX needs {} values, found {}", n * n, flat.len()),
                ));
            }
            for a in 0..n {
                for b in 0..n {
                    let (line, v) = &flat[a * n + b];
                    if a == b {
                        continue;
                    }
                    if kind == EdgeKind::Undirected {
                        if let Some(prev) = &matrix[b][a] {
                            if prev != v {
                                return Err(err(
                                    *line,
                                    format!("matrix is not symmetric at ({}, {})", a + 1, b + 1),
                                ));
                            }
                        }
                    }
                    matrix[a][b] = Some(v.clone());
                }
            }
        }
        Some((line, other)) => {
            return Err(err(*line, format!("unsupported EDGE_WEIGHT_TYPE {other}")))
        }
        None => return Err(err(type_line, "missing EDGE_WEIGHT_TYPE")),
    }

    let mut edges: Vec<(String, String, String)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || (kind == EdgeKind::Undirected && a > b) {
                continue;
            }
            edges.push((
                format!("{}-{}", names[a], names[b]),
                names[a].clone(),
                names[b].clone(),
            ));
        }
    }
    let graph = Graph::new(kind, &names, &edges).map_err(|e| err(1, e.to_string()))?;

    let mut cost = CostFunction::new("c", CostDomain::Edges, graph.edge_count());
    for a in 0..n {
        for b in 0..n {
            if a == b || (kind == EdgeKind::Undirected && a > b) {
                continue;
            }
            let e = graph.edge_id(&format!("{}-{}", names[a], names[b])).unwrap();
            cost.set(e, matrix[a][b].clone().unwrap());
        }
    }

    let mut inst = Instance::bare(graph);
    inst.costs.insert("c".into(), cost);
    inst.coords = coords;
    Ok(inst)
}

/// TSPLIB's EUC_2D distance: nearest integer to the euclidean distance.
fn nint_euc(a: (f64, f64), b: (f64, f64)) -> i64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    ((dx * dx + dy * dy).sqrt() + 0.5) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn euclidean_coordinates_become_rounded_costs() {
        let text = "\
NAME : tri
TYPE : TSP
DIMENSION : 3
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
1 0 0
2 3 0
3 0 4
EOF
";
        let inst = load_tsplib(text).unwrap();
        assert_eq!(inst.graph.node_count(), 3);
        assert!(inst.graph.is_complete());
        assert_eq!(inst.pair_cost("c", 0, 1), Some(&rat(3)));
        assert_eq!(inst.pair_cost("c", 0, 2), Some(&rat(4)));
        assert_eq!(inst.pair_cost("c", 1, 2), Some(&rat(5)));
        assert!(inst.coords.is_some());
    }

    #[test]
    fn full_matrices_load_symmetric_and_directed() {
        let text = "\
TYPE: TSP
DIMENSION: 2
EDGE_WEIGHT_TYPE: EXPLICIT
EDGE_WEIGHT_FORMAT: FULL_MATRIX
EDGE_WEIGHT_SECTION
0 7
7 0
EOF
";
        let inst = load_tsplib(text).unwrap();
        assert_eq!(inst.graph.edge_count(), 1);
        assert_eq!(inst.pair_cost("c", 0, 1), Some(&rat(7)));
        assert_eq!(inst.pair_cost("c", 1, 0), Some(&rat(7)));

        let atsp = "\
TYPE: ATSP
DIMENSION: 2
EDGE_WEIGHT_TYPE: EXPLICIT
EDGE_WEIGHT_FORMAT: FULL_MATRIX
EDGE_WEIGHT_SECTION
0 3
9 0
EOF
";
        let inst = load_tsplib(atsp).unwrap();
        assert_eq!(inst.graph.edge_count(), 2);
        assert_eq!(inst.pair_cost("c", 0, 1), Some(&rat(3)));
        assert_eq!(inst.pair_cost("c", 1, 0), Some(&rat(9)));
    }

    #[test]
    fn unsupported_keywords_are_named() {
        let geo = "\
TYPE: TSP
DIMENSION: 2
EDGE_WEIGHT_TYPE: GEO
NODE_COORD_SECTION
1 0 0
2 1 1
EOF
";
        let e = load_tsplib(geo).unwrap_err();
        assert!(e.msg.contains("unsupported EDGE_WEIGHT_TYPE GEO"), "{e}");

        let fmt = "\
TYPE: TSP
DIMENSION: 2
EDGE_WEIGHT_TYPE: EXPLICIT
EDGE_WEIGHT_FORMAT: UPPER_ROW
EDGE_WEIGHT_SECTION
7
EOF
";
        let e = load_tsplib(fmt).unwrap_err();
        assert!(e.msg.contains("unsupported EDGE_WEIGHT_FORMAT UPPER_ROW"), "{e}");

        let cvrp = "TYPE: CVRP\nDIMENSION: 2\n";
        assert!(load_tsplib(cvrp).unwrap_err().msg.contains("unsupported TYPE CVRP"));
    }

    #[test]
    fn asymmetric_tsp_matrices_are_rejected() {
        let text = "\
TYPE: TSP
DIMENSION: 2
EDGE_WEIGHT_TYPE: EXPLICIT
EDGE_WEIGHT_FORMAT: FULL_MATRIX
EDGE_WEIGHT_SECTION
0 7
6 0
EOF
";
        let e = load_tsplib(text).unwrap_err();
        assert!(e.msg.contains("not symmetric"), "{e}");
    }
}
