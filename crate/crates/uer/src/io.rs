//! File formats: the line-oriented instance format (graph plus optional
//! constraint sections) and the JSON drawing document.
//!
//! Instance grammar, one item per line, `#` starts a comment:
//!
//! ```text
//! <n> <m>              header: vertex count, edge count
//! <u> <v>              m edge lines
//! model: usf|rf
//! external: v0 v1 ... vk
//! corners: a b c d
//! rotation: v: n1 n2 [n3 [n4]]      clockwise neighbor order
//! angles: v: u w                     the two 180-degree neighbors of v
//! label: v name
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{GridDrawing, GridPoint, Model};
use crate::graph::{Graph, RotationSystem};
use crate::outcome::{ConstraintError, Constraints, LargeAngleAssignment};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        source: crate::graph::GraphError,
    },
    #[error("{0}")]
    Semantic(#[from] ConstraintError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// A parsed instance: the graph, the optional constraint sections, and the
/// optional model override.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub constraints: Constraints,
    pub model: Option<Model>,
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| syntax(0, "empty instance"))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| syntax(header_line, "header must be `<n> <m>`"))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| syntax(header_line, "header must be `<n> <m>`"))?;
    if it.next().is_some() {
        return Err(syntax(header_line, "header must be `<n> <m>`"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut rest = Vec::new();
    for (ln, l) in lines {
        if edges.len() < m {
            let mut it = l.split_whitespace();
            let u: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| syntax(ln, "expected an edge line `<u> <v>`"))?;
            let v: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| syntax(ln, "expected an edge line `<u> <v>`"))?;
            if it.next().is_some() {
                return Err(syntax(ln, "edge line has trailing tokens"));
            }
            edges.push((u, v));
        } else {
            rest.push((ln, l.to_string()));
        }
    }
    if edges.len() < m {
        return Err(syntax(
            0,
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }

    let graph = Graph::new(n, &edges).map_err(|e| ParseError::Graph { line: 0, source: e })?;

    let mut constraints = Constraints::none();
    let mut model = None;
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut any_rotation = false;
    let mut angles: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut any_angles = false;
    let mut labels: Vec<Option<String>> = vec![None; n];
    let mut any_labels = false;

    for (ln, l) in rest {
        let Some((key, value)) = l.split_once(':') else {
            return Err(syntax(ln, "expected `section: ...`"));
        };
        let value = value.trim();
        match key.trim() {
            "model" => {
                model = Some(value.parse().map_err(|e: String| syntax(ln, e))?);
            }
            "external" => {
                let cycle = parse_ids(value, n, ln)?;
                constraints.external_cycle = Some(cycle);
            }
            "corners" => {
                let ids = parse_ids(value, n, ln)?;
                if ids.len() != 4 {
                    return Err(syntax(ln, "corners section needs exactly 4 ids"));
                }
                constraints.corners = Some([ids[0], ids[1], ids[2], ids[3]]);
            }
            "rotation" => {
                let (v, order) = parse_vertex_list(value, n, ln)?;
                if rotation[v].is_some() {
                    return Err(syntax(ln, format!("duplicate rotation for vertex {v}")));
                }
                rotation[v] = Some(order);
                any_rotation = true;
            }
            "angles" => {
                let (v, pair) = parse_vertex_list(value, n, ln)?;
                if pair.len() != 2 {
                    return Err(syntax(ln, "angles section needs exactly 2 neighbors"));
                }
                if angles[v].is_some() {
                    return Err(syntax(ln, format!("duplicate angles for vertex {v}")));
                }
                angles[v] = Some((pair[0], pair[1]));
                any_angles = true;
            }
            "label" => {
                let mut it = value.split_whitespace();
                let v: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|&v| v < n)
                    .ok_or_else(|| syntax(ln, "label needs a vertex id"))?;
                let name = it.collect::<Vec<_>>().join(" ");
                labels[v] = Some(name);
                any_labels = true;
            }
            other => return Err(syntax(ln, format!("unknown section `{other}`"))),
        }
    }

    let graph = if any_labels {
        graph.with_labels(labels)
    } else {
        graph
    };

    if any_rotation {
        // a rotation section must cover every vertex and match its neighbors
        let mut rows = Vec::with_capacity(n);
        for (v, r) in rotation.into_iter().enumerate() {
            let row = r.ok_or(ConstraintError::MalformedRotation(format!(
                "vertex {v} has no rotation line"
            )))?;
            rows.push(row);
        }
        let rot = RotationSystem(rows);
        if !rot.matches_graph(&graph) {
            return Err(ConstraintError::MalformedRotation(
                "rotation lines do not match the adjacency".into(),
            )
            .into());
        }
        constraints.rotation = Some(rot);
    }
    if any_angles {
        constraints.angles = Some(LargeAngleAssignment::new(&graph, angles)?);
    }
    if let Some(cycle) = &constraints.external_cycle {
        crate::outcome::check_cycle(&graph, cycle)?;
    }

    Ok(Instance {
        graph,
        constraints,
        model,
    })
}

fn parse_ids(value: &str, n: usize, ln: usize) -> Result<Vec<usize>, ParseError> {
    value
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .ok()
                .filter(|&v| v < n)
                .ok_or_else(|| syntax(ln, format!("bad vertex id `{t}`")))
        })
        .collect()
}

fn parse_vertex_list(value: &str, n: usize, ln: usize) -> Result<(usize, Vec<usize>), ParseError> {
    let Some((head, tail)) = value.split_once(':') else {
        return Err(syntax(ln, "expected `<v>: <ids...>`"));
    };
    let v: usize = head
        .trim()
        .parse()
        .ok()
        .filter(|&v| v < n)
        .ok_or_else(|| syntax(ln, format!("bad vertex id `{}`", head.trim())))?;
    let ids = parse_ids(tail, n, ln)?;
    Ok((v, ids))
}

/// Normalized text form: sorted edges, sections in a fixed order.
pub fn emit_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    let edges = g.edges();
    let _ = writeln!(out, "{} {}", g.vertex_count(), edges.len());
    for (u, v) in &edges {
        let _ = writeln!(out, "{u} {v}");
    }
    if let Some(model) = inst.model {
        let _ = writeln!(out, "model: {model}");
    }
    if let Some(cycle) = &inst.constraints.external_cycle {
        let ids: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "external: {}", ids.join(" "));
    }
    if let Some(corners) = &inst.constraints.corners {
        let _ = writeln!(
            out,
            "corners: {} {} {} {}",
            corners[0], corners[1], corners[2], corners[3]
        );
    }
    if let Some(rot) = &inst.constraints.rotation {
        for v in 0..g.vertex_count() {
            let ids: Vec<String> = rot.0[v].iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "rotation: {v}: {}", ids.join(" "));
        }
    }
    if let Some(angles) = &inst.constraints.angles {
        for v in 0..g.vertex_count() {
            if let Some((a, b)) = angles.pair(v) {
                let _ = writeln!(out, "angles: {v}: {a} {b}");
            }
        }
    }
    for v in 0..g.vertex_count() {
        if let Some(name) = g.label(v) {
            let _ = writeln!(out, "label: {v} {name}");
        }
    }
    out
}

/// JSON document for drawings.
#[derive(Debug, Serialize, Deserialize)]
pub struct DrawingDoc {
    pub model: Model,
    pub vertices: Vec<DrawingVertex>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DrawingVertex {
    pub id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub x: i64,
    pub y: i64,
}

pub fn drawing_to_doc(d: &GridDrawing) -> DrawingDoc {
    DrawingDoc {
        model: d.model(),
        vertices: (0..d.graph().vertex_count())
            .map(|v| DrawingVertex {
                id: v,
                label: d.graph().label(v).map(str::to_owned),
                x: d.position(v).x,
                y: d.position(v).y,
            })
            .collect(),
        edges: d.graph().edges().iter().map(|&(u, v)| [u, v]).collect(),
    }
}

pub fn drawing_to_json(d: &GridDrawing) -> String {
    serde_json::to_string(&drawing_to_doc(d)).expect("drawing serializes")
}

pub fn drawing_from_json(text: &str) -> Result<GridDrawing, String> {
    let doc: DrawingDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let n = doc.vertices.len();
    let edges: Vec<(usize, usize)> = doc.edges.iter().map(|&[u, v]| (u, v)).collect();
    let graph = Graph::new(n, &edges).map_err(|e| e.to_string())?;
    let mut labels = vec![None; n];
    let mut positions = vec![GridPoint::new(0, 0); n];
    for v in &doc.vertices {
        if v.id >= n {
            return Err(format!("vertex id {} out of range", v.id));
        }
        positions[v.id] = GridPoint::new(v.x, v.y);
        labels[v.id] = v.label.clone();
    }
    let graph = graph.with_labels(labels);
    GridDrawing::new(graph, positions, doc.model).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_c4() {
        let inst = parse_instance("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(inst.graph, Graph::cycle(4));
        assert!(inst.constraints.external_cycle.is_none());
        assert!(inst.model.is_none());
    }

    #[test]
    fn parse_with_sections() {
        let text = "8 8\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 0\ncorners: 0 2 4 6\nmodel: rf\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.constraints.corners, Some([0, 2, 4, 6]));
        assert_eq!(inst.model, Some(Model::Rf));
    }

    #[test]
    fn angles_on_degree2_vertex_is_semantic_error() {
        let text = "4 4\n0 1\n1 2\n2 3\n3 0\nangles: 0: 1 3\n";
        assert!(matches!(
            parse_instance(text),
            Err(ParseError::Semantic(ConstraintError::MalformedAngles(_)))
        ));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_instance("4 4\n0 1\n1 2\n2 x\n3 0\n").unwrap_err();
        match err {
            ParseError::Syntax { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected: {other}"),
        }
    }

    #[test]
    fn emit_parse_round_trip_is_normalizing() {
        let text = "4 4\n3 0\n2 3\n0 1\n1 2\nmodel: usf\n# comment\n";
        let once = emit_instance(&parse_instance(text).unwrap());
        let twice = emit_instance(&parse_instance(&once).unwrap());
        assert_eq!(once, twice);
        assert!(once.starts_with("4 4\n0 1\n"));
    }

    #[test]
    fn drawing_json_round_trip() {
        let d = crate::drawing::tests::crossed_c8();
        let json = drawing_to_json(&d);
        let back = drawing_from_json(&json).unwrap();
        assert_eq!(&back, &d);
        // deterministic bytes
        assert_eq!(json, drawing_to_json(&back));
    }

    #[test]
    fn rotation_section_round_trip() {
        let d = crate::drawing::tests::crossed_c8();
        let rot = crate::drawing::geometric_rotation(&d);
        let inst = Instance {
            graph: d.graph().clone(),
            constraints: Constraints::with_rotation(rot.clone()),
            model: Some(Model::Rf),
        };
        let text = emit_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back.constraints.rotation, Some(rot));
    }
}
