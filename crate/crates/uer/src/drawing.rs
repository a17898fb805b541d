//! The drawing data model: grid drawings, planarization with crossing
//! vertices, the model validator, canonicalization under the 8 grid
//! symmetries, and extraction of the abstract graph from a drawing.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, RotationSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub fn new(x: i64, y: i64) -> GridPoint {
        GridPoint { x, y }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Usf,
    Rf,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Usf => write!(f, "usf"),
            Model::Rf => write!(f, "rf"),
        }
    }
}

impl std::str::FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "usf" => Ok(Model::Usf),
            "rf" => Ok(Model::Rf),
            other => Err(format!("unknown model `{other}` (expected usf or rf)")),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DrawingError {
    #[error("position count {0} does not match vertex count {1}")]
    PositionCountMismatch(usize, usize),
    #[error("vertices {0} and {1} share position")]
    PositionCollision(usize, usize),
    #[error("edge ({0}, {1}) is not axis-aligned")]
    EdgeNotAxisAligned(usize, usize),
    #[error("two collinear edges overlap")]
    OverlappingCollinearEdges,
    #[error("a vertex lies in the interior of edge ({0}, {1})")]
    VertexOnEdge(usize, usize),
    #[error("drawing fails validation")]
    Invalid,
}

/// A rectilinear grid drawing of a graph. Crossings are not stored; they are
/// derived by [`planarize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDrawing {
    graph: Graph,
    positions: Vec<GridPoint>,
    model: Model,
}

impl GridDrawing {
    /// Builds a drawing, checking distinct positions and axis-aligned edges.
    /// Deeper conditions (vertex on edge interior, overlaps, unit lengths,
    /// face shapes) are reported by [`validate`].
    pub fn new(
        graph: Graph,
        positions: Vec<GridPoint>,
        model: Model,
    ) -> Result<GridDrawing, DrawingError> {
        if positions.len() != graph.vertex_count() {
            return Err(DrawingError::PositionCountMismatch(
                positions.len(),
                graph.vertex_count(),
            ));
        }
        let mut seen: BTreeMap<GridPoint, usize> = BTreeMap::new();
        for (v, &p) in positions.iter().enumerate() {
            if let Some(&u) = seen.get(&p) {
                return Err(DrawingError::PositionCollision(u, v));
            }
            seen.insert(p, v);
        }
        for (u, v) in graph.edges() {
            let (a, b) = (positions[u], positions[v]);
            if a.x != b.x && a.y != b.y {
                return Err(DrawingError::EdgeNotAxisAligned(u, v));
            }
        }
        Ok(GridDrawing {
            graph,
            positions,
            model,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn positions(&self) -> &[GridPoint] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> GridPoint {
        self.positions[v]
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn with_model(mut self, model: Model) -> GridDrawing {
        self.model = model;
        self
    }

    fn bbox(&self) -> (GridPoint, GridPoint) {
        let min_x = self.positions.iter().map(|p| p.x).min().unwrap_or(0);
        let max_x = self.positions.iter().map(|p| p.x).max().unwrap_or(0);
        let min_y = self.positions.iter().map(|p| p.y).min().unwrap_or(0);
        let max_y = self.positions.iter().map(|p| p.y).max().unwrap_or(0);
        (GridPoint::new(min_x, min_y), GridPoint::new(max_x, max_y))
    }

    /// Bounding-box extent in grid units.
    pub fn width(&self) -> i64 {
        let (lo, hi) = self.bbox();
        hi.x - lo.x
    }

    pub fn height(&self) -> i64 {
        let (lo, hi) = self.bbox();
        hi.y - lo.y
    }

    /// Mirror along the vertical axis (x negated, then translated back to
    /// the origin). Reverses the induced rotation system.
    pub fn mirrored(&self) -> GridDrawing {
        let max_x = self.positions.iter().map(|p| p.x).max().unwrap_or(0);
        let positions = self
            .positions
            .iter()
            .map(|p| GridPoint::new(max_x - p.x, p.y))
            .collect();
        GridDrawing {
            graph: self.graph.clone(),
            positions,
            model: self.model,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Real(usize),
    Crossing,
}

#[derive(Debug, Clone)]
pub struct PlanarNode {
    pub at: GridPoint,
    pub kind: NodeKind,
}

/// The drawing with crossings materialized as degree-4 dummy vertices and
/// every edge split at them.
#[derive(Debug, Clone)]
pub struct PlanarizedDrawing {
    pub nodes: Vec<PlanarNode>,
    /// neighbors in clockwise order (north, east, south, west)
    pub rotation: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    /// faces as node cycles; the dart (f[i], f[i+1]) is one boundary step
    pub faces: Vec<Vec<usize>>,
    /// index of the unique clockwise (external) face, when unique
    pub external_face: Option<usize>,
}

impl PlanarizedDrawing {
    pub fn crossing_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n.kind, NodeKind::Crossing))
            .count()
    }

    pub fn edge_length(&self, u: usize, v: usize) -> i64 {
        let (a, b) = (self.nodes[u].at, self.nodes[v].at);
        (a.x - b.x).abs() + (a.y - b.y).abs()
    }
}

/// Inserts a crossing vertex wherever a horizontal and a vertical segment
/// cross, and splits edges at those points.
pub fn planarize(d: &GridDrawing) -> Result<PlanarizedDrawing, DrawingError> {
    let g = d.graph();
    let pos = d.positions();
    let edges = g.edges();

    let seg = |&(u, v): &(usize, usize)| -> (GridPoint, GridPoint) {
        let (a, b) = (pos[u], pos[v]);
        if (a.x, a.y) <= (b.x, b.y) {
            (a, b)
        } else {
            (b, a)
        }
    };

    // collinear overlaps first, then vertices in edge interiors
    for (i, e1) in edges.iter().enumerate() {
        let (a1, b1) = seg(e1);
        for e2 in edges.iter().skip(i + 1) {
            let (a2, b2) = seg(e2);
            let h1 = a1.y == b1.y;
            let h2 = a2.y == b2.y;
            if h1 == h2 {
                let same_line = if h1 { a1.y == a2.y } else { a1.x == a2.x };
                if same_line {
                    let (lo1, hi1, lo2, hi2) = if h1 {
                        (a1.x, b1.x, a2.x, b2.x)
                    } else {
                        (a1.y, b1.y, a2.y, b2.y)
                    };
                    if lo1.max(lo2) < hi1.min(hi2) {
                        return Err(DrawingError::OverlappingCollinearEdges);
                    }
                }
            }
        }
    }
    for (u, v) in &edges {
        let (a, b) = seg(&(*u, *v));
        for (w, &p) in pos.iter().enumerate() {
            if w == *u || w == *v {
                continue;
            }
            let inside = if a.y == b.y {
                p.y == a.y && a.x < p.x && p.x < b.x
            } else {
                p.x == a.x && a.y < p.y && p.y < b.y
            };
            if inside {
                return Err(DrawingError::VertexOnEdge(*u, *v));
            }
        }
    }

    // crossings: interior-interior intersections of a horizontal and a
    // vertical segment
    let mut crossings: std::collections::BTreeSet<GridPoint> = Default::default();
    for (i, e1) in edges.iter().enumerate() {
        let (a1, b1) = seg(e1);
        for e2 in edges.iter().skip(i + 1) {
            let (a2, b2) = seg(e2);
            let h1 = a1.y == b1.y;
            let h2 = a2.y == b2.y;
            if h1 == h2 {
                continue;
            }
            let (h, hv, v, vv) = if h1 {
                (a1, b1, a2, b2)
            } else {
                (a2, b2, a1, b1)
            };
            let q = GridPoint::new(v.x, h.y);
            if h.x < q.x && q.x < hv.x && v.y < q.y && q.y < vv.y {
                crossings.insert(q);
            }
        }
    }

    let mut nodes: Vec<PlanarNode> = pos
        .iter()
        .enumerate()
        .map(|(v, &p)| PlanarNode {
            at: p,
            kind: NodeKind::Real(v),
        })
        .collect();
    let mut at_point: BTreeMap<GridPoint, usize> =
        pos.iter().enumerate().map(|(v, &p)| (p, v)).collect();
    for &q in &crossings {
        let idx = nodes.len();
        nodes.push(PlanarNode {
            at: q,
            kind: NodeKind::Crossing,
        });
        at_point.insert(q, idx);
    }

    // split each drawn edge at the crossings along it
    let mut planar_edges: Vec<(usize, usize)> = Vec::new();
    for (u, v) in &edges {
        let (a, b) = seg(&(*u, *v));
        let mut stops = vec![a];
        if a.y == b.y {
            stops.extend(
                crossings
                    .iter()
                    .filter(|q| q.y == a.y && a.x < q.x && q.x < b.x),
            );
            stops.sort_by_key(|p| p.x);
        } else {
            stops.extend(
                crossings
                    .iter()
                    .filter(|q| q.x == a.x && a.y < q.y && q.y < b.y),
            );
            stops.sort_by_key(|p| p.y);
        }
        stops.push(b);
        for w in stops.windows(2) {
            let (i, j) = (at_point[&w[0]], at_point[&w[1]]);
            planar_edges.push((i.min(j), i.max(j)));
        }
    }
    planar_edges.sort_unstable();
    planar_edges.dedup();

    // clockwise rotation per node: north, east, south, west
    let mut dirs: Vec<[Option<usize>; 4]> = vec![[None; 4]; nodes.len()];
    for &(i, j) in &planar_edges {
        let (a, b) = (nodes[i].at, nodes[j].at);
        dirs[i][direction_index(a, b)] = Some(j);
        dirs[j][direction_index(b, a)] = Some(i);
    }
    let rotation: Vec<Vec<usize>> = dirs
        .iter()
        .map(|d| d.iter().flatten().copied().collect())
        .collect();

    let faces = trace_planar_faces(&rotation);
    let external = {
        let cw: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| signed_area(&nodes, f) < 0)
            .map(|(i, _)| i)
            .collect();
        if cw.len() == 1 {
            Some(cw[0])
        } else {
            None
        }
    };

    Ok(PlanarizedDrawing {
        nodes,
        rotation,
        edges: planar_edges,
        faces,
        external_face: external,
    })
}

/// 0 = north, 1 = east, 2 = south, 3 = west.
pub(crate) fn direction_index(from: GridPoint, to: GridPoint) -> usize {
    if to.x == from.x {
        if to.y > from.y {
            0
        } else {
            2
        }
    } else if to.x > from.x {
        1
    } else {
        3
    }
}

fn trace_planar_faces(rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen: std::collections::BTreeSet<(usize, usize)> = Default::default();
    let mut faces = Vec::new();
    for u in 0..rotation.len() {
        for &v in &rotation[u] {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut cu, mut cv) = (u, v);
            loop {
                face.push(cu);
                seen.insert((cu, cv));
                let order = &rotation[cv];
                let i = order.iter().position(|&x| x == cu).unwrap();
                let w = order[(i + 1) % order.len()];
                cu = cv;
                cv = w;
                if (cu, cv) == (u, v) {
                    break;
                }
            }
            faces.push(face);
        }
    }
    faces
}

/// Twice the signed area of the face polygon; negative means clockwise.
fn signed_area(nodes: &[PlanarNode], face: &[usize]) -> i64 {
    let mut s = 0i64;
    for i in 0..face.len() {
        let a = nodes[face[i]].at;
        let b = nodes[face[(i + 1) % face.len()]].at;
        s += a.x * b.y - b.x * a.y;
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationCode {
    NonUnitEdge,
    NonRectFace,
    NonSquareFace,
    BadCornerDegree,
    UnequalOppositeSides,
    VertexOnEdge,
    Overlap,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub description: String,
    pub witness: Vec<GridPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> ValidationReport {
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

enum FaceShape {
    RectCcw,
    RectCw,
    Other,
}

fn face_shape(nodes: &[PlanarNode], face: &[usize]) -> FaceShape {
    let k = face.len();
    let mut left = 0;
    let mut right = 0;
    for i in 0..k {
        let a = nodes[face[i]].at;
        let b = nodes[face[(i + 1) % k]].at;
        let c = nodes[face[(i + 2) % k]].at;
        let d1 = (b.x - a.x, b.y - a.y);
        let d2 = (c.x - b.x, c.y - b.y);
        let cross = d1.0 * d2.1 - d1.1 * d2.0;
        let dot = d1.0 * d2.0 + d1.1 * d2.1;
        if cross == 0 && dot < 0 {
            return FaceShape::Other; // U-turn along a bridge
        }
        if cross > 0 {
            left += 1;
        } else if cross < 0 {
            right += 1;
        }
    }
    match (left, right) {
        (4, 0) => FaceShape::RectCcw,
        (0, 4) => FaceShape::RectCw,
        _ => FaceShape::Other,
    }
}

/// Checks the full drawing model: rectilinear conditions, unit planarized
/// edges, rectangular faces (unit squares internally for USF), and the
/// external-boundary degree and side-length conditions.
pub fn validate(d: &GridDrawing) -> ValidationReport {
    let mut violations = Vec::new();
    let planar = match planarize(d) {
        Ok(p) => p,
        Err(DrawingError::OverlappingCollinearEdges) => {
            violations.push(Violation {
                code: ViolationCode::Overlap,
                description: "two collinear edges overlap".into(),
                witness: vec![],
            });
            return ValidationReport::from_violations(violations);
        }
        Err(DrawingError::VertexOnEdge(u, v)) => {
            violations.push(Violation {
                code: ViolationCode::VertexOnEdge,
                description: format!("a vertex lies inside edge ({u}, {v})"),
                witness: vec![d.position(u), d.position(v)],
            });
            return ValidationReport::from_violations(violations);
        }
        Err(e) => {
            violations.push(Violation {
                code: ViolationCode::Overlap,
                description: e.to_string(),
                witness: vec![],
            });
            return ValidationReport::from_violations(violations);
        }
    };

    if planar.nodes.is_empty() || planar.edges.is_empty() {
        violations.push(Violation {
            code: ViolationCode::NonRectFace,
            description: "empty drawing".into(),
            witness: vec![],
        });
        return ValidationReport::from_violations(violations);
    }

    for &(u, v) in &planar.edges {
        let len = planar.edge_length(u, v);
        if len != 1 {
            violations.push(Violation {
                code: ViolationCode::NonUnitEdge,
                description: format!("planarized edge has length {len}"),
                witness: vec![planar.nodes[u].at, planar.nodes[v].at],
            });
        }
    }

    let mut cw_faces = Vec::new();
    for (i, face) in planar.faces.iter().enumerate() {
        match face_shape(&planar.nodes, face) {
            FaceShape::RectCcw => {}
            FaceShape::RectCw => cw_faces.push(i),
            FaceShape::Other => violations.push(Violation {
                code: ViolationCode::NonRectFace,
                description: format!("face with {} boundary steps is not a rectangle", face.len()),
                witness: face.iter().map(|&n| planar.nodes[n].at).collect(),
            }),
        }
    }
    if cw_faces.len() != 1 {
        violations.push(Violation {
            code: ViolationCode::NonRectFace,
            description: format!(
                "expected exactly one external face, found {} clockwise faces",
                cw_faces.len()
            ),
            witness: vec![],
        });
        return ValidationReport::from_violations(violations);
    }
    let external = cw_faces[0];

    if d.model() == Model::Usf {
        for (i, face) in planar.faces.iter().enumerate() {
            if i != external && face.len() != 4 {
                violations.push(Violation {
                    code: ViolationCode::NonSquareFace,
                    description: format!("internal face has {} boundary steps", face.len()),
                    witness: face.iter().map(|&n| planar.nodes[n].at).collect(),
                });
            }
        }
    }

    // external boundary: four real degree-2 corners, real vertices of degree
    // at most 3 elsewhere, opposite sides of equal length
    let boundary = &planar.faces[external];
    let k = boundary.len();
    let mut turn_at = vec![false; k];
    for i in 0..k {
        let a = planar.nodes[boundary[(i + k - 1) % k]].at;
        let b = planar.nodes[boundary[i]].at;
        let c = planar.nodes[boundary[(i + 1) % k]].at;
        turn_at[i] = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x) != 0;
    }
    let mut corner_count = 0;
    let mut side_lengths = Vec::new();
    if let Some(first_turn) = (0..k).find(|&i| turn_at[i]) {
        let mut run = 0usize;
        for step in 0..k {
            let i = (first_turn + step) % k;
            let node = boundary[i];
            if turn_at[i] && step > 0 {
                side_lengths.push(run);
                run = 0;
            }
            if turn_at[i] {
                corner_count += 1;
            }
            run += 1;
            match planar.nodes[node].kind {
                NodeKind::Real(v) => {
                    let deg = d.graph().degree(v);
                    if turn_at[i] && deg != 2 {
                        violations.push(Violation {
                            code: ViolationCode::BadCornerDegree,
                            description: format!("corner vertex {v} has degree {deg}"),
                            witness: vec![planar.nodes[node].at],
                        });
                    }
                    if !turn_at[i] && deg > 3 {
                        violations.push(Violation {
                            code: ViolationCode::BadCornerDegree,
                            description: format!("external vertex {v} has degree {deg}"),
                            witness: vec![planar.nodes[node].at],
                        });
                    }
                }
                NodeKind::Crossing => violations.push(Violation {
                    code: ViolationCode::BadCornerDegree,
                    description: "crossing vertex on the external boundary".into(),
                    witness: vec![planar.nodes[node].at],
                }),
            }
        }
        side_lengths.push(run);
    }
    if corner_count == 4
        && side_lengths.len() == 4
        && (side_lengths[0] != side_lengths[2] || side_lengths[1] != side_lengths[3])
    {
        violations.push(Violation {
            code: ViolationCode::UnequalOppositeSides,
            description: format!("side lengths {side_lengths:?}"),
            witness: vec![],
        });
    }

    ValidationReport::from_violations(violations)
}

/// Translates to the origin and picks, among the 8 rotations/reflections,
/// the one whose sorted position list is lexicographically minimal in
/// (y, x) order. Deterministic and idempotent; canonical drawings satisfy
/// width >= height.
pub fn canonicalize(d: &GridDrawing) -> GridDrawing {
    let transforms: [fn(GridPoint) -> GridPoint; 8] = [
        |p| p,
        |p| GridPoint::new(p.y, -p.x),
        |p| GridPoint::new(-p.x, -p.y),
        |p| GridPoint::new(-p.y, p.x),
        |p| GridPoint::new(-p.x, p.y),
        |p| GridPoint::new(p.y, p.x),
        |p| GridPoint::new(p.x, -p.y),
        |p| GridPoint::new(-p.y, -p.x),
    ];
    type Key = (Vec<(i64, i64)>, Vec<((i64, i64), (i64, i64))>);
    let edges = d.graph().edges();
    let mut best: Option<(Key, Vec<GridPoint>)> = None;
    for t in transforms {
        let moved: Vec<GridPoint> = d.positions().iter().map(|&p| t(p)).collect();
        let min_x = moved.iter().map(|p| p.x).min().unwrap_or(0);
        let min_y = moved.iter().map(|p| p.y).min().unwrap_or(0);
        let moved: Vec<GridPoint> = moved
            .iter()
            .map(|p| GridPoint::new(p.x - min_x, p.y - min_y))
            .collect();
        let mut pts: Vec<(i64, i64)> = moved.iter().map(|p| (p.y, p.x)).collect();
        pts.sort_unstable();
        // edge geometry breaks ties between transforms with equal point sets
        let mut segs: Vec<((i64, i64), (i64, i64))> = edges
            .iter()
            .map(|&(u, v)| {
                let a = (moved[u].y, moved[u].x);
                let b = (moved[v].y, moved[v].x);
                (a.min(b), a.max(b))
            })
            .collect();
        segs.sort_unstable();
        let key = (pts, segs);
        match &best {
            Some((bk, _)) if bk <= &key => {}
            _ => best = Some((key, moved)),
        }
    }
    let (_, positions) = best.expect("at least one transform");
    GridDrawing::new(d.graph().clone(), positions, d.model()).expect("isometry preserves validity")
}

/// What a recognizer needs to know about an accepted drawing.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub graph: Graph,
    pub rotation: RotationSystem,
    pub external_cycle: Vec<usize>,
    pub corners: [usize; 4],
}

/// Reads the abstract graph, the geometry-induced clockwise rotation system,
/// the external cycle and the four corners off a valid drawing.
pub fn extract_graph(d: &GridDrawing) -> Result<Extraction, DrawingError> {
    let report = validate(d);
    if !report.valid {
        return Err(DrawingError::Invalid);
    }
    let planar = planarize(d)?;
    let external = planar
        .external_face
        .expect("valid drawing has external face");

    let rotation = geometric_rotation(d);

    let boundary = &planar.faces[external];
    let mut cycle = Vec::new();
    let mut corners = Vec::new();
    let k = boundary.len();
    for i in 0..k {
        let node = boundary[i];
        let NodeKind::Real(v) = planar.nodes[node].kind else {
            return Err(DrawingError::Invalid);
        };
        cycle.push(v);
        let a = planar.nodes[boundary[(i + k - 1) % k]].at;
        let b = planar.nodes[node].at;
        let c = planar.nodes[boundary[(i + 1) % k]].at;
        if (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x) != 0 {
            corners.push(v);
        }
    }
    if corners.len() != 4 {
        return Err(DrawingError::Invalid);
    }
    Ok(Extraction {
        graph: d.graph().clone(),
        rotation,
        external_cycle: cycle,
        corners: [corners[0], corners[1], corners[2], corners[3]],
    })
}

/// Clockwise rotation induced by the geometry: neighbors in north, east,
/// south, west order around each vertex.
pub fn geometric_rotation(d: &GridDrawing) -> RotationSystem {
    let g = d.graph();
    let mut rot = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let mut by_dir: [Option<usize>; 4] = [None; 4];
        for &w in g.neighbors(v) {
            by_dir[direction_index(d.position(v), d.position(w))] = Some(w);
        }
        rot.push(by_dir.into_iter().flatten().collect());
    }
    RotationSystem(rot)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn unit_square() -> GridDrawing {
        let g = Graph::cycle(4);
        GridDrawing::new(
            g,
            vec![
                GridPoint::new(0, 0),
                GridPoint::new(1, 0),
                GridPoint::new(1, 1),
                GridPoint::new(0, 1),
            ],
            Model::Usf,
        )
        .unwrap()
    }

    /// C8 on the 2x2 boundary plus the two length-2 chords through (1, 1).
    pub fn crossed_c8() -> GridDrawing {
        let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.push((1, 5));
        edges.push((3, 7));
        let g = Graph::new(8, &edges).unwrap();
        GridDrawing::new(
            g,
            vec![
                GridPoint::new(0, 0),
                GridPoint::new(1, 0),
                GridPoint::new(2, 0),
                GridPoint::new(2, 1),
                GridPoint::new(2, 2),
                GridPoint::new(1, 2),
                GridPoint::new(0, 2),
                GridPoint::new(0, 1),
            ],
            Model::Rf,
        )
        .unwrap()
    }

    fn c6_rect() -> GridDrawing {
        GridDrawing::new(
            Graph::cycle(6),
            vec![
                GridPoint::new(0, 0),
                GridPoint::new(1, 0),
                GridPoint::new(2, 0),
                GridPoint::new(2, 1),
                GridPoint::new(1, 1),
                GridPoint::new(0, 1),
            ],
            Model::Rf,
        )
        .unwrap()
    }

    #[test]
    fn planarize_unit_square() {
        let p = planarize(&unit_square()).unwrap();
        assert_eq!(p.nodes.len(), 4);
        assert_eq!(p.crossing_count(), 0);
        assert_eq!(p.faces.len(), 2);
        assert_eq!(p.edges.len(), 4);
    }

    #[test]
    fn planarize_crossed_c8() {
        let p = planarize(&crossed_c8()).unwrap();
        assert_eq!(p.crossing_count(), 1);
        let cross = p
            .nodes
            .iter()
            .find(|n| matches!(n.kind, NodeKind::Crossing))
            .unwrap();
        assert_eq!(cross.at, GridPoint::new(1, 1));
        assert_eq!(p.edges.len(), 12);
        assert!(p.edges.iter().all(|&(u, v)| p.edge_length(u, v) == 1));
        assert_eq!(p.faces.len(), 5);
    }

    #[test]
    fn planarize_rejects_overlap() {
        // two horizontal edges sharing a sub-segment
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let d = GridDrawing::new(
            g,
            vec![
                GridPoint::new(0, 0),
                GridPoint::new(3, 0),
                GridPoint::new(1, 0),
                GridPoint::new(4, 0),
            ],
            Model::Rf,
        )
        .unwrap();
        assert_eq!(
            planarize(&d).unwrap_err(),
            DrawingError::OverlappingCollinearEdges
        );
    }

    #[test]
    fn planarize_rejects_vertex_on_edge() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        let d = GridDrawing::new(
            g,
            vec![
                GridPoint::new(0, 0),
                GridPoint::new(2, 0),
                GridPoint::new(1, 0),
            ],
            Model::Rf,
        )
        .unwrap();
        assert_eq!(planarize(&d).unwrap_err(), DrawingError::VertexOnEdge(0, 1));
    }

    #[test]
    fn validate_unit_square_usf() {
        assert!(validate(&unit_square()).valid);
    }

    #[test]
    fn validate_c6_rectangle() {
        let d = c6_rect();
        assert!(validate(&d).valid);
        let usf = d.clone().with_model(Model::Usf);
        let rep = validate(&usf);
        assert!(!rep.valid);
        assert!(rep.has(ViolationCode::NonSquareFace));
    }

    #[test]
    fn validate_crossed_c8() {
        let rep = validate(&crossed_c8());
        assert!(rep.valid, "{:?}", rep.violations);
        // all four internal faces are unit squares, so USF passes too
        assert!(validate(&crossed_c8().with_model(Model::Usf)).valid);
    }

    #[test]
    fn validate_flags_non_unit_edge() {
        // C6 rectangle stretched so one pair of edges has length 2
        let d = GridDrawing::new(
            Graph::cycle(6),
            vec![
                GridPoint::new(0, 0),
                GridPoint::new(1, 0),
                GridPoint::new(3, 0),
                GridPoint::new(3, 1),
                GridPoint::new(1, 1),
                GridPoint::new(0, 1),
            ],
            Model::Rf,
        )
        .unwrap();
        let rep = validate(&d);
        assert!(!rep.valid);
        assert!(rep.has(ViolationCode::NonUnitEdge));
    }

    #[test]
    fn validate_flags_bad_corner() {
        // a square with a pendant edge sticking out of a corner
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let d = GridDrawing::new(
            g,
            vec![
                GridPoint::new(0, 0),
                GridPoint::new(1, 0),
                GridPoint::new(1, 1),
                GridPoint::new(0, 1),
                GridPoint::new(-1, 0),
            ],
            Model::Rf,
        )
        .unwrap();
        assert!(!validate(&d).valid);
    }

    #[test]
    fn canonicalize_translates_and_orients() {
        let g = Graph::cycle(4);
        let far = GridDrawing::new(
            g,
            vec![
                GridPoint::new(5, 5),
                GridPoint::new(6, 5),
                GridPoint::new(6, 6),
                GridPoint::new(5, 6),
            ],
            Model::Usf,
        )
        .unwrap();
        let c = canonicalize(&far);
        let mut pts: Vec<GridPoint> = c.positions().to_vec();
        pts.sort_unstable();
        assert_eq!(
            pts,
            vec![
                GridPoint::new(0, 0),
                GridPoint::new(0, 1),
                GridPoint::new(1, 0),
                GridPoint::new(1, 1)
            ]
        );

        // vertical 1x2 rectangle flips to horizontal 2x1
        let tall = GridDrawing::new(
            Graph::cycle(6),
            vec![
                GridPoint::new(0, 0),
                GridPoint::new(1, 0),
                GridPoint::new(1, 1),
                GridPoint::new(1, 2),
                GridPoint::new(0, 2),
                GridPoint::new(0, 1),
            ],
            Model::Rf,
        )
        .unwrap();
        let c = canonicalize(&tall);
        assert!(c.width() >= c.height());
        assert_eq!((c.width(), c.height()), (2, 1));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for d in [unit_square(), crossed_c8(), c6_rect()] {
            let once = canonicalize(&d);
            let twice = canonicalize(&once);
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn extract_unit_square() {
        let e = extract_graph(&unit_square()).unwrap();
        assert_eq!(e.graph, Graph::cycle(4));
        assert_eq!(e.external_cycle.len(), 4);
        let mut corners = e.corners.to_vec();
        corners.sort_unstable();
        assert_eq!(corners, vec![0, 1, 2, 3]);
    }

    #[test]
    fn extract_crossed_c8() {
        let d = crossed_c8();
        let e = extract_graph(&d).unwrap();
        assert_eq!(&e.graph, d.graph());
        assert_eq!(e.external_cycle.len(), 8);
        let mut corners = e.corners.to_vec();
        corners.sort_unstable();
        assert_eq!(corners, vec![0, 2, 4, 6]);
    }

    #[test]
    fn extract_grid_round_trip() {
        let g = Graph::grid(3, 3);
        let positions = (0..9)
            .map(|v| GridPoint::new((v % 3) as i64, (v / 3) as i64))
            .collect();
        let d = GridDrawing::new(g.clone(), positions, Model::Usf).unwrap();
        let e = extract_graph(&d).unwrap();
        assert_eq!(e.graph, g);
    }

    #[test]
    fn rotation_from_geometry_is_clockwise() {
        let d = crossed_c8();
        let rot = geometric_rotation(&d);
        // vertex 1 at (1, 0): neighbor 5 north (chord), 2 east, 0 west
        assert_eq!(rot.0[1], vec![5, 2, 0]);
    }
}
