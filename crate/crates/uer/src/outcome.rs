//! Recognition results, machine-readable reject reasons, run statistics and
//! input constraints.

use serde::Serialize;
use thiserror::Error;

use crate::drawing::GridDrawing;
use crate::graph::{Graph, RotationSystem};

/// Why a recognizer (or one of its candidate attempts) said no.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    // structural preconditions
    NotBiconnected,
    CycleOddLength,
    CycleNotUnitSquare,
    DegreeTwoCountMismatch,
    BoundaryCoreNotBiconnected,
    CoreNotPlanar,
    CoreNotTriconnected,
    NoExternalCandidate,
    PropertyOneViolated,
    CandidateInvalid,
    // column-walk placement (unit square faces and the restricted variant)
    RightNeighborOnWrongRow,
    TopAlreadyAssigned,
    BottomOnWrongColumn,
    LeftNeighborMissing,
    AmbiguousOrNoLeftAssignment,
    LeftoverUnplacedVertices,
    InternalDegreeInvalid,
    // grid-scan placement
    BadLeftInit,
    UEmpty,
    UTooBig,
    AnchorMisaligned,
    TraversalHitsFixed,
    ZPositionInvalid,
    UnplacedRemainder,
    PlacementConflict,
    // restricted-variant corner selection
    NonIntegralCornerDistance,
    CornerDegreeThree,
    CycleMissingDeg3Vertex,
    Degree2AlignmentMismatch,
    // external-cycle tracing under a large-angle assignment
    HitsDegreeFour,
    AngleMismatch,
    NonSimpleClosure,
    AngleInconsistentPlacement,
    // post checks
    RotationNotPreserved,
    DrawingInvalid,
}

/// Counters for complexity assertions and progress reporting.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct RecognitionStats {
    /// rectangle candidates handed to a placement routine
    pub candidates_tried: u64,
    /// vertex placements performed by the placement routines (the grid scan
    /// also counts crossing decisions and traversal steps)
    pub placement_steps: u64,
    /// large-angle assignments enumerated by the FPT driver
    pub assignments_tried: u64,
    /// assignments rejected during external-cycle tracing, before placement
    pub assignments_pruned_at_trace: u64,
    /// most traversal visits any single vertex received in one sweep
    pub max_traversal_visits: u32,
}

impl RecognitionStats {
    pub fn absorb(&mut self, other: &RecognitionStats) {
        self.candidates_tried += other.candidates_tried;
        self.placement_steps += other.placement_steps;
        self.assignments_tried += other.assignments_tried;
        self.assignments_pruned_at_trace += other.assignments_pruned_at_trace;
        self.max_traversal_visits = self.max_traversal_visits.max(other.max_traversal_visits);
    }
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Accept(Box<GridDrawing>),
    Reject(Vec<RejectReason>),
}

#[derive(Debug, Clone)]
pub struct RecognitionOutcome {
    pub verdict: Verdict,
    pub stats: RecognitionStats,
}

impl RecognitionOutcome {
    pub fn accept(d: GridDrawing, stats: RecognitionStats) -> RecognitionOutcome {
        RecognitionOutcome {
            verdict: Verdict::Accept(Box::new(d)),
            stats,
        }
    }

    pub fn reject(reasons: Vec<RejectReason>, stats: RecognitionStats) -> RecognitionOutcome {
        RecognitionOutcome {
            verdict: Verdict::Reject(reasons),
            stats,
        }
    }

    pub fn is_accept(&self) -> bool {
        matches!(self.verdict, Verdict::Accept(_))
    }

    pub fn drawing(&self) -> Option<&GridDrawing> {
        match &self.verdict {
            Verdict::Accept(d) => Some(d),
            Verdict::Reject(_) => None,
        }
    }

    pub fn reasons(&self) -> &[RejectReason] {
        match &self.verdict {
            Verdict::Accept(_) => &[],
            Verdict::Reject(r) => r,
        }
    }
}

/// For each degree-3 vertex, the neighbor pair whose edges form the 180
/// degree angle in the target drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargeAngleAssignment {
    pairs: Vec<Option<(usize, usize)>>,
}

impl LargeAngleAssignment {
    /// `pairs[v]` must be Some exactly for the degree-3 vertices, and each
    /// pair must name two distinct neighbors of v.
    pub fn new(g: &Graph, pairs: Vec<Option<(usize, usize)>>) -> Result<Self, ConstraintError> {
        if pairs.len() != g.vertex_count() {
            return Err(ConstraintError::MalformedAngles(
                "assignment length differs from vertex count".into(),
            ));
        }
        for v in 0..g.vertex_count() {
            match (g.degree(v) == 3, pairs[v]) {
                (true, Some((u, w))) => {
                    if u == w || !g.has_edge(v, u) || !g.has_edge(v, w) {
                        return Err(ConstraintError::MalformedAngles(format!(
                            "angle at {v} must name two distinct neighbors"
                        )));
                    }
                }
                (true, None) => {
                    return Err(ConstraintError::MalformedAngles(format!(
                        "degree-3 vertex {v} has no angle"
                    )))
                }
                (false, Some(_)) => {
                    return Err(ConstraintError::MalformedAngles(format!(
                        "vertex {v} is not degree 3"
                    )))
                }
                (false, None) => {}
            }
        }
        let pairs = pairs
            .into_iter()
            .map(|p| p.map(|(u, w)| (u.min(w), u.max(w))))
            .collect();
        Ok(LargeAngleAssignment { pairs })
    }

    pub fn pair(&self, v: usize) -> Option<(usize, usize)> {
        self.pairs[v]
    }

    pub fn contains(&self, v: usize, u: usize) -> bool {
        matches!(self.pairs[v], Some((a, b)) if a == u || b == u)
    }

    /// The other member of the pair at v.
    pub fn partner(&self, v: usize, u: usize) -> Option<usize> {
        match self.pairs[v] {
            Some((a, b)) if a == u => Some(b),
            Some((a, b)) if b == u => Some(a),
            _ => None,
        }
    }

    pub fn pairs(&self) -> &[Option<(usize, usize)>] {
        &self.pairs
    }

    /// Reads the realized assignment off a drawing: at each degree-3 vertex
    /// the two neighbors that are collinear through it.
    pub fn from_drawing(d: &GridDrawing) -> Result<Self, ConstraintError> {
        let g = d.graph();
        let mut pairs = vec![None; g.vertex_count()];
        for v in 0..g.vertex_count() {
            if g.degree(v) != 3 {
                continue;
            }
            let ns = g.neighbors(v);
            let p = d.position(v);
            let mut found = None;
            for i in 0..3 {
                for j in i + 1..3 {
                    let (a, b) = (d.position(ns[i]), d.position(ns[j]));
                    let dir_a = ((a.x - p.x).signum(), (a.y - p.y).signum());
                    let dir_b = ((b.x - p.x).signum(), (b.y - p.y).signum());
                    if dir_a.0 == -dir_b.0 && dir_a.1 == -dir_b.1 {
                        found = Some((ns[i], ns[j]));
                    }
                }
            }
            pairs[v] = Some(found.ok_or_else(|| {
                ConstraintError::MalformedAngles(format!("no straight angle at vertex {v}"))
            })?);
        }
        LargeAngleAssignment::new(g, pairs)
    }
}

/// Optional inputs that a recognizer must honor.
#[derive(Debug, Clone, Default)]
pub struct Constraints {
    pub external_cycle: Option<Vec<usize>>,
    pub corners: Option<[usize; 4]>,
    pub rotation: Option<RotationSystem>,
    pub angles: Option<LargeAngleAssignment>,
}

impl Constraints {
    pub fn none() -> Constraints {
        Constraints::default()
    }

    pub fn with_external(cycle: Vec<usize>) -> Constraints {
        Constraints {
            external_cycle: Some(cycle),
            ..Default::default()
        }
    }

    pub fn with_corners(corners: [usize; 4]) -> Constraints {
        Constraints {
            corners: Some(corners),
            ..Default::default()
        }
    }

    pub fn with_rotation(rotation: RotationSystem) -> Constraints {
        Constraints {
            rotation: Some(rotation),
            ..Default::default()
        }
    }
}

/// Malformed constraints are reported as hard errors, distinct from rejects.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("malformed external cycle: {0}")]
    MalformedExternalCycle(String),
    #[error("malformed corners: {0}")]
    MalformedCorners(String),
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),
    #[error("malformed large-angle assignment: {0}")]
    MalformedAngles(String),
    #[error("graph is not an inner-2 graph with respect to the given cycle")]
    NotInner2,
    #[error("variant requires a constraint that was not given: {0}")]
    MissingConstraint(&'static str),
}

/// Checks that `cycle` is a simple cycle of `g`.
pub fn check_cycle(g: &Graph, cycle: &[usize]) -> Result<(), ConstraintError> {
    if cycle.len() < 3 {
        return Err(ConstraintError::MalformedExternalCycle(
            "cycle has fewer than 3 vertices".into(),
        ));
    }
    let mut seen = vec![false; g.vertex_count()];
    for &v in cycle {
        if v >= g.vertex_count() {
            return Err(ConstraintError::MalformedExternalCycle(format!(
                "vertex {v} out of range"
            )));
        }
        if seen[v] {
            return Err(ConstraintError::MalformedExternalCycle(format!(
                "vertex {v} repeats"
            )));
        }
        seen[v] = true;
    }
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        if !g.has_edge(u, v) {
            return Err(ConstraintError::MalformedExternalCycle(format!(
                "({u}, {v}) is not an edge"
            )));
        }
    }
    Ok(())
}
