//! Rectangle candidates: an external cycle with four designated corners and
//! the grid dimensions they induce, plus shared helpers for enumerating and
//! checking them.

use std::collections::BTreeSet;

use crate::drawing::{canonicalize, geometric_rotation, GridDrawing, GridPoint};
use crate::graph::{Graph, RotationSystem};
use crate::outcome::RejectReason;

/// An external cycle drawn as a width x height unit rectangle. The cycle
/// starts at `corners[0]` and proceeds toward `corners[1]`; the four corner
/// vertices appear in this cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleCandidate {
    pub cycle: Vec<usize>,
    pub corners: [usize; 4],
    pub width: usize,
    pub height: usize,
}

impl RectangleCandidate {
    /// Builds a candidate from a cycle and the positions (indices into the
    /// cycle) of its four corners. Checks corner degrees and the equal
    /// opposite side condition. The cycle is normalized so it starts at the
    /// smallest corner id, in the direction of the lexicographically smaller
    /// vertex sequence.
    pub fn new(
        g: &Graph,
        cycle: &[usize],
        corner_positions: [usize; 4],
    ) -> Result<RectangleCandidate, RejectReason> {
        let len = cycle.len();
        let mut cp = corner_positions;
        cp.sort_unstable();
        if cp.iter().any(|&p| p >= len) || cp.windows(2).any(|w| w[0] == w[1]) {
            return Err(RejectReason::CandidateInvalid);
        }
        for &p in &cp {
            if g.degree(cycle[p]) != 2 {
                return Err(RejectReason::CornerDegreeThree);
            }
        }
        let arcs = [
            cp[1] - cp[0],
            cp[2] - cp[1],
            cp[3] - cp[2],
            len - cp[3] + cp[0],
        ];
        if arcs[0] != arcs[2] || arcs[1] != arcs[3] || arcs.contains(&0) {
            return Err(RejectReason::PropertyOneViolated);
        }

        // normalize start and direction
        let smallest = (0..4).min_by_key(|&i| cycle[cp[i]]).unwrap();
        let start = cp[smallest];
        let fwd: Vec<usize> = (0..len).map(|i| cycle[(start + i) % len]).collect();
        let bwd: Vec<usize> = (0..len).map(|i| cycle[(start + len - i) % len]).collect();
        let (seq, w) = if fwd <= bwd {
            (fwd, arcs[smallest % 4])
        } else {
            (bwd, arcs[(smallest + 3) % 4])
        };
        let h = len / 2 - w;
        let corners = [seq[0], seq[w], seq[w + h], seq[w + h + w]];
        Ok(RectangleCandidate {
            cycle: seq,
            corners,
            width: w,
            height: h,
        })
    }

    /// Same, with the corners given as vertex ids that must occur on the
    /// cycle.
    pub fn with_corner_vertices(
        g: &Graph,
        cycle: &[usize],
        corners: [usize; 4],
    ) -> Result<RectangleCandidate, RejectReason> {
        let mut pos = [0usize; 4];
        for (i, &c) in corners.iter().enumerate() {
            pos[i] = cycle
                .iter()
                .position(|&v| v == c)
                .ok_or(RejectReason::CandidateInvalid)?;
        }
        RectangleCandidate::new(g, cycle, pos)
    }

    pub fn perimeter(&self) -> usize {
        self.cycle.len()
    }

    /// Grid position of the i-th cycle vertex: corner 0 at the origin, the
    /// first side along +x, counterclockwise.
    pub fn boundary_position(&self, i: usize) -> GridPoint {
        let (w, h) = (self.width as i64, self.height as i64);
        let i = i as i64;
        if i <= w {
            GridPoint::new(i, 0)
        } else if i <= w + h {
            GridPoint::new(w, i - w)
        } else if i <= 2 * w + h {
            GridPoint::new(w - (i - w - h), h)
        } else {
            GridPoint::new(0, h - (i - 2 * w - h))
        }
    }

    /// Positions for every cycle vertex, indexed by vertex id.
    pub fn boundary_positions(&self, vertex_count: usize) -> Vec<Option<GridPoint>> {
        let mut pos = vec![None; vertex_count];
        for (i, &v) in self.cycle.iter().enumerate() {
            pos[v] = Some(self.boundary_position(i));
        }
        pos
    }

    pub fn contains(&self, v: usize) -> bool {
        self.cycle.contains(&v)
    }

    /// Lexicographic key for deterministic candidate ordering.
    pub fn order_key(&self) -> (usize, Vec<usize>) {
        (self.width, self.cycle.clone())
    }
}

/// All rectangles obtainable by guessing two degree-2 vertices of the cycle
/// as consecutive corners and inferring the other two from the equal
/// opposite sides condition. Deduplicated, deterministic order.
pub fn rectangles_from_corner_pairs(g: &Graph, cycle: &[usize]) -> Vec<RectangleCandidate> {
    let len = cycle.len();
    if !len.is_multiple_of(2) || len < 4 {
        return Vec::new();
    }
    let half = len / 2;
    let deg2: Vec<usize> = (0..len).filter(|&i| g.degree(cycle[i]) == 2).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &i in &deg2 {
        for &j in &deg2 {
            if i == j {
                continue;
            }
            let s1 = (j + len - i) % len;
            if s1 == 0 || s1 >= half {
                continue;
            }
            let s2 = half - s1;
            let k = (j + s2) % len;
            let l = (k + s1) % len;
            let mut key = [i, j, k, l];
            key.sort_unstable();
            if !seen.insert(key) {
                continue;
            }
            if let Ok(c) = RectangleCandidate::new(g, cycle, [i, j, k, l]) {
                out.push(c);
            }
        }
    }
    out.sort_by_key(|c| c.order_key());
    out.dedup();
    out
}

/// The unique rectangle (if any) with the four given corner vertices on the
/// given cycle.
pub fn rectangle_with_corners(
    g: &Graph,
    cycle: &[usize],
    corners: [usize; 4],
) -> Option<RectangleCandidate> {
    RectangleCandidate::with_corner_vertices(g, cycle, corners).ok()
}

/// Canonical representative of a cyclic vertex sequence: lexicographically
/// smallest among all rotations of both directions.
pub fn canonical_cycle(seq: &[usize]) -> Vec<usize> {
    let len = seq.len();
    let mut best: Option<Vec<usize>> = None;
    for dir in 0..2 {
        let base: Vec<usize> = if dir == 0 {
            seq.to_vec()
        } else {
            seq.iter().rev().copied().collect()
        };
        for s in 0..len {
            let rot: Vec<usize> = (0..len).map(|i| base[(s + i) % len]).collect();
            if best.as_ref().is_none_or(|b| &rot < b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

pub fn cycles_equal_cyclic(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && canonical_cycle(a) == canonical_cycle(b)
}

/// Checks a drawing against a prescribed rotation system, trying the mirror
/// image when the direct orientation does not match. Returns the matching
/// orientation of the drawing, or None.
pub fn match_rotation(d: &GridDrawing, prescribed: &RotationSystem) -> Option<GridDrawing> {
    if geometric_rotation(d).cyclic_eq(prescribed) {
        return Some(d.clone());
    }
    let m = d.mirrored();
    if geometric_rotation(&m).cyclic_eq(prescribed) {
        return Some(m);
    }
    None
}

/// Deterministic choice among accepted drawings: smallest canonical form by
/// the (y, x) position key, ties broken by the raw position list.
pub fn best_drawing(accepted: Vec<GridDrawing>) -> Option<GridDrawing> {
    accepted
        .into_iter()
        .map(|d| {
            let c = canonicalize(&d);
            let mut key: Vec<(i64, i64)> = c.positions().iter().map(|p| (p.y, p.x)).collect();
            key.sort_unstable();
            (key, c.positions().to_vec(), d)
        })
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
        .map(|(_, _, d)| d)
}
