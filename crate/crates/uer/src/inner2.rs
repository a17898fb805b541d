//! Recognition for inner-2 graphs: the external cycle is part of the input
//! and removing it leaves only vertices of degree at most two (paths and
//! cycles). Placement is the grid scan with the anchor policy.

use std::collections::BTreeSet;

use crate::candidate::{
    best_drawing, match_rotation, rectangles_from_corner_pairs, RectangleCandidate,
};
use crate::drawing::{validate, GridDrawing, Model};
use crate::graph::Graph;
use crate::outcome::{
    check_cycle, ConstraintError, Constraints, RecognitionOutcome, RecognitionStats, RejectReason,
};
use crate::sweep::{grid_sweep, SweepPolicy};

/// Removing the cycle leaves only vertices of degree at most 2.
pub fn is_inner2(g: &Graph, cycle: &[usize]) -> bool {
    let on: BTreeSet<usize> = cycle.iter().copied().collect();
    (0..g.vertex_count()).all(|v| {
        on.contains(&v) || g.neighbors(v).iter().filter(|&&u| !on.contains(&u)).count() <= 2
    })
}

/// Places the interior of one rectangle candidate.
pub fn inner2_sweep(
    g: &Graph,
    cand: &RectangleCandidate,
) -> Result<(GridDrawing, RecognitionStats), RejectReason> {
    let out = grid_sweep(g, cand, SweepPolicy::Anchor)?;
    let drawing = GridDrawing::new(g.clone(), out.positions, Model::Rf)
        .map_err(|_| RejectReason::DrawingInvalid)?;
    if !validate(&drawing).valid {
        return Err(RejectReason::DrawingInvalid);
    }
    let stats = RecognitionStats {
        placement_steps: out.steps,
        max_traversal_visits: out.max_visits,
        ..Default::default()
    };
    Ok((drawing, stats))
}

/// Tests whether `g` admits a rectangular-face drawing whose external cycle
/// is exactly `cycle`.
pub fn recognize_inner2(
    g: &Graph,
    cycle: &[usize],
    constraints: &Constraints,
) -> Result<RecognitionOutcome, ConstraintError> {
    check_cycle(g, cycle)?;
    if !is_inner2(g, cycle) {
        return Err(ConstraintError::NotInner2);
    }
    if let Some(rot) = &constraints.rotation {
        if !rot.matches_graph(g) {
            return Err(ConstraintError::MalformedRotation(
                "rotation does not list each vertex's neighbors".into(),
            ));
        }
    }

    let mut stats = RecognitionStats::default();
    let mut reasons = Vec::new();

    let candidates: Vec<RectangleCandidate> = match &constraints.corners {
        Some(corners) => match RectangleCandidate::with_corner_vertices(g, cycle, *corners) {
            Ok(c) => vec![c],
            Err(r) => {
                return Ok(RecognitionOutcome::reject(vec![r], stats));
            }
        },
        None => rectangles_from_corner_pairs(g, cycle),
    };
    if candidates.is_empty() {
        reasons.push(RejectReason::NoExternalCandidate);
    }

    let mut accepted = Vec::new();
    for cand in &candidates {
        stats.candidates_tried += 1;
        match inner2_sweep(g, cand) {
            Ok((drawing, s)) => {
                stats.absorb(&s);
                match &constraints.rotation {
                    Some(rot) => match match_rotation(&drawing, rot) {
                        Some(m) => accepted.push(m),
                        None => reasons.push(RejectReason::RotationNotPreserved),
                    },
                    None => accepted.push(drawing),
                }
            }
            Err(r) => reasons.push(r),
        }
    }

    match best_drawing(accepted) {
        Some(d) => Ok(RecognitionOutcome::accept(d, stats)),
        None => {
            reasons.dedup();
            Ok(RecognitionOutcome::reject(reasons, stats))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::canonicalize;

    /// C8 boundary with the two crossing chords; the canonical inner-2
    /// instance with one crossing.
    fn crossed_c8() -> (Graph, Vec<usize>) {
        let d = crate::drawing::tests::crossed_c8();
        (d.graph().clone(), (0..8).collect())
    }

    #[test]
    fn crossed_c8_accepts_with_one_crossing() {
        let (g, cycle) = crossed_c8();
        let out = recognize_inner2(&g, &cycle, &Constraints::none()).unwrap();
        let d = out.drawing().expect("accepted");
        let planar = crate::drawing::planarize(d).unwrap();
        assert_eq!(planar.crossing_count(), 1);
        let c = canonicalize(d);
        assert_eq!((c.width(), c.height()), (2, 2));
    }

    #[test]
    fn c12_with_crossing_chord_paths_accepts() {
        // 3x3 boundary plus a vertical path 1-12-8 and a horizontal path
        // 10-13-5 whose long edges cross at one point
        let mut edges: Vec<(usize, usize)> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
        edges.push((1, 12));
        edges.push((12, 8));
        edges.push((10, 13));
        edges.push((13, 5));
        let g = Graph::new(14, &edges).unwrap();
        let cycle: Vec<usize> = (0..12).collect();
        let out = recognize_inner2(&g, &cycle, &Constraints::none()).unwrap();
        let d = out.drawing().expect("accepted");
        let planar = crate::drawing::planarize(d).unwrap();
        assert_eq!(planar.crossing_count(), 1);
    }

    #[test]
    fn bare_opposite_chords_on_c12_reject() {
        // chords without interior vertices cannot be subdivided at every
        // interior grid point, so no rectangle works
        let mut edges: Vec<(usize, usize)> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
        edges.push((1, 7));
        edges.push((4, 10));
        let g = Graph::new(12, &edges).unwrap();
        let cycle: Vec<usize> = (0..12).collect();
        let out = recognize_inner2(&g, &cycle, &Constraints::none()).unwrap();
        assert!(!out.is_accept());
    }

    #[test]
    fn adjacent_side_chord_rejects() {
        // C8 with a chord joining vertices on adjacent sides
        let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.push((1, 3));
        let g = Graph::new(8, &edges).unwrap();
        let cycle: Vec<usize> = (0..8).collect();
        let out = recognize_inner2(&g, &cycle, &Constraints::none()).unwrap();
        assert!(!out.is_accept());
    }

    #[test]
    fn grid_4x4_is_inner2_and_accepts() {
        // the interior of the 4x4 grid is a 4-cycle, so the graph is inner-2
        // with respect to its boundary
        let g = Graph::grid(4, 4);
        let boundary = vec![0, 1, 2, 3, 7, 11, 15, 14, 13, 12, 8, 4];
        let out = recognize_inner2(&g, &boundary, &Constraints::none()).unwrap();
        let d = out.drawing().expect("accepted");
        let c = canonicalize(d);
        assert_eq!((c.width(), c.height()), (3, 3));
    }

    #[test]
    fn non_inner2_input_is_an_error() {
        // 5x5 grid: the center vertex keeps degree 4 off the boundary ring
        let g = Graph::grid(5, 5);
        let boundary = vec![0, 1, 2, 3, 4, 9, 14, 19, 24, 23, 22, 21, 20, 15, 10, 5];
        assert_eq!(
            recognize_inner2(&g, &boundary, &Constraints::none()).unwrap_err(),
            ConstraintError::NotInner2
        );
    }

    #[test]
    fn prescribed_corners_narrow_to_one_candidate() {
        let (g, cycle) = crossed_c8();
        let out = recognize_inner2(&g, &cycle, &Constraints::with_corners([0, 2, 4, 6])).unwrap();
        assert!(out.is_accept());
        assert_eq!(out.stats.candidates_tried, 1);
        // corners that are not degree 2 reject
        let bad = recognize_inner2(&g, &cycle, &Constraints::with_corners([0, 1, 4, 6])).unwrap();
        assert!(!bad.is_accept());
    }

    #[test]
    fn internal_path_instance_accepts() {
        // 3x3 boundary with a straight vertical chord path through two
        // internal degree-2 vertices (endpoints 1 and 8 share a column when
        // the corners sit at positions 0, 3, 6, 9)
        let mut edges: Vec<(usize, usize)> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
        edges.push((1, 12));
        edges.push((12, 13));
        edges.push((13, 8));
        let g = Graph::new(14, &edges).unwrap();
        let cycle: Vec<usize> = (0..12).collect();
        let out = recognize_inner2(&g, &cycle, &Constraints::none()).unwrap();
        let d = out.drawing().expect("accepted");
        assert!(validate(d).valid);
        let c = canonicalize(d);
        assert_eq!((c.width(), c.height()), (3, 3));
    }
}
