//! General rectangular-face recognition: angle-preserving recognition for a
//! fixed large-angle assignment, and the fixed-parameter search that
//! enumerates the 3^k assignments over the k degree-3 vertices.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::candidate::{
    best_drawing, canonical_cycle, match_rotation, rectangles_from_corner_pairs, RectangleCandidate,
};
use crate::drawing::{validate, GridDrawing, Model};
use crate::graph::Graph;
use crate::outcome::{
    check_cycle, ConstraintError, Constraints, LargeAngleAssignment, RecognitionOutcome,
    RecognitionStats, RejectReason,
};
use crate::recognize::cycle_outcome;
use crate::sweep::{grid_sweep, SweepPolicy};

/// Walks the external cycle forced by the large-angle assignment, starting
/// along the directed edge `start`. At a degree-3 vertex the walk may only
/// continue along the large-angle partner of the arrival edge.
pub fn trace_external_with_angles(
    g: &Graph,
    a: &LargeAngleAssignment,
    start: (usize, usize),
) -> Result<Vec<usize>, RejectReason> {
    let (s0, s1) = start;
    debug_assert!(g.has_edge(s0, s1));
    let mut seq = vec![s0];
    let mut visited: BTreeSet<usize> = [s0].into();
    let mut prev = s0;
    let mut cur = s1;
    loop {
        if cur == s0 {
            return match g.degree(s0) {
                2 => Ok(seq),
                3 if a.contains(s0, prev) && a.partner(s0, prev) == Some(s1) => Ok(seq),
                3 => Err(RejectReason::AngleMismatch),
                _ => Err(RejectReason::HitsDegreeFour),
            };
        }
        if !visited.insert(cur) {
            return Err(RejectReason::NonSimpleClosure);
        }
        seq.push(cur);
        let next = match g.degree(cur) {
            4 => return Err(RejectReason::HitsDegreeFour),
            2 => *g.neighbors(cur).iter().find(|&&x| x != prev).unwrap(),
            3 => {
                if !a.contains(cur, prev) {
                    return Err(RejectReason::AngleMismatch);
                }
                a.partner(cur, prev).unwrap()
            }
            _ => return Err(RejectReason::HitsDegreeFour),
        };
        prev = cur;
        cur = next;
    }
}

/// Candidate rectangles under a fixed assignment. With corners the cycle is
/// forced; with a prescribed cycle its angle-consistency is verified first;
/// otherwise one forced cycle is traced per degree-3 vertex, deduplicated,
/// and filtered by the interior capacity bound.
pub fn rf_angle_candidates(
    g: &Graph,
    a: &LargeAngleAssignment,
    constraints: &Constraints,
) -> Result<Vec<RectangleCandidate>, RejectReason> {
    if let Some(corners) = constraints.corners {
        for &c in &corners {
            if g.degree(c) != 2 {
                return Err(RejectReason::CornerDegreeThree);
            }
        }
        let c0 = corners[0];
        let first = g.neighbors(c0)[0];
        let cycle = trace_external_with_angles(g, a, (c0, first))?;
        if corners.iter().any(|c| !cycle.contains(c)) {
            return Err(RejectReason::NoExternalCandidate);
        }
        if let Some(given) = &constraints.external_cycle {
            if !crate::candidate::cycles_equal_cyclic(&cycle, given) {
                return Err(RejectReason::NoExternalCandidate);
            }
        }
        return RectangleCandidate::with_corner_vertices(g, &cycle, corners).map(|c| vec![c]);
    }

    if let Some(cycle) = &constraints.external_cycle {
        verify_cycle_angles(g, a, cycle)?;
        return Ok(rectangles_from_corner_pairs(g, cycle));
    }

    // nothing prescribed: trace the unique candidate cycle through each
    // degree-3 vertex
    let n = g.vertex_count();
    let mut cycles = Vec::new();
    let mut seen = BTreeSet::new();
    for v in g.vertices_of_degree(3) {
        let (u, _) = a.pair(v).expect("assignment is total on degree-3 vertices");
        let Ok(cycle) = trace_external_with_angles(g, a, (v, u)) else {
            continue;
        };
        let len = cycle.len();
        // interior capacity: the real vertices off the cycle must fit into
        // the largest interior a rectangle of this perimeter can have
        if len % 2 != 0 || len < 4 {
            continue;
        }
        let s = len / 2 - 2;
        let capacity = (s / 2) * s.div_ceil(2);
        if n - len > capacity {
            continue;
        }
        debug_assert!(len * len > n, "candidate boundary shorter than sqrt(n)");
        if seen.insert(canonical_cycle(&cycle)) {
            cycles.push(cycle);
        }
    }
    let mut out = Vec::new();
    for cycle in &cycles {
        out.extend(rectangles_from_corner_pairs(g, cycle));
    }
    Ok(out)
}

fn verify_cycle_angles(
    g: &Graph,
    a: &LargeAngleAssignment,
    cycle: &[usize],
) -> Result<(), RejectReason> {
    let len = cycle.len();
    for (i, &v) in cycle.iter().enumerate() {
        if g.degree(v) == 4 {
            return Err(RejectReason::HitsDegreeFour);
        }
        if g.degree(v) == 3 {
            let p = cycle[(i + len - 1) % len];
            let s = cycle[(i + 1) % len];
            if a.pair(v) != Some((p.min(s), p.max(s))) {
                return Err(RejectReason::AngleMismatch);
            }
        }
    }
    Ok(())
}

/// Grid-scan placement under the angle policy, with a final check that the
/// drawing realizes the assignment.
pub fn rf_angle_place_internal(
    g: &Graph,
    a: &LargeAngleAssignment,
    cand: &RectangleCandidate,
) -> Result<(GridDrawing, RecognitionStats), RejectReason> {
    let out = grid_sweep(g, cand, SweepPolicy::Angles(a))?;
    let drawing = GridDrawing::new(g.clone(), out.positions, Model::Rf)
        .map_err(|_| RejectReason::DrawingInvalid)?;
    if !validate(&drawing).valid {
        return Err(RejectReason::DrawingInvalid);
    }
    if !assignment_realized(&drawing, a) {
        return Err(RejectReason::AngleInconsistentPlacement);
    }
    let stats = RecognitionStats {
        placement_steps: out.steps,
        max_traversal_visits: out.max_visits,
        ..Default::default()
    };
    Ok((drawing, stats))
}

/// Every degree-3 vertex has its assigned pair collinear through it.
pub fn assignment_realized(d: &GridDrawing, a: &LargeAngleAssignment) -> bool {
    (0..d.graph().vertex_count()).all(|v| match a.pair(v) {
        None => true,
        Some((u, w)) => {
            let (pu, pw) = (d.position(u), d.position(w));
            let pv = d.position(v);
            let du = ((pu.x - pv.x).signum(), (pu.y - pv.y).signum());
            let dw = ((pw.x - pv.x).signum(), (pw.y - pv.y).signum());
            du.0 == -dw.0 && du.1 == -dw.1
        }
    })
}

/// Tests whether `g` admits an angle-preserving rectangular-face drawing for
/// the given assignment.
pub fn recognize_rf_fixed_angles(
    g: &Graph,
    a: &LargeAngleAssignment,
    constraints: &Constraints,
) -> Result<RecognitionOutcome, ConstraintError> {
    if let Some(rot) = &constraints.rotation {
        if !rot.matches_graph(g) {
            return Err(ConstraintError::MalformedRotation(
                "rotation does not list each vertex's neighbors".into(),
            ));
        }
    }
    if let Some(cycle) = &constraints.external_cycle {
        check_cycle(g, cycle)?;
    }
    let mut stats = RecognitionStats::default();
    if g.is_cycle() {
        return Ok(cycle_outcome(g, constraints, Model::Rf));
    }
    if !g.is_biconnected() {
        return Ok(RecognitionOutcome::reject(
            vec![RejectReason::NotBiconnected],
            stats,
        ));
    }

    let mut reasons = Vec::new();
    let candidates = match rf_angle_candidates(g, a, constraints) {
        Ok(c) => c,
        Err(r) => {
            return Ok(RecognitionOutcome::reject(vec![r], stats));
        }
    };
    if candidates.is_empty() {
        reasons.push(RejectReason::NoExternalCandidate);
    }
    let mut accepted = Vec::new();
    for cand in &candidates {
        stats.candidates_tried += 1;
        match rf_angle_place_internal(g, a, cand) {
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

/// The i-th large-angle assignment in odometer order: degree-3 vertices in
/// id order, the three neighbor pairs of each in lexicographic order, with
/// the last vertex cycling fastest.
fn assignment_by_index(g: &Graph, deg3: &[usize], index: u128) -> LargeAngleAssignment {
    let mut pairs = vec![None; g.vertex_count()];
    let mut rest = index;
    for &v in deg3.iter().rev() {
        let digit = (rest % 3) as usize;
        rest /= 3;
        let ns = g.neighbors(v);
        let pair = match digit {
            0 => (ns[0], ns[1]),
            1 => (ns[0], ns[2]),
            _ => (ns[1], ns[2]),
        };
        pairs[v] = Some(pair);
    }
    LargeAngleAssignment::new(g, pairs).expect("enumerated assignment is well formed")
}

pub fn recognize_rf_fpt(
    g: &Graph,
    constraints: &Constraints,
) -> Result<RecognitionOutcome, ConstraintError> {
    recognize_rf_fpt_with_jobs(g, constraints, 1)
}

/// Enumerates the 3^k assignments and reports the first accepting one in
/// enumeration order. With several jobs the index space is split into
/// contiguous chunks; the reported winner is still the minimal accepting
/// index.
pub fn recognize_rf_fpt_with_jobs(
    g: &Graph,
    constraints: &Constraints,
    jobs: usize,
) -> Result<RecognitionOutcome, ConstraintError> {
    if let Some(rot) = &constraints.rotation {
        if !rot.matches_graph(g) {
            return Err(ConstraintError::MalformedRotation(
                "rotation does not list each vertex's neighbors".into(),
            ));
        }
    }
    if let Some(cycle) = &constraints.external_cycle {
        check_cycle(g, cycle)?;
    }
    let mut stats = RecognitionStats::default();
    if g.is_cycle() {
        return Ok(cycle_outcome(g, constraints, Model::Rf));
    }
    if !g.is_biconnected() {
        return Ok(RecognitionOutcome::reject(
            vec![RejectReason::NotBiconnected],
            stats,
        ));
    }

    let deg3 = g.vertices_of_degree(3);
    let k = deg3.len() as u32;
    let total: u128 = 3u128.pow(k);

    let run_one = |idx: u128| -> Result<RecognitionOutcome, ConstraintError> {
        let a = assignment_by_index(g, &deg3, idx);
        recognize_rf_fixed_angles(g, &a, constraints)
    };

    let jobs = jobs.clamp(1, 64);
    if jobs == 1 || total <= 16 {
        let mut reasons = Vec::new();
        for idx in 0..total {
            stats.assignments_tried += 1;
            let out = run_one(idx)?;
            if out.stats.candidates_tried == 0 {
                stats.assignments_pruned_at_trace += 1;
            }
            stats.absorb(&out.stats);
            match out.verdict {
                crate::outcome::Verdict::Accept(d) => {
                    return Ok(RecognitionOutcome::accept(*d, stats));
                }
                crate::outcome::Verdict::Reject(r) => reasons.extend(r),
            }
        }
        reasons.sort_by_key(|r| format!("{r:?}"));
        reasons.dedup();
        Ok(RecognitionOutcome::reject(reasons, stats))
    } else {
        // total > 16 here, so chunking by u64 arithmetic is safe for any
        // realistic k; indexes beyond u64 are not reachable in practice
        let total64: u64 = total.try_into().unwrap_or(u64::MAX);
        let best = AtomicU64::new(u64::MAX);
        let winner: Mutex<Option<(u64, GridDrawing)>> = Mutex::new(None);
        let tally: Mutex<(RecognitionStats, Vec<RejectReason>)> =
            Mutex::new((RecognitionStats::default(), Vec::new()));
        let failure: Mutex<Option<ConstraintError>> = Mutex::new(None);
        let chunk = total64.div_ceil(jobs as u64);
        std::thread::scope(|scope| {
            for t in 0..jobs as u64 {
                let best = &best;
                let winner = &winner;
                let tally = &tally;
                let failure = &failure;
                let deg3 = &deg3;
                scope.spawn(move || {
                    let lo = t * chunk;
                    let hi = ((t + 1) * chunk).min(total64);
                    let mut local = RecognitionStats::default();
                    let mut local_reasons = Vec::new();
                    for idx in lo..hi {
                        if idx >= best.load(Ordering::Relaxed) {
                            break;
                        }
                        let a = assignment_by_index(g, deg3, idx as u128);
                        local.assignments_tried += 1;
                        match recognize_rf_fixed_angles(g, &a, constraints) {
                            Ok(out) => {
                                if out.stats.candidates_tried == 0 {
                                    local.assignments_pruned_at_trace += 1;
                                }
                                local.absorb(&out.stats);
                                match out.verdict {
                                    crate::outcome::Verdict::Accept(d) => {
                                        best.fetch_min(idx, Ordering::Relaxed);
                                        let mut w = winner.lock().unwrap();
                                        if w.as_ref().is_none_or(|(i, _)| idx < *i) {
                                            *w = Some((idx, *d));
                                        }
                                        break;
                                    }
                                    crate::outcome::Verdict::Reject(r) => local_reasons.extend(r),
                                }
                            }
                            Err(e) => {
                                *failure.lock().unwrap() = Some(e);
                                break;
                            }
                        }
                    }
                    let mut t = tally.lock().unwrap();
                    t.0.absorb(&local);
                    t.1.extend(local_reasons);
                });
            }
        });
        if let Some(e) = failure.into_inner().unwrap() {
            return Err(e);
        }
        let (mut agg, mut reasons) = tally.into_inner().unwrap();
        agg.absorb(&stats);
        match winner.into_inner().unwrap() {
            Some((_, d)) => Ok(RecognitionOutcome::accept(d, agg)),
            None => {
                reasons.sort_by_key(|r| format!("{r:?}"));
                reasons.dedup();
                Ok(RecognitionOutcome::reject(reasons, agg))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{canonicalize, planarize};

    fn crossed_c8() -> Graph {
        crate::drawing::tests::crossed_c8().graph().clone()
    }

    /// The drawing-consistent assignment for the crossed C8: each midpoint's
    /// large angle is formed by its two boundary edges.
    fn crossed_c8_assignment(g: &Graph) -> LargeAngleAssignment {
        let mut pairs = vec![None; 8];
        for v in [1usize, 3, 5, 7] {
            pairs[v] = Some(((v + 7) % 8, (v + 1) % 8));
        }
        LargeAngleAssignment::new(g, pairs).unwrap()
    }

    #[test]
    fn trace_crossed_c8_boundary() {
        let g = crossed_c8();
        let a = crossed_c8_assignment(&g);
        let cycle = trace_external_with_angles(&g, &a, (0, 1)).unwrap();
        assert_eq!(cycle.len(), 8);
        // swapping one midpoint's angle to include the chord breaks the walk
        let mut pairs: Vec<Option<(usize, usize)>> = a.pairs().to_vec();
        pairs[1] = Some((0, 5));
        let bad = LargeAngleAssignment::new(&g, pairs).unwrap();
        assert_eq!(
            trace_external_with_angles(&g, &bad, (0, 1)).unwrap_err(),
            RejectReason::AngleMismatch
        );
    }

    #[test]
    fn candidates_for_crossed_c8() {
        let g = crossed_c8();
        let a = crossed_c8_assignment(&g);
        // corners given: a single 2x2 rectangle
        let cands = rf_angle_candidates(&g, &a, &Constraints::with_corners([0, 2, 4, 6])).unwrap();
        assert_eq!(cands.len(), 1);
        assert_eq!((cands[0].width, cands[0].height), (2, 2));
        // nothing given: one cycle after deduplication
        let cands = rf_angle_candidates(&g, &a, &Constraints::none()).unwrap();
        assert!(!cands.is_empty());
        for c in &cands {
            assert!(c.perimeter() * c.perimeter() > 8);
        }
    }

    #[test]
    fn fixed_angles_accepts_crossed_c8() {
        let g = crossed_c8();
        let a = crossed_c8_assignment(&g);
        let out = recognize_rf_fixed_angles(&g, &a, &Constraints::none()).unwrap();
        let d = out.drawing().expect("accepted");
        assert_eq!(planarize(d).unwrap().crossing_count(), 1);
        assert!(assignment_realized(d, &a));
    }

    #[test]
    fn assignment_read_off_a_drawing_reaccepts_identically() {
        for g in [
            crossed_c8(),
            Graph::grid(3, 3),
            crate::corpus::c12_chord_path_graph(),
        ] {
            let out = recognize_rf_fpt(&g, &Constraints::none()).unwrap();
            let d = out.drawing().expect("accepted").clone();
            let a = LargeAngleAssignment::from_drawing(&d).unwrap();
            let again = recognize_rf_fixed_angles(&g, &a, &Constraints::none()).unwrap();
            let d2 = again.drawing().expect("re-accepted");
            assert_eq!(canonicalize(&d), canonicalize(d2));
        }
    }

    #[test]
    fn fixed_angles_on_grid_3x3() {
        let g = Graph::grid(3, 3);
        // boundary midpoints keep their straight boundary angles
        let mut pairs = vec![None; 9];
        pairs[1] = Some((0, 2));
        pairs[3] = Some((0, 6));
        pairs[5] = Some((2, 8));
        pairs[7] = Some((6, 8));
        let a = LargeAngleAssignment::new(&g, pairs).unwrap();
        let out = recognize_rf_fixed_angles(&g, &a, &Constraints::none()).unwrap();
        let d = out.drawing().expect("accepted");
        let c = canonicalize(d);
        assert_eq!((c.width(), c.height()), (2, 2));

        // one midpoint bent through the center cannot be drawn
        let mut pairs = vec![None; 9];
        pairs[1] = Some((0, 4));
        pairs[3] = Some((0, 6));
        pairs[5] = Some((2, 8));
        pairs[7] = Some((6, 8));
        let bad = LargeAngleAssignment::new(&g, pairs).unwrap();
        let out = recognize_rf_fixed_angles(&g, &bad, &Constraints::none()).unwrap();
        assert!(!out.is_accept());
        // a trace that runs into the degree-4 center rejects immediately
        assert_eq!(
            trace_external_with_angles(&g, &bad, (1, 4)).unwrap_err(),
            RejectReason::HitsDegreeFour
        );
    }

    #[test]
    fn fpt_accepts_crossed_c8_and_counts_assignments() {
        let g = crossed_c8();
        let out = recognize_rf_fpt(&g, &Constraints::none()).unwrap();
        assert!(out.is_accept());
        assert!(out.stats.assignments_tried <= 81);
    }

    #[test]
    fn fpt_parallel_matches_sequential() {
        let g = crossed_c8();
        let seq = recognize_rf_fpt_with_jobs(&g, &Constraints::none(), 1).unwrap();
        let par = recognize_rf_fpt_with_jobs(&g, &Constraints::none(), 4).unwrap();
        let (a, b) = (seq.drawing().unwrap(), par.drawing().unwrap());
        assert_eq!(canonicalize(a), canonicalize(b));
    }

    #[test]
    fn fpt_rejects_odd_cycle() {
        let g = Graph::cycle(5);
        let out = recognize_rf_fpt(&g, &Constraints::none()).unwrap();
        assert_eq!(out.reasons(), &[RejectReason::CycleOddLength]);
    }
}
