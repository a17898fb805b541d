//! Rectangular-face recognition when no internal vertex has degree 3.
//! Five input variants: corners given, rotation system given, external cycle
//! given (with a dedicated linear selection for 3-graphs), and the general
//! case over all corner quadruples. Internal placement smooths the internal
//! degree-2 vertices, runs the column-walk sweep and restores them along the
//! resulting straight segments.

use std::collections::{BTreeMap, BTreeSet};

use crate::candidate::{
    best_drawing, canonical_cycle, cycles_equal_cyclic, match_rotation,
    rectangles_from_corner_pairs, RectangleCandidate,
};
use crate::drawing::{validate, GridDrawing, GridPoint, Model};
use crate::graph::{Graph, RotationSystem};
use crate::outcome::{
    check_cycle, ConstraintError, Constraints, RecognitionOutcome, RecognitionStats, RejectReason,
};
use crate::recognize::cycle_outcome;
use crate::usf::{candidates_via_core, path_sweep, CoreMode, PathSweepMode};

/// Candidate rectangles when the four corners are prescribed (same pipeline
/// as the unit-square case; chords of the smoothed core may stand for
/// smoothed paths here).
pub fn rf3_candidates_corners_given(g: &Graph, corners: [usize; 4]) -> Vec<RectangleCandidate> {
    candidates_via_core(g, CoreMode::RfCorners(corners), None)
}

/// The unique rectangle for a 3-graph with a prescribed external cycle: one
/// chord path with a chord-free flank pins the corner distances.
pub fn rf3_candidate_cycle_given_3graph(
    g: &Graph,
    cycle: &[usize],
) -> Result<RectangleCandidate, RejectReason> {
    if g.max_degree() > 3 {
        return Err(RejectReason::CandidateInvalid);
    }
    let on: BTreeSet<usize> = cycle.iter().copied().collect();
    for v in 0..g.vertex_count() {
        if g.degree(v) == 3 && !on.contains(&v) {
            return Err(RejectReason::CycleMissingDeg3Vertex);
        }
    }

    let paths = chord_paths_3graph(g, cycle)?;
    if paths.is_empty() {
        return Err(RejectReason::CandidateInvalid); // the graph is its cycle
    }
    let counted: Vec<SidePath> = paths
        .iter()
        .map(|p| SidePath {
            from: p[0],
            to: *p.last().unwrap(),
            effective_len: p.len(),
            degree4: 0,
        })
        .collect();
    select_corners_by_side(g, cycle, &counted)
}

/// Candidate rectangles from a prescribed rotation system: for one degree-3
/// vertex, each of its three incident faces is guessed as the external one
/// and the boundary is traced clockwise through the rotation.
pub fn rf3_candidates_rotation_given(g: &Graph, rot: &RotationSystem) -> Vec<RectangleCandidate> {
    let deg3 = g.vertices_of_degree(3);
    let Some(&v) = deg3.first() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for wedge in 0..3 {
        let rv = &rot.0[v];
        let z = rv[wedge];
        let w0 = rv[(wedge + 1) % 3];
        let Some(cycle) = trace_cycle_by_rotation(g, rot, v, z, w0) else {
            continue;
        };
        let on: BTreeSet<usize> = cycle.iter().copied().collect();
        if deg3.iter().any(|d| !on.contains(d)) {
            continue; // a degree-3 vertex would stay internal
        }
        let Some(paths) = chord_paths_by_rotation(g, rot, &cycle) else {
            continue;
        };
        if paths.is_empty() {
            continue;
        }
        // each path counts its interior degree-4 vertices: those align with
        // degree-3 flank vertices instead of adding their own grid row
        let counted: Vec<SidePath> = paths
            .iter()
            .map(|p| {
                let deg4 = p.iter().filter(|&&x| g.degree(x) == 4).count();
                SidePath {
                    from: p[0],
                    to: *p.last().unwrap(),
                    effective_len: p.len() - deg4,
                    degree4: deg4,
                }
            })
            .collect();
        if let Ok(cand) = select_corners_by_side(g, &cycle, &counted) {
            out.push(cand);
        }
    }
    let mut seen = BTreeSet::new();
    out.sort_by_key(|c| c.order_key());
    out.retain(|c| seen.insert(canonical_cycle(&c.cycle)));
    out
}

/// Walks the external cycle clockwise from the dart (v, w0), where (v, z)
/// and (v, w0) bound the guessed external face.
fn trace_cycle_by_rotation(
    g: &Graph,
    rot: &RotationSystem,
    v: usize,
    z: usize,
    w0: usize,
) -> Option<Vec<usize>> {
    let mut seq = vec![v];
    let mut visited: BTreeSet<usize> = [v].into();
    let mut prev = v;
    let mut cur = w0;
    loop {
        if cur == v {
            return (prev == z).then_some(seq);
        }
        if !visited.insert(cur) {
            return None;
        }
        seq.push(cur);
        let next = match g.degree(cur) {
            2 => *g.neighbors(cur).iter().find(|&&x| x != prev)?,
            3 => {
                let rc = &rot.0[cur];
                let idx = rc.iter().position(|&x| x == prev)?;
                rc[(idx + 1) % 3]
            }
            _ => return None, // degree-4 vertices cannot be external
        };
        prev = cur;
        cur = next;
    }
}

/// Chord paths of a 3-graph relative to its cycle: from each degree-3 cycle
/// vertex, follow the non-cycle edge through internal degree-2 vertices.
fn chord_paths_3graph(g: &Graph, cycle: &[usize]) -> Result<Vec<Vec<usize>>, RejectReason> {
    let on: BTreeSet<usize> = cycle.iter().copied().collect();
    let len = cycle.len();
    let mut paths: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (idx, &v) in cycle.iter().enumerate() {
        if g.degree(v) != 3 {
            continue;
        }
        let p = cycle[(idx + len - 1) % len];
        let s = cycle[(idx + 1) % len];
        let third = *g
            .neighbors(v)
            .iter()
            .find(|&&x| x != p && x != s)
            .ok_or(RejectReason::CandidateInvalid)?;
        let mut path = vec![v];
        let mut prev = v;
        let mut cur = third;
        loop {
            if path.len() > g.vertex_count() {
                return Err(RejectReason::CandidateInvalid);
            }
            path.push(cur);
            if on.contains(&cur) {
                if g.degree(cur) != 3 {
                    return Err(RejectReason::CandidateInvalid);
                }
                break;
            }
            if g.degree(cur) != 2 {
                return Err(RejectReason::CandidateInvalid);
            }
            let next = *g.neighbors(cur).iter().find(|&&x| x != prev).unwrap();
            prev = cur;
            cur = next;
        }
        let key = (
            path[0].min(*path.last().unwrap()),
            path[0].max(*path.last().unwrap()),
        );
        paths.entry(key).or_insert(path);
    }
    Ok(paths.into_values().collect())
}

/// Chord paths of a 4-graph guided by the rotation system: opposite edges at
/// a degree-4 vertex belong to the same straight path. Paths may share their
/// degree-4 vertices but not their endpoints.
fn chord_paths_by_rotation(
    g: &Graph,
    rot: &RotationSystem,
    cycle: &[usize],
) -> Option<Vec<Vec<usize>>> {
    let on: BTreeSet<usize> = cycle.iter().copied().collect();
    let len = cycle.len();
    let mut paths: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (idx, &v) in cycle.iter().enumerate() {
        if g.degree(v) != 3 {
            continue;
        }
        let p = cycle[(idx + len - 1) % len];
        let s = cycle[(idx + 1) % len];
        let third = *g.neighbors(v).iter().find(|&&x| x != p && x != s)?;
        let mut path = vec![v];
        let mut prev = v;
        let mut cur = third;
        loop {
            if path.len() > 2 * g.vertex_count() {
                return None;
            }
            path.push(cur);
            if on.contains(&cur) {
                if g.degree(cur) != 3 {
                    return None;
                }
                break;
            }
            let next = match g.degree(cur) {
                2 => *g.neighbors(cur).iter().find(|&&x| x != prev)?,
                4 => {
                    let rc = &rot.0[cur];
                    let idx = rc.iter().position(|&x| x == prev)?;
                    rc[(idx + 2) % 4]
                }
                _ => return None, // internal degree-3 vertex
            };
            prev = cur;
            cur = next;
        }
        let key = (
            path[0].min(*path.last().unwrap()),
            path[0].max(*path.last().unwrap()),
        );
        paths.entry(key).or_insert(path);
    }
    Some(paths.into_values().collect())
}

/// A chord path reduced to what corner selection needs: endpoints, the
/// number of vertices that occupy their own grid row on the flank, and the
/// number of interior degree-4 vertices (each needs a degree-3 partner on
/// the flank).
struct SidePath {
    from: usize,
    to: usize,
    effective_len: usize,
    degree4: usize,
}

/// Shared corner selection for the cycle-given variants: pick a chord path
/// with a flank containing no other full path, then the corner distances on
/// both flanks follow from the side capacity.
fn select_corners_by_side(
    g: &Graph,
    cycle: &[usize],
    counted: &[SidePath],
) -> Result<RectangleCandidate, RejectReason> {
    let len = cycle.len();
    let idx_of: BTreeMap<usize, usize> = cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let deg3_positions: BTreeSet<usize> = cycle
        .iter()
        .enumerate()
        .filter(|(_, &v)| g.degree(v) == 3)
        .map(|(i, _)| i)
        .collect();

    let endpoint_positions: Vec<(usize, usize)> = counted
        .iter()
        .map(|p| (idx_of[&p.from], idx_of[&p.to]))
        .collect();

    let mut chosen: Option<(usize, usize, usize)> = None; // (start, end, need)
    'outer: for (pi, path) in counted.iter().enumerate() {
        let (pu, pv) = (idx_of[&path.from], idx_of[&path.to]);
        for (start, end) in [(pu, pv), (pv, pu)] {
            let steps = (end + len - start) % len;
            let inside = |p: usize| {
                let off = (p + len - start) % len;
                off > 0 && off < steps
            };
            let blocked = endpoint_positions
                .iter()
                .enumerate()
                .any(|(qi, &(a, b))| qi != pi && inside(a) && inside(b));
            if !blocked {
                // count degree-3 vertices strictly inside the flank; each
                // degree-4 vertex of the path needs one of them as partner
                let k = deg3_positions.iter().filter(|&&p| inside(p)).count();
                if k < path.degree4 {
                    return Err(RejectReason::CandidateInvalid);
                }
                chosen = Some((start, end, path.effective_len + k));
                break 'outer;
            }
        }
    }
    let Some((start, end, need)) = chosen else {
        return Err(RejectReason::CandidateInvalid);
    };

    let arc_steps = (end + len - start) % len;
    let cr = arc_steps + 1; // vertices on the chosen flank, endpoints included
    let cl = len - arc_steps + 1;
    let d_r = corner_distance(cr, need)?;
    let d_l = corner_distance(cl, need)?;
    let corner_a = cycle[(start + d_r) % len];
    let corner_b = cycle[(end + len - d_r) % len];
    let corner_c = cycle[(start + len - d_l) % len];
    let corner_d = cycle[(end + d_l) % len];
    for c in [corner_a, corner_b, corner_c, corner_d] {
        if g.degree(c) != 2 {
            return Err(RejectReason::CornerDegreeThree);
        }
    }
    RectangleCandidate::with_corner_vertices(g, cycle, [corner_a, corner_b, corner_d, corner_c])
}

fn corner_distance(flank_vertices: usize, need: usize) -> Result<usize, RejectReason> {
    if flank_vertices < need + 2 {
        return Err(RejectReason::NonIntegralCornerDistance);
    }
    let num = flank_vertices - need;
    if !num.is_multiple_of(2) {
        return Err(RejectReason::NonIntegralCornerDistance);
    }
    Ok(num / 2)
}

/// Smooths internal degree-2 vertices, runs the column-walk sweep on the
/// smoothed graph and restores the smoothed vertices at unit spacing along
/// their straight segments, checking they align with degree-2 side vertices.
pub fn rf3_place_internal(
    g: &Graph,
    cand: &RectangleCandidate,
) -> Result<(GridDrawing, u64), RejectReason> {
    let on: BTreeSet<usize> = cand.cycle.iter().copied().collect();
    for v in 0..g.vertex_count() {
        if !on.contains(&v) && g.degree(v) == 3 {
            return Err(RejectReason::CandidateInvalid);
        }
    }
    let (smoothed, map) = g
        .smooth_degree2(&on)
        .map_err(|_| RejectReason::CandidateInvalid)?;
    let new_id: BTreeMap<usize, usize> = map
        .kept()
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();
    let cycle_s: Vec<usize> = cand.cycle.iter().map(|v| new_id[v]).collect();
    let corners_s = [
        new_id[&cand.corners[0]],
        new_id[&cand.corners[1]],
        new_id[&cand.corners[2]],
        new_id[&cand.corners[3]],
    ];
    let cand_s = RectangleCandidate::with_corner_vertices(&smoothed, &cycle_s, corners_s)?;

    let sweep = path_sweep(&smoothed, &cand_s, PathSweepMode::Rf)?;

    let mut pos: Vec<Option<GridPoint>> = vec![None; g.vertex_count()];
    for (new, &old) in map.kept().iter().enumerate() {
        pos[old] = Some(sweep.positions[new]);
    }
    let (w, h) = (cand_s.width as i64, cand_s.height as i64);
    let side_degree2 = |p: GridPoint| -> bool {
        cand_s
            .cycle
            .iter()
            .enumerate()
            .any(|(i, &v)| cand_s.boundary_position(i) == p && smoothed.degree(v) == 2)
    };
    for (u, v) in smoothed.edges() {
        let (old_u, old_v) = (map.old_id(u), map.old_id(v));
        let interior = map.interior(old_u, old_v);
        if interior.is_empty() {
            continue;
        }
        let (a, b) = (sweep.positions[u], sweep.positions[v]);
        let k = interior.len() as i64;
        if a.x == b.x {
            if (a.y - b.y).abs() != k + 1 {
                return Err(RejectReason::Degree2AlignmentMismatch);
            }
            let step = (b.y - a.y).signum();
            for (t, &r) in interior.iter().enumerate() {
                let p = GridPoint::new(a.x, a.y + step * (t as i64 + 1));
                // a degree-2 vertex on a vertical run needs degree-2 side
                // partners in its row
                if !side_degree2(GridPoint::new(0, p.y)) || !side_degree2(GridPoint::new(w, p.y)) {
                    return Err(RejectReason::Degree2AlignmentMismatch);
                }
                pos[r] = Some(p);
            }
        } else if a.y == b.y {
            if (a.x - b.x).abs() != k + 1 {
                return Err(RejectReason::Degree2AlignmentMismatch);
            }
            let step = (b.x - a.x).signum();
            for (t, &r) in interior.iter().enumerate() {
                let p = GridPoint::new(a.x + step * (t as i64 + 1), a.y);
                if !side_degree2(GridPoint::new(p.x, 0)) || !side_degree2(GridPoint::new(p.x, h)) {
                    return Err(RejectReason::Degree2AlignmentMismatch);
                }
                pos[r] = Some(p);
            }
        } else {
            return Err(RejectReason::Degree2AlignmentMismatch);
        }
    }
    if pos.iter().any(Option::is_none) {
        return Err(RejectReason::LeftoverUnplacedVertices);
    }
    let drawing = GridDrawing::new(
        g.clone(),
        pos.into_iter().map(Option::unwrap).collect(),
        Model::Rf,
    )
    .map_err(|_| RejectReason::DrawingInvalid)?;
    if !validate(&drawing).valid {
        return Err(RejectReason::DrawingInvalid);
    }
    Ok((drawing, sweep.steps))
}

/// Tests whether `g` admits a rectangular-face drawing with no internal
/// degree-3 vertex, under the given constraints.
pub fn recognize_rf_no_internal_deg3(
    g: &Graph,
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
    if let Some(corners) = &constraints.corners {
        let mut c = corners.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.len() != 4 || c.iter().any(|&v| v >= g.vertex_count()) {
            return Err(ConstraintError::MalformedCorners(
                "need four distinct vertex ids".into(),
            ));
        }
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
    let mut candidates: Vec<RectangleCandidate> = if let Some(corners) = constraints.corners {
        rf3_candidates_corners_given(g, corners)
    } else if let Some(rot) = &constraints.rotation {
        rf3_candidates_rotation_given(g, rot)
    } else if let Some(cycle) = &constraints.external_cycle {
        if g.max_degree() <= 3 {
            match rf3_candidate_cycle_given_3graph(g, cycle) {
                Ok(c) => vec![c],
                Err(r) => {
                    reasons.push(r);
                    Vec::new()
                }
            }
        } else {
            rectangles_from_corner_pairs(g, cycle)
        }
    } else {
        let deg2 = g.vertices_of_degree(2);
        let mut all = Vec::new();
        let mut seen = BTreeSet::new();
        for a in 0..deg2.len() {
            for b in a + 1..deg2.len() {
                for c in b + 1..deg2.len() {
                    for d in c + 1..deg2.len() {
                        let quad = [deg2[a], deg2[b], deg2[c], deg2[d]];
                        for cand in rf3_candidates_corners_given(g, quad) {
                            if seen.insert((canonical_cycle(&cand.cycle), cand.corners)) {
                                all.push(cand);
                            }
                        }
                    }
                }
            }
        }
        all.sort_by_key(|c| c.order_key());
        all
    };

    // cross-filter the remaining constraints
    if let Some(cycle) = &constraints.external_cycle {
        if constraints.corners.is_some() || constraints.rotation.is_some() {
            candidates.retain(|c| cycles_equal_cyclic(&c.cycle, cycle));
        }
    }
    if let Some(corners) = &constraints.corners {
        let mut want = corners.to_vec();
        want.sort_unstable();
        candidates.retain(|c| {
            let mut have = c.corners.to_vec();
            have.sort_unstable();
            have == want
        });
    }

    if candidates.is_empty() && reasons.is_empty() {
        reasons.push(RejectReason::NoExternalCandidate);
    }
    let mut accepted = Vec::new();
    for cand in &candidates {
        stats.candidates_tried += 1;
        match rf3_place_internal(g, cand) {
            Ok((drawing, steps)) => {
                stats.placement_steps += steps;
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
