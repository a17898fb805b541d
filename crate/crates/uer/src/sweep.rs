//! Grid-scan placement engine: visits the interior points of a candidate
//! rectangle left to right and top to bottom, maintaining the `left` and
//! `up` continuation arrays, and decides per point whether it holds a
//! vertex, a crossing, or nothing.
//!
//! Two update policies share the engine. The anchor policy resolves the
//! alignment of a freshly placed vertex by traversing chains of degree-2
//! vertices to a vertex with an anchor on the boundary. The angle policy
//! uses the large-angle assignment at degree-3 vertices and only traverses
//! from degree-4 ones.

use std::collections::BTreeSet;

use crate::candidate::RectangleCandidate;
use crate::drawing::GridPoint;
use crate::graph::Graph;
use crate::outcome::{LargeAngleAssignment, RejectReason};

#[derive(Clone, Copy)]
pub(crate) enum SweepPolicy<'a> {
    Anchor,
    Angles(&'a LargeAngleAssignment),
}

pub(crate) struct SweepOutput {
    pub positions: Vec<GridPoint>,
    pub steps: u64,
    pub max_visits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Axis {
    Vertical,
    Horizontal,
}

struct SweepState<'a> {
    g: &'a Graph,
    w: i64,
    h: i64,
    pos: Vec<Option<GridPoint>>,
    on_cycle: Vec<bool>,
    left: Vec<Option<usize>>,
    up: Vec<Option<usize>>,
    promised_row: Vec<Option<i64>>,
    promised_col: Vec<Option<i64>>,
    visits: Vec<u32>,
    max_visits: u32,
    steps: u64,
}

impl SweepState<'_> {
    fn fixed(&self, v: usize, i: i64, j: i64) -> bool {
        match self.pos[v] {
            Some(p) => p.x < i || (p.x == i && p.y > j),
            None => false,
        }
    }
}

/// The point on the left/right/top/bottom side that anchors a traversal,
/// seen from the scan point (i, j): side points strictly below j force a
/// vertical continuation, as does the bottom point of column i; points
/// strictly right of i on the top or bottom side force a horizontal one, as
/// does the right-side point of row j.
fn decide_by_anchor(zp: GridPoint, i: i64, j: i64, w: i64, h: i64) -> Result<Axis, RejectReason> {
    if (zp.x == 0 || zp.x == w) && zp.y > 0 && zp.y < j {
        Ok(Axis::Vertical)
    } else if zp.x == i && zp.y == 0 {
        Ok(Axis::Vertical)
    } else if (zp.y == 0 || zp.y == h) && zp.x > i && zp.x < w {
        Ok(Axis::Horizontal)
    } else if zp.x == w && zp.y == j {
        Ok(Axis::Horizontal)
    } else {
        Err(RejectReason::ZPositionInvalid)
    }
}

pub(crate) fn grid_sweep(
    g: &Graph,
    cand: &RectangleCandidate,
    policy: SweepPolicy,
) -> Result<SweepOutput, RejectReason> {
    let n = g.vertex_count();
    let (w, h) = (cand.width as i64, cand.height as i64);

    let mut st = SweepState {
        g,
        w,
        h,
        pos: vec![None; n],
        on_cycle: vec![false; n],
        left: vec![None; h as usize + 1],
        up: vec![None; w as usize + 1],
        promised_row: vec![None; n],
        promised_col: vec![None; n],
        visits: vec![0; n],
        max_visits: 0,
        steps: 0,
    };
    for (idx, &v) in cand.cycle.iter().enumerate() {
        st.pos[v] = Some(cand.boundary_position(idx));
        st.on_cycle[v] = true;
    }
    // boundary degrees: corners are checked by the candidate, the rest may
    // not exceed 3, and no internal vertex may exceed 4 (guaranteed by the
    // graph type)
    for &v in &cand.cycle {
        if !cand.corners.contains(&v) && g.degree(v) > 3 {
            return Err(RejectReason::CandidateInvalid);
        }
    }

    let len = cand.cycle.len();
    let cycle_neighbors = |v: usize| -> (usize, usize) {
        let idx = cand.cycle.iter().position(|&x| x == v).unwrap();
        (
            cand.cycle[(idx + len - 1) % len],
            cand.cycle[(idx + 1) % len],
        )
    };
    let vertex_at =
        |st: &SweepState, p: GridPoint| -> Option<usize> { (0..n).find(|&v| st.pos[v] == Some(p)) };

    // initialize the continuation arrays from the left and top sides
    for j in 1..h {
        let v = vertex_at(&st, GridPoint::new(0, j)).ok_or(RejectReason::CandidateInvalid)?;
        if g.degree(v) == 3 {
            let (p, s) = cycle_neighbors(v);
            let third = *g
                .neighbors(v)
                .iter()
                .find(|&&z| z != p && z != s)
                .ok_or(RejectReason::CandidateInvalid)?;
            if let Some(tp) = st.pos[third] {
                if tp.y != j {
                    return Err(RejectReason::BadLeftInit);
                }
            } else {
                promise_row(&mut st, third, j)?;
            }
            st.left[j as usize] = Some(third);
        }
    }
    for i in 1..w {
        let v = vertex_at(&st, GridPoint::new(i, h)).ok_or(RejectReason::CandidateInvalid)?;
        if g.degree(v) == 3 {
            let (p, s) = cycle_neighbors(v);
            let third = *g
                .neighbors(v)
                .iter()
                .find(|&&z| z != p && z != s)
                .ok_or(RejectReason::CandidateInvalid)?;
            if let Some(tp) = st.pos[third] {
                if tp.x != i {
                    return Err(RejectReason::BadLeftInit);
                }
            } else {
                promise_col(&mut st, third, i)?;
            }
            st.up[i as usize] = Some(third);
        }
    }

    // scan interior points: columns left to right, top to bottom
    for i in 1..w {
        for j in (1..h).rev() {
            let l = st.left[j as usize];
            let u = st.up[i as usize];
            match (l, u) {
                (None, None) => {}
                (Some(a), Some(b)) if a != b => {
                    // two different continuations cross here; the point
                    // becomes a crossing when the edges are drawn
                    st.steps += 1;
                }
                (Some(a), Some(b)) => {
                    debug_assert_eq!(a, b);
                    place(&mut st, a, i, j, policy)?;
                }
                (Some(a), None) => place(&mut st, a, i, j, policy)?,
                (None, Some(b)) => place(&mut st, b, i, j, policy)?,
            }
            #[cfg(debug_assertions)]
            check_partial_faces(&st, i, j);
        }
    }

    if st.pos.iter().any(Option::is_none) {
        return Err(RejectReason::UnplacedRemainder);
    }
    Ok(SweepOutput {
        positions: st.pos.into_iter().map(Option::unwrap).collect(),
        steps: st.steps,
        max_visits: st.max_visits,
    })
}

fn promise_row(st: &mut SweepState, v: usize, j: i64) -> Result<(), RejectReason> {
    match st.promised_row[v] {
        Some(r) if r != j => Err(RejectReason::BadLeftInit),
        _ => {
            st.promised_row[v] = Some(j);
            Ok(())
        }
    }
}

fn promise_col(st: &mut SweepState, v: usize, i: i64) -> Result<(), RejectReason> {
    match st.promised_col[v] {
        Some(c) if c != i => Err(RejectReason::BadLeftInit),
        _ => {
            st.promised_col[v] = Some(i);
            Ok(())
        }
    }
}

fn place(
    st: &mut SweepState,
    v: usize,
    i: i64,
    j: i64,
    policy: SweepPolicy,
) -> Result<(), RejectReason> {
    if st.pos[v].is_some() {
        // the continuation is an already placed boundary vertex, so this
        // point had to be a crossing on the way to it
        return Err(RejectReason::AnchorMisaligned);
    }
    if st.promised_row[v].is_some_and(|r| r != j) || st.promised_col[v].is_some_and(|c| c != i) {
        return Err(RejectReason::PlacementConflict);
    }
    st.pos[v] = Some(GridPoint::new(i, j));
    st.promised_row[v] = None;
    st.promised_col[v] = None;
    st.steps += 1;

    // every fixed neighbor must sit on row j to the west or on column i to
    // the north, otherwise the connecting edge cannot be drawn
    for &z in st.g.neighbors(v) {
        if st.fixed(z, i, j) {
            let zp = st.pos[z].unwrap();
            if !((zp.y == j && zp.x < i) || (zp.x == i && zp.y > j)) {
                return Err(RejectReason::AnchorMisaligned);
            }
        }
    }

    let unfixed: Vec<usize> =
        st.g.neighbors(v)
            .iter()
            .copied()
            .filter(|&z| !st.fixed(z, i, j))
            .collect();
    if unfixed.is_empty() {
        return Err(RejectReason::UEmpty);
    }
    if unfixed.len() >= 3 {
        return Err(RejectReason::UTooBig);
    }

    let deg = st.g.degree(v);
    let (vertical_cont, horizontal_cont): (Option<usize>, Option<usize>) = if deg == 2 {
        // a degree-2 vertex passes straight through
        let u0 = unfixed[0];
        let arrived_horizontally =
            st.g.neighbors(v)
                .iter()
                .any(|&z| st.fixed(z, i, j) && st.pos[z].unwrap().y == j);
        if arrived_horizontally {
            (None, Some(u0))
        } else {
            (Some(u0), None)
        }
    } else {
        match policy {
            SweepPolicy::Angles(a) if deg == 3 => {
                let (a1, a2) = a.pair(v).ok_or(RejectReason::AngleInconsistentPlacement)?;
                let f1 = st.fixed(a1, i, j);
                let f2 = st.fixed(a2, i, j);
                let (z, t) = match (f1, f2) {
                    (true, false) => (a1, a2),
                    (false, true) => (a2, a1),
                    _ => return Err(RejectReason::AngleInconsistentPlacement),
                };
                let s = unfixed.iter().copied().find(|&x| x != t);
                let zp = st.pos[z].unwrap();
                if zp.y == j {
                    (s, Some(t))
                } else {
                    (Some(t), s)
                }
            }
            _ => {
                // prefer placed members: their coordinates decide directly
                let placed: Vec<usize> = unfixed
                    .iter()
                    .copied()
                    .filter(|&z| st.pos[z].is_some())
                    .collect();
                if let Some(&p0) = placed.first() {
                    let pp = st.pos[p0].unwrap();
                    let axis = if pp.x == i {
                        Axis::Vertical
                    } else if pp.y == j {
                        Axis::Horizontal
                    } else {
                        return Err(RejectReason::AnchorMisaligned);
                    };
                    let other = unfixed.iter().copied().find(|&z| z != p0);
                    match axis {
                        Axis::Vertical => (Some(p0), other),
                        Axis::Horizontal => (other, Some(p0)),
                    }
                } else {
                    let u0 = unfixed[0];
                    let other = unfixed.get(1).copied();
                    match traverse(st, v, u0, i, j, policy)? {
                        Axis::Vertical => (Some(u0), other),
                        Axis::Horizontal => (other, Some(u0)),
                    }
                }
            }
        }
    };

    assign_slot(st, vertical_cont, i, j, true)?;
    assign_slot(st, horizontal_cont, i, j, false)?;
    st.up[i as usize] = vertical_cont;
    st.left[j as usize] = horizontal_cont;
    st.steps += 1;
    Ok(())
}

/// Checks a continuation before storing it: placed occupants must sit on the
/// target column or row, unplaced ones record the promise.
fn assign_slot(
    st: &mut SweepState,
    occupant: Option<usize>,
    i: i64,
    j: i64,
    vertical: bool,
) -> Result<(), RejectReason> {
    let Some(z) = occupant else { return Ok(()) };
    if let Some(zp) = st.pos[z] {
        let ok = if vertical { zp.x == i } else { zp.y == j };
        if !ok {
            return Err(RejectReason::AnchorMisaligned);
        }
    } else if vertical {
        promise_col(st, z, i).map_err(|_| RejectReason::PlacementConflict)?;
    } else {
        promise_row(st, z, j).map_err(|_| RejectReason::PlacementConflict)?;
    }
    Ok(())
}

/// Walks from the just placed vertex toward `start` until something decides
/// whether the walked path is vertical or horizontal.
fn traverse(
    st: &mut SweepState,
    v: usize,
    start: usize,
    i: i64,
    j: i64,
    policy: SweepPolicy,
) -> Result<Axis, RejectReason> {
    let g = st.g;
    let (w, h) = (st.w, st.h);
    let mut prev = v;
    let mut cur = start;
    let mut walked: BTreeSet<usize> = BTreeSet::new();
    loop {
        if !walked.insert(cur) {
            return Err(RejectReason::TraversalHitsFixed);
        }
        st.visits[cur] += 1;
        st.max_visits = st.max_visits.max(st.visits[cur]);
        debug_assert!(st.visits[cur] <= 4, "vertex {cur} visited too often");
        st.steps += 1;

        if let Some(p) = st.pos[cur] {
            if st.fixed(cur, i, j) {
                return Err(RejectReason::TraversalHitsFixed);
            }
            return if p.x == i {
                Ok(Axis::Vertical)
            } else if p.y == j {
                Ok(Axis::Horizontal)
            } else {
                Err(RejectReason::AnchorMisaligned)
            };
        }

        match g.degree(cur) {
            2 => {
                let next = *g.neighbors(cur).iter().find(|&&z| z != prev).unwrap();
                prev = cur;
                cur = next;
            }
            3 => match policy {
                SweepPolicy::Anchor => return anchor_decision(st, cur, prev, i, j, w, h),
                SweepPolicy::Angles(a) => {
                    if !a.contains(cur, prev) {
                        // the path bends here; alignment follows from how
                        // many of the other neighbors are already fixed
                        return fixed_count_decision(st, cur, prev, i, j);
                    }
                    let t = a.partner(cur, prev).unwrap();
                    let s = g
                        .neighbors(cur)
                        .iter()
                        .copied()
                        .find(|&z| z != prev && z != t);
                    if let Some(s) = s {
                        if st.fixed(s, i, j) {
                            let sp = st.pos[s].unwrap();
                            if sp.x == i {
                                return Err(RejectReason::ZPositionInvalid);
                            }
                            return Ok(Axis::Vertical);
                        }
                        if let Some(sp) = st.pos[s] {
                            return decide_by_anchor(sp, i, j, w, h);
                        }
                    }
                    // continue along the large angle
                    prev = cur;
                    cur = t;
                }
            },
            4 => match policy {
                SweepPolicy::Anchor => return anchor_decision(st, cur, prev, i, j, w, h),
                SweepPolicy::Angles(_) => return fixed_count_decision(st, cur, prev, i, j),
            },
            _ => return Err(RejectReason::ZPositionInvalid),
        }
    }
}

/// The chain end is anchored through a neighbor on the boundary.
fn anchor_decision(
    st: &SweepState,
    cur: usize,
    prev: usize,
    i: i64,
    j: i64,
    w: i64,
    h: i64,
) -> Result<Axis, RejectReason> {
    let mut decision: Option<Axis> = None;
    let mut any = false;
    for &z in st.g.neighbors(cur) {
        if z == prev {
            continue;
        }
        let Some(zp) = st.pos[z] else { continue };
        any = true;
        let d = if st.fixed(z, i, j) {
            // a fixed interior anchor forces a vertical chain
            if zp.x == i {
                return Err(RejectReason::ZPositionInvalid);
            }
            Axis::Vertical
        } else {
            decide_by_anchor(zp, i, j, w, h)?
        };
        match decision {
            Some(prev) if prev != d => return Err(RejectReason::ZPositionInvalid),
            _ => decision = Some(d),
        }
    }
    if !any {
        return Err(RejectReason::ZPositionInvalid);
    }
    Ok(decision.unwrap())
}

/// A degree-4 vertex (or a degree-3 vertex entered outside its large angle)
/// can continue the vertical chain iff exactly one of its other neighbors is
/// fixed, and must be horizontal when none is.
fn fixed_count_decision(
    st: &SweepState,
    cur: usize,
    prev: usize,
    i: i64,
    j: i64,
) -> Result<Axis, RejectReason> {
    let fixed =
        st.g.neighbors(cur)
            .iter()
            .filter(|&&z| z != prev && st.fixed(z, i, j))
            .count();
    match fixed {
        0 => Ok(Axis::Horizontal),
        1 => Ok(Axis::Vertical),
        _ => Err(RejectReason::ZPositionInvalid),
    }
}

/// Invariant: the drawing induced by the placed vertices is valid except for
/// at most one face, the one still containing unprocessed grid points.
/// Checked as: every region of cells that does not touch the frontier must
/// fill its bounding box.
#[cfg(debug_assertions)]
fn check_partial_faces(st: &SweepState, i: i64, j: i64) {
    let (w, h) = (st.w, st.h);
    let (wu, hu) = (w as usize, h as usize);
    let mut hseg = vec![vec![false; wu]; hu + 1];
    let mut vseg = vec![vec![false; wu + 1]; hu];
    for (u, v) in st.g.edges() {
        let (Some(a), Some(b)) = (st.pos[u], st.pos[v]) else {
            continue;
        };
        if a.x == b.x {
            let x = a.x as usize;
            for y in a.y.min(b.y)..a.y.max(b.y) {
                vseg[y as usize][x] = true;
            }
        } else if a.y == b.y {
            let y = a.y as usize;
            for x in a.x.min(b.x)..a.x.max(b.x) {
                hseg[y][x as usize] = true;
            }
        } else {
            return; // doomed candidate; later checks reject it
        }
    }
    let unprocessed = |x: i64, y: i64| x > i || (x == i && y < j);
    let mut comp = vec![vec![usize::MAX; wu]; hu];
    let mut regions: Vec<(Vec<(usize, usize)>, bool)> = Vec::new();
    for cy in 0..hu {
        for cx in 0..wu {
            if comp[cy][cx] != usize::MAX {
                continue;
            }
            let id = regions.len();
            let mut cells = Vec::new();
            let mut frontier = false;
            let mut stack = vec![(cx, cy)];
            comp[cy][cx] = id;
            while let Some((x, y)) = stack.pop() {
                cells.push((x, y));
                for (px, py) in [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)] {
                    if unprocessed(px as i64, py as i64) {
                        frontier = true;
                    }
                }
                let mut visit = |nx: usize, ny: usize, open: bool| {
                    if open && comp[ny][nx] == usize::MAX {
                        comp[ny][nx] = id;
                        stack.push((nx, ny));
                    }
                };
                if x > 0 {
                    visit(x - 1, y, !vseg[y][x]);
                }
                if x + 1 < wu {
                    visit(x + 1, y, !vseg[y][x + 1]);
                }
                if y > 0 {
                    visit(x, y - 1, !hseg[y][x]);
                }
                if y + 1 < hu {
                    visit(x, y + 1, !hseg[y + 1][x]);
                }
            }
            regions.push((cells, frontier));
        }
    }
    for (cells, frontier) in &regions {
        if *frontier {
            continue;
        }
        let min_x = cells.iter().map(|c| c.0).min().unwrap();
        let max_x = cells.iter().map(|c| c.0).max().unwrap();
        let min_y = cells.iter().map(|c| c.1).min().unwrap();
        let max_y = cells.iter().map(|c| c.1).max().unwrap();
        assert_eq!(
            (max_x - min_x + 1) * (max_y - min_y + 1),
            cells.len(),
            "settled face is not rectangular at scan point ({i}, {j})"
        );
    }
}
