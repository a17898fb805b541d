//! Simple undirected graphs of maximum degree 4, structural predicates and
//! the smoothing transformation.
//!
//! Vertex ids are dense integers `0..n`. Adjacency lists are kept sorted, so
//! all operations are deterministic for a fixed input.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} would have degree {1} > 4")]
    DegreeExceeded(usize, usize),
    #[error("smoothing would create a degenerate (self-loop or parallel) edge")]
    DegenerateSmoothing,
    #[error("graph is not planar")]
    NotPlanar,
    #[error("graph is not triconnected")]
    NotTriconnected,
}

/// Immutable simple undirected graph with maximum degree 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects self-loops, duplicate edges
    /// and vertices of degree larger than 4.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); vertex_count];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= vertex_count {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= vertex_count {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            if list.len() > 4 {
                return Err(GraphError::DegreeExceeded(v, list.len()));
            }
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            labels: vec![None; vertex_count],
            edge_count: edges.len(),
        })
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Graph {
        assert_eq!(labels.len(), self.vertex_count());
        self.labels = labels;
        self
    }

    /// The k-cycle `0-1-...-(k-1)-0`.
    pub fn cycle(k: usize) -> Graph {
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Graph::new(k, &edges).expect("cycle is simple for k >= 3")
    }

    /// The m x n grid graph (m columns, n rows, row-major ids).
    pub fn grid(m: usize, n: usize) -> Graph {
        let id = |x: usize, y: usize| y * m + x;
        let mut edges = Vec::new();
        for y in 0..n {
            for x in 0..m {
                if x + 1 < m {
                    edges.push((id(x, y), id(x + 1, y)));
                }
                if y + 1 < n {
                    edges.push((id(x, y), id(x, y + 1)));
                }
            }
        }
        Graph::new(m * n, &edges).expect("grid is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as (min, max) pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices_of_degree(&self, d: usize) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) == d)
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True when the graph is a single cycle (connected, every degree 2).
    pub fn is_cycle(&self) -> bool {
        self.vertex_count() >= 3 && self.adj.iter().all(|l| l.len() == 2) && self.is_connected()
    }

    /// The vertex sequence of the cycle, starting at vertex 0 and moving
    /// toward its smaller neighbor. Only meaningful when `is_cycle()`.
    pub fn cycle_order(&self) -> Vec<usize> {
        debug_assert!(self.is_cycle());
        let mut order = vec![0];
        let mut prev = 0;
        let mut cur = self.adj[0][0];
        while cur != 0 {
            order.push(cur);
            let next = if self.adj[cur][0] == prev {
                self.adj[cur][1]
            } else {
                self.adj[cur][0]
            };
            prev = cur;
            cur = next;
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Connected, at least three vertices, and no cutvertex.
    pub fn is_biconnected(&self) -> bool {
        self.vertex_count() >= 3 && self.is_connected() && self.articulation_points().is_empty()
    }

    /// Cutvertices via iterative Hopcroft-Tarjan DFS.
    pub fn articulation_points(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut parent = vec![usize::MAX; n];
        let mut is_art = vec![false; n];
        let mut timer = 0;

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // stack of (vertex, neighbor index)
            let mut stack = vec![(root, 0usize)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[v].len() {
                    let w = self.adj[v][*idx];
                    *idx += 1;
                    if disc[w] == usize::MAX {
                        parent[w] = v;
                        if v == root {
                            root_children += 1;
                        }
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, 0));
                    } else if w != parent[v] {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if p != root && low[v] >= disc[p] {
                            is_art[p] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_art[root] = true;
            }
        }
        (0..n).filter(|&v| is_art[v]).collect()
    }

    /// True iff the graph admits a planar embedding. Each biconnected
    /// component is tested with the quadratic-time incremental face-splitting
    /// algorithm; components that are single edges or too small are planar.
    pub fn is_planar(&self) -> bool {
        for comp in self.biconnected_component_edges() {
            if comp.len() < 3 {
                continue;
            }
            let (sub, _) = subgraph_from_edges(&comp);
            if dmp_embed(&sub).is_none() {
                return false;
            }
        }
        true
    }

    /// True iff the graph is 3-connected: at least 4 vertices and removing
    /// any single vertex leaves a biconnected graph.
    pub fn is_triconnected(&self) -> bool {
        let n = self.vertex_count();
        if n < 4 {
            return false;
        }
        let mut keep = vec![true; n];
        for u in 0..n {
            keep[u] = false;
            let (sub, _) = self.induced_subgraph(&keep);
            if !sub.is_biconnected() {
                return false;
            }
            keep[u] = true;
        }
        true
    }

    /// One representative of the planar rotation system of a planar
    /// triconnected graph (unique up to a flip). Deterministic.
    pub fn planar_embedding(&self) -> Result<RotationSystem, GraphError> {
        if !self.is_planar() {
            return Err(GraphError::NotPlanar);
        }
        if !self.is_triconnected() {
            return Err(GraphError::NotTriconnected);
        }
        let faces = dmp_embed(self).expect("planar and triconnected graph embeds");
        Ok(rotation_from_faces(self, &faces))
    }

    /// Edge lists of the biconnected components.
    pub fn biconnected_component_edges(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut parent = vec![usize::MAX; n];
        let mut timer = 0;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut comps = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[v].len() {
                    let w = self.adj[v][*idx];
                    *idx += 1;
                    if disc[w] == usize::MAX {
                        parent[w] = v;
                        edge_stack.push((v, w));
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, 0));
                    } else if w != parent[v] && disc[w] < disc[v] {
                        edge_stack.push((v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            // pop the component rooted at edge (p, v)
                            let mut comp = Vec::new();
                            while let Some(&e) = edge_stack.last() {
                                edge_stack.pop();
                                comp.push(e);
                                if e == (p, v) {
                                    break;
                                }
                            }
                            if !comp.is_empty() {
                                comps.push(comp);
                            }
                        }
                    }
                }
            }
        }
        comps
    }

    /// Induced subgraph on the vertices with `keep[v]`. Returns the subgraph
    /// (dense ids) and the map from new id to old id.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let old_ids: Vec<usize> = (0..self.vertex_count()).filter(|&v| keep[v]).collect();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges() {
            if keep[u] && keep[v] {
                edges.push((new_id[u], new_id[v]));
            }
        }
        let g = Graph::new(old_ids.len(), &edges).expect("induced subgraph stays simple");
        (g, old_ids)
    }

    /// Smooths every degree-2 vertex not in `keep`, iterating to a fixpoint.
    /// Errors when a smoothing step would create a self-loop or a parallel
    /// edge (the degenerate cycle and theta cases).
    pub fn smooth_degree2(
        &self,
        keep: &BTreeSet<usize>,
    ) -> Result<(Graph, SmoothingMap), GraphError> {
        let n = self.vertex_count();
        let mut adj: Vec<BTreeSet<usize>> = self
            .adj
            .iter()
            .map(|l| l.iter().copied().collect())
            .collect();
        let mut alive = vec![true; n];
        // interior vertices recorded per surviving edge, keyed by (min, max)
        let mut paths: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();

        let take_path =
            |paths: &mut BTreeMap<(usize, usize), Vec<usize>>, a: usize, b: usize| -> Vec<usize> {
                let key = (a.min(b), a.max(b));
                let p = paths.remove(&key).unwrap_or_default();
                // stored oriented from key.0 to key.1
                if a <= b {
                    p
                } else {
                    let mut p = p;
                    p.reverse();
                    p
                }
            };

        loop {
            let cand = (0..n).find(|&v| alive[v] && adj[v].len() == 2 && !keep.contains(&v));
            let Some(v) = cand else { break };
            let mut it = adj[v].iter().copied();
            let a = it.next().unwrap();
            let b = it.next().unwrap();
            if a == b {
                return Err(GraphError::DegenerateSmoothing);
            }
            if adj[a].contains(&b) {
                return Err(GraphError::DegenerateSmoothing);
            }
            let pa = take_path(&mut paths, a, v);
            let pb = take_path(&mut paths, v, b);
            let mut interior = pa;
            interior.push(v);
            interior.extend(pb);
            if a > b {
                interior.reverse();
            }
            paths.insert((a.min(b), a.max(b)), interior);
            adj[a].remove(&v);
            adj[b].remove(&v);
            adj[a].insert(b);
            adj[b].insert(a);
            adj[v].clear();
            alive[v] = false;
        }

        let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for &v in &kept {
            for &w in &adj[v] {
                if v < w {
                    edges.push((new_id[v], new_id[w]));
                }
            }
        }
        let smoothed = Graph::new(kept.len(), &edges)?;
        Ok((
            smoothed,
            SmoothingMap {
                original_vertex_count: n,
                kept,
                paths,
            },
        ))
    }
}

/// Records which original vertices each smoothed edge replaced.
#[derive(Debug, Clone)]
pub struct SmoothingMap {
    original_vertex_count: usize,
    /// new id -> old id
    kept: Vec<usize>,
    /// keyed by (min, max) in *old* ids; interior path oriented min -> max
    paths: BTreeMap<(usize, usize), Vec<usize>>,
}

impl SmoothingMap {
    pub fn original_vertex_count(&self) -> usize {
        self.original_vertex_count
    }

    /// Old id of a smoothed-graph vertex.
    pub fn old_id(&self, new: usize) -> usize {
        self.kept[new]
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Interior original vertices of the smoothed edge (a, b), oriented from
    /// a to b, in old ids. Empty when the edge was not produced by smoothing.
    pub fn interior(&self, old_a: usize, old_b: usize) -> Vec<usize> {
        let key = (old_a.min(old_b), old_a.max(old_b));
        let p = self.paths.get(&key).cloned().unwrap_or_default();
        if old_a <= old_b {
            p
        } else {
            let mut p = p;
            p.reverse();
            p
        }
    }

    /// Expands a cycle of smoothed-graph vertices (new ids) into the original
    /// vertex cycle (old ids).
    pub fn expand_cycle(&self, cycle_new: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        let k = cycle_new.len();
        for i in 0..k {
            let a = self.kept[cycle_new[i]];
            let b = self.kept[cycle_new[(i + 1) % k]];
            out.push(a);
            out.extend(self.interior(a, b));
        }
        out
    }

    /// Reconstructs the original graph from the smoothed one (test support
    /// for the round-trip invariant).
    pub fn restore(&self, smoothed: &Graph) -> Graph {
        let mut edges = Vec::new();
        for &(u, v) in &smoothed.edges() {
            let (a, b) = (self.kept[u], self.kept[v]);
            let interior = self.interior(a, b);
            let mut prev = a;
            for &w in &interior {
                edges.push((prev, w));
                prev = w;
            }
            edges.push((prev, b));
        }
        Graph::new(self.original_vertex_count, &edges).expect("restored graph is simple")
    }
}

/// Per-vertex clockwise cyclic order of neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem(pub Vec<Vec<usize>>);

impl RotationSystem {
    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    /// Checks that each list is a permutation of the graph's neighbor set.
    pub fn matches_graph(&self, g: &Graph) -> bool {
        self.0.len() == g.vertex_count()
            && (0..g.vertex_count()).all(|v| {
                let mut r = self.0[v].clone();
                r.sort_unstable();
                r == g.neighbors(v)
            })
    }

    /// The neighbor following `u` clockwise around `v`.
    pub fn next_clockwise(&self, v: usize, u: usize) -> usize {
        let order = &self.0[v];
        let i = order.iter().position(|&x| x == u).expect("u incident to v");
        order[(i + 1) % order.len()]
    }

    /// Cyclic equality per vertex (same clockwise order, any starting point).
    pub fn cyclic_eq(&self, other: &RotationSystem) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| cyclic_sequences_equal(a, b))
    }

    /// Reverses every cyclic order. A mirrored drawing induces the reversal.
    pub fn reversed(&self) -> RotationSystem {
        RotationSystem(
            self.0
                .iter()
                .map(|l| l.iter().rev().copied().collect())
                .collect(),
        )
    }
}

pub fn cyclic_sequences_equal(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let n = a.len();
    (0..n).any(|s| (0..n).all(|i| a[(s + i) % n] == b[i]))
}

/// Traces all faces of an embedding. Walking rule: after arriving at `v`
/// along (u, v), leave along (v, w) where w follows u clockwise around v.
/// Every directed edge appears in exactly one face.
pub fn trace_faces(g: &Graph, rot: &RotationSystem) -> Vec<Vec<(usize, usize)>> {
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces = Vec::new();
    for u in 0..g.vertex_count() {
        for &v in g.neighbors(u) {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut cu, mut cv) = (u, v);
            loop {
                face.push((cu, cv));
                seen.insert((cu, cv));
                let w = rot.next_clockwise(cv, cu);
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

/// Euler check `v - e + f == 2` for a connected embedded graph.
pub fn satisfies_euler(g: &Graph, rot: &RotationSystem) -> bool {
    let f = trace_faces(g, rot).len();
    g.vertex_count() + f == g.edge_count() + 2
}

fn subgraph_from_edges(edges: &[(usize, usize)]) -> (Graph, Vec<usize>) {
    let mut ids = BTreeSet::new();
    for &(u, v) in edges {
        ids.insert(u);
        ids.insert(v);
    }
    let old_ids: Vec<usize> = ids.into_iter().collect();
    let mut new_id = BTreeMap::new();
    for (i, &v) in old_ids.iter().enumerate() {
        new_id.insert(v, i);
    }
    let mapped: Vec<_> = edges
        .iter()
        .map(|&(u, v)| (new_id[&u], new_id[&v]))
        .collect();
    (
        Graph::new(old_ids.len(), &mapped).expect("component subgraph is simple"),
        old_ids,
    )
}

/// Incremental planarity test and embedding for a biconnected graph.
/// Starts from a cycle and repeatedly embeds a path of an unembedded fragment
/// through an admissible face until every edge is placed. Quadratic time,
/// which is fine at the scales this crate targets. Returns the faces as
/// vertex cycles, or None when some fragment has no admissible face.
pub fn dmp_embed(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if n < 3 {
        return None;
    }
    if g.edge_count() > 3 * n - 6 {
        return None;
    }

    // initial cycle via DFS back edge
    let cycle = find_cycle(g)?;
    let mut in_h = vec![false; n];
    for &v in &cycle {
        in_h[v] = true;
    }
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        h_edges.insert((a.min(b), a.max(b)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    loop {
        let fragments = compute_fragments(g, &in_h, &h_edges);
        if fragments.is_empty() {
            return Some(faces);
        }

        // admissible faces per fragment
        let mut chosen: Option<(usize, usize)> = None; // (fragment idx, face idx)
        let mut fallback: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let mut admissible = Vec::new();
            for (i, f) in faces.iter().enumerate() {
                let fset: BTreeSet<usize> = f.iter().copied().collect();
                if frag.attachments.iter().all(|a| fset.contains(a)) {
                    admissible.push(i);
                }
            }
            if admissible.is_empty() {
                return None;
            }
            if admissible.len() == 1 && chosen.is_none() {
                chosen = Some((fi, admissible[0]));
            }
            if fallback.is_none() {
                fallback = Some((fi, admissible[0]));
            }
        }
        let (fi, face_idx) = chosen.or(fallback).expect("nonempty fragments");
        let frag = &fragments[fi];

        let path = fragment_path(g, frag, &in_h);
        debug_assert!(path.len() >= 2);

        // split the face along the path
        let face = faces.swap_remove(face_idx);
        let pa = face
            .iter()
            .position(|&x| x == path[0])
            .expect("attachment on face");
        let pb = face
            .iter()
            .position(|&x| x == *path.last().unwrap())
            .expect("attachment on face");
        let len = face.len();
        let mut arc1 = Vec::new(); // path[0] ... path[last] along the face
        let mut i = pa;
        loop {
            arc1.push(face[i]);
            if i == pb {
                break;
            }
            i = (i + 1) % len;
        }
        let mut arc2 = Vec::new(); // path[last] ... path[0] along the face
        let mut i = pb;
        loop {
            arc2.push(face[i]);
            if i == pa {
                break;
            }
            i = (i + 1) % len;
        }
        let interior = &path[1..path.len() - 1];
        let mut f1 = arc1;
        f1.extend(interior.iter().rev());
        let mut f2 = arc2;
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);

        for w in path.windows(2) {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            h_edges.insert((a, b));
        }
        for &v in interior {
            in_h[v] = true;
        }
    }
}

struct Fragment {
    attachments: Vec<usize>,
    component: Vec<usize>,
    /// single chord (u, v) when the fragment has no interior vertices
    chord: Option<(usize, usize)>,
}

fn compute_fragments(
    g: &Graph,
    in_h: &[bool],
    h_edges: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let n = g.vertex_count();
    let mut fragments = Vec::new();
    // chords: edges between H-vertices not yet embedded
    for (u, v) in g.edges() {
        if in_h[u] && in_h[v] && !h_edges.contains(&(u, v)) {
            fragments.push(Fragment {
                attachments: vec![u, v],
                component: Vec::new(),
                chord: Some((u, v)),
            });
        }
    }
    // components of G - H with their attachments
    let mut seen = vec![false; n];
    for start in 0..n {
        if in_h[start] || seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut attach = BTreeSet::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if in_h[w] {
                    attach.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        fragments.push(Fragment {
            attachments: attach.into_iter().collect(),
            component: comp,
            chord: None,
        });
    }
    fragments
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(g: &Graph, frag: &Fragment, in_h: &[bool]) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let start = frag.attachments[0];
    let comp: BTreeSet<usize> = frag.component.iter().copied().collect();
    // BFS from start through fragment interior to any other attachment
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::new();
    for &w in g.neighbors(start) {
        if comp.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, start);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if w != start && in_h[w] {
                // reached another attachment
                let mut path = vec![w, v];
                let mut cur = v;
                while let Some(&p) = prev.get(&cur) {
                    if p == start {
                        break;
                    }
                    path.push(p);
                    cur = p;
                }
                path.push(start);
                path.reverse();
                return path;
            }
            if comp.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("biconnected input guarantees a second attachment");
}

fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut state = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx < g.neighbors(v).len() {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if w == parent[v] {
                    continue;
                }
                if state[w] == 1 {
                    // back edge: cycle w .. v
                    let mut cycle = vec![v];
                    let mut cur = v;
                    while cur != w {
                        cur = parent[cur];
                        cycle.push(cur);
                    }
                    cycle.reverse();
                    return Some(cycle);
                }
                if state[w] == 0 {
                    parent[w] = v;
                    state[w] = 1;
                    stack.push((w, 0));
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Rebuilds the rotation system from a consistent set of oriented faces.
/// For consecutive darts (u, v), (v, w) in a face, w is the clockwise
/// successor of u around v.
pub fn rotation_from_faces(g: &Graph, faces: &[Vec<usize>]) -> RotationSystem {
    let n = g.vertex_count();
    let mut succ: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    for face in faces {
        let k = face.len();
        for i in 0..k {
            let u = face[i];
            let v = face[(i + 1) % k];
            let w = face[(i + 2) % k];
            succ[v].insert(u, w);
        }
    }
    let mut rot = Vec::with_capacity(n);
    for v in 0..n {
        let mut order = Vec::with_capacity(g.degree(v));
        if g.degree(v) > 0 {
            let start = g.neighbors(v)[0];
            let mut cur = start;
            loop {
                order.push(cur);
                cur = *succ[v].get(&cur).expect("closed rotation at every vertex");
                if cur == start {
                    break;
                }
            }
        }
        debug_assert_eq!(order.len(), g.degree(v), "rotation covers all neighbors");
        rot.push(order);
    }
    RotationSystem(rot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k5() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                e.push((i, j));
            }
        }
        Graph::new(5, &e).unwrap()
    }

    fn k33() -> Graph {
        let mut e = Vec::new();
        for i in 0..3 {
            for j in 3..6 {
                e.push((i, j));
            }
        }
        Graph::new(6, &e).unwrap()
    }

    fn cube() -> Graph {
        Graph::new(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
        .unwrap()
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(
            Graph::new(2, &[(0, 0)]).unwrap_err(),
            GraphError::SelfLoop(0)
        );
        assert_eq!(
            Graph::new(2, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert!(matches!(
            Graph::new(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap_err(),
            GraphError::DegreeExceeded(0, 5)
        ));
        assert_eq!(
            Graph::new(2, &[(0, 5)]).unwrap_err(),
            GraphError::VertexOutOfRange(5)
        );
    }

    #[test]
    fn degree_examples() {
        for v in 0..4 {
            assert_eq!(k4().degree(v), 3);
        }
        let c6 = Graph::cycle(6);
        for v in 0..6 {
            assert_eq!(c6.degree(v), 2);
        }
        let g = Graph::grid(3, 3);
        assert_eq!(g.degree(4), 4); // center
    }

    #[test]
    fn biconnected_examples() {
        assert!(Graph::cycle(4).is_biconnected());
        // two triangles sharing vertex 0
        let shared = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert!(!shared.is_biconnected());
        assert_eq!(shared.articulation_points(), vec![0]);
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!p3.is_biconnected());
        assert!(!Graph::new(0, &[])
            .unwrap_or(Graph {
                adj: vec![],
                labels: vec![],
                edge_count: 0
            })
            .is_connected());
    }

    #[test]
    fn planarity_examples() {
        assert!(k4().is_planar());
        assert!(!k5().is_planar());
        assert!(!k33().is_planar());
        assert!(Graph::grid(3, 3).is_planar());
        assert!(cube().is_planar());
    }

    #[test]
    fn triconnectivity_examples() {
        assert!(k4().is_triconnected());
        assert!(!Graph::cycle(8).is_triconnected());
        assert!(cube().is_triconnected());
        assert!(!Graph::grid(3, 3).is_triconnected()); // corners have degree 2
    }

    #[test]
    fn embedding_k4_and_cube() {
        let rot = k4().planar_embedding().unwrap();
        let faces = trace_faces(&k4(), &rot);
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert!(satisfies_euler(&k4(), &rot));

        let rot = cube().planar_embedding().unwrap();
        let faces = trace_faces(&cube(), &rot);
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.len() == 4));
        assert!(satisfies_euler(&cube(), &rot));

        assert_eq!(
            Graph::cycle(8).planar_embedding().unwrap_err(),
            GraphError::NotTriconnected
        );
    }

    #[test]
    fn embedding_is_deterministic() {
        let a = cube().planar_embedding().unwrap();
        let b = cube().planar_embedding().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn smoothing_c8_to_c4() {
        let c8 = Graph::cycle(8);
        let keep: BTreeSet<usize> = [0, 2, 4, 6].into_iter().collect();
        let (g, map) = c8.smooth_degree2(&keep).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert!(g.is_cycle());
        for (u, v) in g.edges() {
            assert_eq!(map.interior(map.old_id(u), map.old_id(v)).len(), 1);
        }
        assert_eq!(map.restore(&g), c8);
    }

    #[test]
    fn smoothing_identity_without_degree2() {
        let g = k4();
        let (s, map) = g.smooth_degree2(&BTreeSet::new()).unwrap();
        assert_eq!(s, g);
        assert_eq!(map.restore(&s), g);
    }

    #[test]
    fn smoothing_grid_minus_center() {
        // 3x3 grid graph without the center: an 8-cycle around the hole
        let g = Graph::grid(3, 3);
        let keep_v: Vec<bool> = (0..9).map(|v| v != 4).collect();
        let (ring, old) = g.induced_subgraph(&keep_v);
        assert!(ring.is_cycle());
        // corners of the grid are old ids 0, 2, 6, 8
        let corners: BTreeSet<usize> = old
            .iter()
            .enumerate()
            .filter(|(_, &o)| [0, 2, 6, 8].contains(&o))
            .map(|(i, _)| i)
            .collect();
        let (c4, map) = ring.smooth_degree2(&corners).unwrap();
        assert_eq!(c4.vertex_count(), 4);
        assert!(c4.is_cycle());
        for (u, v) in c4.edges() {
            assert_eq!(map.interior(map.old_id(u), map.old_id(v)).len(), 1);
        }
        assert_eq!(map.restore(&c4), ring);
    }

    #[test]
    fn smoothing_degenerate_cases() {
        // pure cycle with too small a keep set collapses to a self-loop
        let c4 = Graph::cycle(4);
        let keep: BTreeSet<usize> = [0].into_iter().collect();
        assert_eq!(
            c4.smooth_degree2(&keep).unwrap_err(),
            GraphError::DegenerateSmoothing
        );
        // theta graph: two deg-3 vertices joined by three paths
        let theta = Graph::new(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        assert_eq!(
            theta.smooth_degree2(&BTreeSet::new()).unwrap_err(),
            GraphError::DegenerateSmoothing
        );
    }

    #[test]
    fn triconnected_implies_biconnected() {
        for g in [k4(), cube(), Graph::grid(3, 3), Graph::cycle(5)] {
            if g.is_triconnected() {
                assert!(g.is_biconnected());
            }
        }
    }

    // Independent planarity oracle: search for K5 / K3,3 subdivisions.
    mod kuratowski {
        use super::*;

        fn paths_exist(
            g: &Graph,
            pairs: &[(usize, usize)],
            k: usize,
            used: u32,
            branch: u32,
        ) -> bool {
            if k == pairs.len() {
                return true;
            }
            let (a, b) = pairs[k];
            // DFS over simple paths a..b with interior outside used and branch
            fn dfs(
                g: &Graph,
                cur: usize,
                b: usize,
                used: u32,
                branch: u32,
                g_pairs: &[(usize, usize)],
                k: usize,
            ) -> bool {
                for &w in g.neighbors(cur) {
                    if w == b {
                        if paths_exist(g, g_pairs, k + 1, used, branch) {
                            return true;
                        }
                        continue;
                    }
                    let bit = 1u32 << w;
                    if used & bit != 0 || branch & bit != 0 {
                        continue;
                    }
                    if dfs(g, w, b, used | bit, branch, g_pairs, k) {
                        return true;
                    }
                }
                false
            }
            dfs(g, a, b, used, branch, pairs, k)
        }

        fn has_subdivision(g: &Graph, branch: &[usize], pairs: &[(usize, usize)]) -> bool {
            let bmask: u32 = branch.iter().map(|&v| 1u32 << v).sum();
            paths_exist(g, pairs, 0, 0, bmask)
        }

        pub fn is_planar_bruteforce(g: &Graph) -> bool {
            let n = g.vertex_count();
            assert!(n <= 16, "oracle is for small graphs");
            let verts: Vec<usize> = (0..n).collect();
            // K5 subdivisions: 5 branch vertices of degree >= 4
            for combo in combinations(&verts, 5) {
                if combo.iter().any(|&v| g.degree(v) < 4) {
                    continue;
                }
                let mut pairs = Vec::new();
                for i in 0..5 {
                    for j in i + 1..5 {
                        pairs.push((combo[i], combo[j]));
                    }
                }
                if has_subdivision(g, &combo, &pairs) {
                    return false;
                }
            }
            // K3,3 subdivisions: 3 + 3 branch vertices of degree >= 3
            for left in combinations(&verts, 3) {
                if left.iter().any(|&v| g.degree(v) < 3) {
                    continue;
                }
                let rest: Vec<usize> = verts
                    .iter()
                    .copied()
                    .filter(|v| !left.contains(v))
                    .collect();
                for right in combinations(&rest, 3) {
                    if right.iter().any(|&v| g.degree(v) < 3) {
                        continue;
                    }
                    if left[0] > right[0] {
                        continue; // unordered sides
                    }
                    let mut pairs = Vec::new();
                    for &a in &left {
                        for &b in &right {
                            pairs.push((a, b));
                        }
                    }
                    let branch: Vec<usize> = left.iter().chain(&right).copied().collect();
                    if has_subdivision(g, &branch, &pairs) {
                        return false;
                    }
                }
            }
            true
        }

        fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn rec(
                items: &[usize],
                k: usize,
                start: usize,
                cur: &mut Vec<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..items.len() {
                    cur.push(items[i]);
                    rec(items, k, i + 1, cur, out);
                    cur.pop();
                }
            }
            rec(items, k, 0, &mut cur, &mut out);
            out
        }

        #[test]
        fn oracle_matches_on_known_graphs() {
            assert!(is_planar_bruteforce(&k4()));
            assert!(!is_planar_bruteforce(&k5()));
            assert!(!is_planar_bruteforce(&k33()));
            assert!(is_planar_bruteforce(&cube()));
        }
    }

    mod props {
        use super::kuratowski::is_planar_bruteforce;
        use super::*;
        use proptest::prelude::*;

        fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
            (3usize..=max_n).prop_flat_map(|n| {
                let all_edges: Vec<(usize, usize)> = (0..n)
                    .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                    .collect();
                let m = all_edges.len();
                proptest::collection::vec(any::<bool>(), m).prop_filter_map(
                    "degree cap",
                    move |mask| {
                        let chosen: Vec<(usize, usize)> = all_edges
                            .iter()
                            .zip(&mask)
                            .filter(|(_, &b)| b)
                            .map(|(&e, _)| e)
                            .collect();
                        Graph::new(n, &chosen).ok()
                    },
                )
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn planarity_agrees_with_kuratowski_search(g in arb_graph(8)) {
                prop_assert_eq!(g.is_planar(), is_planar_bruteforce(&g));
            }

            #[test]
            fn triconnected_implies_biconnected(g in arb_graph(8)) {
                if g.is_triconnected() {
                    prop_assert!(g.is_biconnected());
                }
            }

            #[test]
            fn smoothing_round_trips(g in arb_graph(8)) {
                prop_assume!(g.is_biconnected() && !g.is_cycle());
                let keep = BTreeSet::new();
                if let Ok((s, map)) = g.smooth_degree2(&keep) {
                    prop_assert_eq!(map.restore(&s), g);
                }
            }
        }
    }
}
