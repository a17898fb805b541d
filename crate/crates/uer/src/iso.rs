//! Isomorphism utilities for small graphs (intended for n <= 12):
//! canonical forms via individualization-refinement and a backtracking
//! isomorphism search with a per-mapping filter.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// Stable partition refinement: colors split by multisets of neighbor colors.
fn refine(g: &Graph, colors: &mut Vec<usize>) {
    loop {
        let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..g.vertex_count())
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                ns.sort_unstable();
                (colors[v], ns, v)
            })
            .collect();
        sig.sort();
        let mut next = vec![0usize; g.vertex_count()];
        let mut rank = 0;
        for i in 0..sig.len() {
            if i > 0 && (sig[i].0, &sig[i].1) != (sig[i - 1].0, &sig[i - 1].1) {
                rank += 1;
            }
            next[sig[i].2] = rank;
        }
        if next == *colors {
            return;
        }
        *colors = next;
    }
}

fn first_non_singleton_class(colors: &[usize]) -> Option<Vec<usize>> {
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        classes.entry(c).or_default().push(v);
    }
    classes.into_values().find(|c| c.len() > 1)
}

fn canonical_edges_under(g: &Graph, colors: &[usize]) -> Vec<(usize, usize)> {
    // discrete coloring: color is the canonical label
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (colors[u], colors[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges
}

fn canon_search(g: &Graph, colors: Vec<usize>, best: &mut Option<Vec<(usize, usize)>>) {
    let mut colors = colors;
    refine(g, &mut colors);
    match first_non_singleton_class(&colors) {
        None => {
            let edges = canonical_edges_under(g, &colors);
            if best.as_ref().is_none_or(|b| &edges < b) {
                *best = Some(edges);
            }
        }
        Some(class) => {
            for &v in &class {
                let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c).collect();
                next[v] += 1;
                canon_search(g, next, best);
            }
        }
    }
}

/// Canonical form: vertex count plus a canonically relabeled edge list.
/// Two graphs are isomorphic iff their canonical forms are equal.
pub fn canonical_form(g: &Graph) -> (usize, Vec<(usize, usize)>) {
    let mut best = None;
    canon_search(g, vec![0; g.vertex_count()], &mut best);
    (g.vertex_count(), best.unwrap_or_default())
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

/// Searches for an isomorphism from `a` onto `b` satisfying `accept`.
/// `map[v]` is the image in `b` of vertex v of `a`. Returns the first
/// accepted mapping in backtracking order.
pub fn find_isomorphism_where(
    a: &Graph,
    b: &Graph,
    mut accept: impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    // refined colors on both sides narrow the candidate images
    let mut ca = vec![0; n];
    let mut cb = vec![0; n];
    // shared initial color by degree so classes correspond
    for v in 0..n {
        ca[v] = a.degree(v);
        cb[v] = b.degree(v);
    }
    refine_pairwise(a, &mut ca);
    refine_pairwise(b, &mut cb);

    // order a's vertices by class size for earlier pruning
    let mut order: Vec<usize> = (0..n).collect();
    let class_size = |c: usize, colors: &[usize]| colors.iter().filter(|&&x| x == c).count();
    order.sort_by_key(|&v| (class_size(ca[v], &ca), ca[v], v));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn rec(
        a: &Graph,
        b: &Graph,
        order: &[usize],
        k: usize,
        ca: &[usize],
        cb: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        accept: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if k == order.len() {
            return accept(map);
        }
        let v = order[k];
        for w in 0..b.vertex_count() {
            if used[w] || cb[w] != ca[v] {
                continue;
            }
            // adjacency consistency with already-mapped vertices
            let ok = a.neighbors(v).iter().all(|&x| {
                let mx = map[x];
                mx == usize::MAX || b.has_edge(w, mx)
            }) && (0..a.vertex_count()).all(|x| {
                let mx = map[x];
                mx == usize::MAX || a.has_edge(v, x) == b.has_edge(w, mx)
            });
            if !ok {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if rec(a, b, order, k + 1, ca, cb, map, used, accept) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    if rec(a, b, &order, 0, &ca, &cb, &mut map, &mut used, &mut accept) {
        Some(map)
    } else {
        None
    }
}

// Same refinement but sorting keys must be comparable across two graphs, so
// the color signature starts from the degree and refines identically.
fn refine_pairwise(g: &Graph, colors: &mut Vec<usize>) {
    for _ in 0..g.vertex_count() {
        let mut sigs: Vec<(usize, Vec<usize>)> = (0..g.vertex_count())
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                ns.sort_unstable();
                (colors[v], ns)
            })
            .collect();
        // canonical rank of each signature value
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let next: Vec<usize> = sigs
            .drain(..)
            .map(|s| uniq.binary_search(&s).unwrap())
            .collect();
        if next == *colors {
            break;
        }
        *colors = next;
    }
}
