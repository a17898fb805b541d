//! Named test instances, the structural property checks asserted on every
//! accepted drawing, and the condensed report behind `uer corpus`.

use crate::drawing::{planarize, validate, GridDrawing, GridPoint, Model, NodeKind};
use crate::graph::Graph;
use crate::oracle::{enumerate_drawings, recognize_in_corpus, EnumerationBudget};
use crate::outcome::Constraints;
use crate::recognize::{recognize, RecognizerVariant};

/// The 2x2 boundary C8 with two crossing chords; one crossing at the center.
pub fn crossed_c8_graph() -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    edges.push((1, 5));
    edges.push((3, 7));
    Graph::new(8, &edges).unwrap()
}

/// 3x3 boundary C12 plus a straight vertical chord path 1-12-13-8 with two
/// internal degree-2 vertices.
pub fn c12_chord_path_graph() -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
    edges.push((1, 12));
    edges.push((12, 13));
    edges.push((13, 8));
    Graph::new(14, &edges).unwrap()
}

/// A 1-row ladder: the boundary C_{2(w+1)} with `rungs` unit chords, giving
/// 2*rungs degree-3 vertices. Used by the fixed-parameter growth checks.
pub fn ladder_graph(w: usize, rungs: usize) -> Graph {
    assert!(w >= 2 && rungs < w);
    let k = 2 * (w + 1);
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    // bottom row positions 0..=w left to right; top row w+1..=2w+1 right to
    // left; the rung at column c joins position c and position 2w+1-c
    let step = (w - 1) / rungs.max(1);
    for r in 0..rungs {
        let c = 1 + r * step.max(1);
        edges.push((c, 2 * w + 1 - c));
    }
    Graph::new(k, &edges).unwrap()
}

/// Property of the external boundary: exactly four real degree-2 corners,
/// real non-corner vertices of degree at most 3, equal opposite side paths.
pub fn check_property1(d: &GridDrawing) -> bool {
    let Ok(planar) = planarize(d) else {
        return false;
    };
    let Some(ext) = planar.external_face else {
        return false;
    };
    let boundary = &planar.faces[ext];
    let k = boundary.len();
    let mut corners = 0;
    let mut sides = Vec::new();
    let mut run = 0usize;
    let mut first_turn = None;
    let turn = |i: usize| {
        let a = planar.nodes[boundary[(i + k - 1) % k]].at;
        let b = planar.nodes[boundary[i]].at;
        let c = planar.nodes[boundary[(i + 1) % k]].at;
        (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x) != 0
    };
    for i in 0..k {
        if turn(i) {
            first_turn = Some(i);
            break;
        }
    }
    let Some(first) = first_turn else {
        return false;
    };
    for step in 0..k {
        let i = (first + step) % k;
        let node = boundary[i];
        let NodeKind::Real(v) = planar.nodes[node].kind else {
            return false;
        };
        if turn(i) {
            corners += 1;
            if d.graph().degree(v) != 2 {
                return false;
            }
            if step > 0 {
                sides.push(run);
                run = 0;
            }
        } else if d.graph().degree(v) > 3 {
            return false;
        }
        run += 1;
    }
    sides.push(run);
    corners == 4 && sides.len() == 4 && sides[0] == sides[2] && sides[1] == sides[3]
}

/// Unit-square-face drawings: internal real vertices have degree 4; external
/// non-corner vertices have degree 3.
pub fn check_property2(d: &GridDrawing) -> bool {
    let Ok(planar) = planarize(d) else {
        return false;
    };
    let Some(ext) = planar.external_face else {
        return false;
    };
    let mut on_external = vec![false; d.graph().vertex_count()];
    for &node in &planar.faces[ext] {
        if let NodeKind::Real(v) = planar.nodes[node].kind {
            on_external[v] = true;
        }
    }
    let corner_points = bbox_corners(d);
    (0..d.graph().vertex_count()).all(|v| {
        if !on_external[v] {
            d.graph().degree(v) == 4
        } else if corner_points.contains(&d.position(v)) {
            d.graph().degree(v) == 2
        } else {
            d.graph().degree(v) == 3
        }
    })
}

/// Path-coverage property: a grid column strictly between the sides is fully
/// covered by drawn vertical segments iff its top endpoint is a degree-3
/// boundary vertex; symmetric for rows. Holds for unit-square-face drawings
/// and for rectangular-face drawings without internal degree-3 vertices.
pub fn check_property3_4(d: &GridDrawing) -> bool {
    let pos = d.positions();
    let min_x = pos.iter().map(|p| p.x).min().unwrap_or(0);
    let max_x = pos.iter().map(|p| p.x).max().unwrap_or(0);
    let min_y = pos.iter().map(|p| p.y).min().unwrap_or(0);
    let max_y = pos.iter().map(|p| p.y).max().unwrap_or(0);
    let covered_v = |x: i64, y: i64| {
        d.graph().edges().iter().any(|&(u, v)| {
            let (a, b) = (pos[u], pos[v]);
            a.x == x && b.x == x && a.y.min(b.y) <= y && y < a.y.max(b.y)
        })
    };
    let covered_h = |x: i64, y: i64| {
        d.graph().edges().iter().any(|&(u, v)| {
            let (a, b) = (pos[u], pos[v]);
            a.y == y && b.y == y && a.x.min(b.x) <= x && x < a.x.max(b.x)
        })
    };
    let vertex_at = |x: i64, y: i64| pos.iter().position(|p| p.x == x && p.y == y);
    for x in min_x + 1..max_x {
        let full = (min_y..max_y).all(|y| covered_v(x, y));
        let top_deg3 = vertex_at(x, max_y).is_some_and(|v| d.graph().degree(v) == 3);
        if full != top_deg3 {
            return false;
        }
    }
    for y in min_y + 1..max_y {
        let full = (min_x..max_x).all(|x| covered_h(x, y));
        let left_deg3 = vertex_at(min_x, y).is_some_and(|v| d.graph().degree(v) == 3);
        if full != left_deg3 {
            return false;
        }
    }
    true
}

fn bbox_corners(d: &GridDrawing) -> Vec<GridPoint> {
    let pos = d.positions();
    let min_x = pos.iter().map(|p| p.x).min().unwrap_or(0);
    let max_x = pos.iter().map(|p| p.x).max().unwrap_or(0);
    let min_y = pos.iter().map(|p| p.y).min().unwrap_or(0);
    let max_y = pos.iter().map(|p| p.y).max().unwrap_or(0);
    vec![
        GridPoint::new(min_x, min_y),
        GridPoint::new(max_x, min_y),
        GridPoint::new(max_x, max_y),
        GridPoint::new(min_x, max_y),
    ]
}

/// Structural checks appropriate for an accepted drawing of a given model:
/// property 1 always, property 2 and the coverage property for unit-square
/// faces, coverage also for rectangular faces without internal degree-3
/// vertices.
pub fn check_structural_properties(d: &GridDrawing) -> bool {
    if !check_property1(d) {
        return false;
    }
    match d.model() {
        Model::Usf => check_property2(d) && check_property3_4(d),
        Model::Rf => {
            let Ok(planar) = planarize(d) else {
                return false;
            };
            let Some(ext) = planar.external_face else {
                return false;
            };
            let mut internal_deg3 = false;
            let mut on_external = vec![false; d.graph().vertex_count()];
            for &node in &planar.faces[ext] {
                if let NodeKind::Real(v) = planar.nodes[node].kind {
                    on_external[v] = true;
                }
            }
            for v in 0..d.graph().vertex_count() {
                if !on_external[v] && d.graph().degree(v) == 3 {
                    internal_deg3 = true;
                }
            }
            !(!internal_deg3 && !check_property3_4(d))
        }
    }
}

#[derive(Debug)]
pub struct ReportRow {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// The condensed corpus run behind `uer corpus`: quick versions of the
/// acceptance checks. The full suite lives in the crate's acceptance tests.
pub fn run_report() -> Vec<ReportRow> {
    let mut rows = Vec::new();

    // cycle family
    {
        let mut pass = true;
        let mut detail = String::new();
        for k in 2..=6usize {
            let even = Graph::cycle(2 * k);
            let out = recognize(
                &even,
                Model::Rf,
                RecognizerVariant::Auto,
                &Constraints::none(),
                1,
            );
            let ok = matches!(&out, Ok(o) if o.is_accept());
            let odd = Graph::cycle(2 * k + 1);
            let out_odd = recognize(
                &odd,
                Model::Rf,
                RecognizerVariant::Auto,
                &Constraints::none(),
                1,
            );
            let ok_odd = matches!(&out_odd, Ok(o) if !o.is_accept());
            if !(ok && ok_odd) {
                pass = false;
                detail = format!("cycle length {}", 2 * k);
                break;
            }
        }
        rows.push(ReportRow {
            name: "cycle-family",
            pass,
            detail,
        });
    }

    // grid family
    {
        let mut pass = true;
        let mut detail = String::new();
        for m in 2..=4usize {
            for n in 2..=4usize {
                let g = Graph::grid(m, n);
                let out = recognize(
                    &g,
                    Model::Usf,
                    RecognizerVariant::Auto,
                    &Constraints::none(),
                    1,
                );
                let ok = matches!(&out, Ok(o) if o.drawing().is_some_and(|d| {
                    let c = crate::drawing::canonicalize(d);
                    (c.width(), c.height()) == ((m.max(n) - 1) as i64, (m.min(n) - 1) as i64)
                }));
                if !ok {
                    pass = false;
                    detail = format!("grid {m}x{n}");
                }
            }
        }
        rows.push(ReportRow {
            name: "grid-family",
            pass,
            detail,
        });
    }

    // oracle agreement on a small budget
    {
        let res = enumerate_drawings(&EnumerationBudget::new(2, 2, 16), Model::Rf);
        let mut pass = res.complete;
        let mut detail = String::new();
        for d in &res.drawings {
            let out = recognize(
                d.graph(),
                Model::Rf,
                RecognizerVariant::Auto,
                &Constraints::none(),
                1,
            );
            if !matches!(&out, Ok(o) if o.is_accept()) {
                pass = false;
                detail = format!("{} vertices rejected", d.graph().vertex_count());
            }
        }
        // closure: the corpus recognizes its own graphs
        for d in &res.drawings {
            if !recognize_in_corpus(&res.drawings, true, d.graph(), &Constraints::none())
                .is_accept()
            {
                pass = false;
                detail = "oracle closure failed".into();
            }
        }
        rows.push(ReportRow {
            name: "oracle-2x2",
            pass,
            detail,
        });
    }

    // showcase instances per model class render and validate
    {
        let mut pass = true;
        let mut detail = String::new();
        let usf = recognize(
            &Graph::grid(4, 4),
            Model::Usf,
            RecognizerVariant::Auto,
            &Constraints::none(),
            1,
        );
        let rf = recognize(
            &c12_chord_path_graph(),
            Model::Rf,
            RecognizerVariant::Auto,
            &Constraints::none(),
            1,
        );
        let general = recognize(
            &crossed_c8_graph(),
            Model::Rf,
            RecognizerVariant::Fpt,
            &Constraints::none(),
            1,
        );
        for (name, out) in [("usf", usf), ("rf", rf), ("general", general)] {
            match out {
                Ok(o) => match o.drawing() {
                    Some(d) => {
                        let fits = d.width() <= 5 && d.height() <= 5;
                        let drawn =
                            crate::svg::render_svg(d, &crate::svg::RenderOptions::default());
                        if !(validate(d).valid
                            && fits
                            && drawn.is_ok()
                            && check_structural_properties(d))
                        {
                            pass = false;
                            detail = format!("{name} instance failed checks");
                        }
                    }
                    None => {
                        pass = false;
                        detail = format!("{name} instance rejected");
                    }
                },
                Err(e) => {
                    pass = false;
                    detail = format!("{name}: {e}");
                }
            }
        }
        rows.push(ReportRow {
            name: "showcase",
            pass,
            detail,
        });
    }

    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_instances_are_well_formed() {
        assert!(crossed_c8_graph().is_biconnected());
        assert!(c12_chord_path_graph().is_biconnected());
        let l = ladder_graph(9, 4);
        assert_eq!(l.vertices_of_degree(3).len(), 8);
        assert!(l.is_biconnected());
    }

    #[test]
    fn properties_hold_on_known_drawings() {
        let crossed = crate::drawing::tests::crossed_c8();
        assert!(check_property1(&crossed));
        assert!(check_property3_4(&crossed));
        let grid = crate::oracle::natural_grid_drawing(3, 3);
        assert!(check_property1(&grid));
        assert!(check_property2(&grid));
        assert!(check_property3_4(&grid));
        assert!(check_structural_properties(&grid));
    }

    #[test]
    fn report_passes() {
        let rows = run_report();
        for row in &rows {
            assert!(row.pass, "{}: {}", row.name, row.detail);
        }
    }
}
