//! Deterministic SVG rendering of grid drawings: one grid unit maps to
//! `scale` pixels, real vertices are filled disks, crossings optionally
//! small squares.

use std::fmt::Write as _;

use crate::drawing::{planarize, validate, GridDrawing, NodeKind};

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    pub scale: i64,
    pub show_crossings: bool,
    pub show_labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 40,
            show_crossings: true,
            show_labels: false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("drawing fails validation and cannot be rendered")]
    InvalidDrawing,
}

/// Renders a valid drawing. Byte output is deterministic for fixed inputs.
pub fn render_svg(d: &GridDrawing, options: &RenderOptions) -> Result<String, RenderError> {
    if !validate(d).valid {
        return Err(RenderError::InvalidDrawing);
    }
    let planar = planarize(d).map_err(|_| RenderError::InvalidDrawing)?;
    let s = options.scale.max(1);
    let margin = s;
    let min_x = d.positions().iter().map(|p| p.x).min().unwrap_or(0);
    let max_x = d.positions().iter().map(|p| p.x).max().unwrap_or(0);
    let min_y = d.positions().iter().map(|p| p.y).min().unwrap_or(0);
    let max_y = d.positions().iter().map(|p| p.y).max().unwrap_or(0);
    let width = (max_x - min_x) * s + 2 * margin;
    let height = (max_y - min_y) * s + 2 * margin;
    // grid y grows upward, svg y downward
    let px = |x: i64| (x - min_x) * s + margin;
    let py = |y: i64| (max_y - y) * s + margin;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"  <rect width="{width}" height="{height}" fill="white"/>"#
    );
    for (u, v) in d.graph().edges() {
        let (a, b) = (d.position(u), d.position(v));
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2"/>"#,
            px(a.x),
            py(a.y),
            px(b.x),
            py(b.y)
        );
    }
    if options.show_crossings {
        let half = s / 8;
        for node in &planar.nodes {
            if matches!(node.kind, NodeKind::Crossing) {
                let _ = writeln!(
                    out,
                    r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black"/>"#,
                    px(node.at.x) - half,
                    py(node.at.y) - half,
                    2 * half,
                    2 * half
                );
            }
        }
    }
    let r = s / 5;
    for v in 0..d.graph().vertex_count() {
        let p = d.position(v);
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{}" r="{r}" fill="black"/>"#,
            px(p.x),
            py(p.y)
        );
        if options.show_labels {
            let name = d
                .graph()
                .label(v)
                .map(str::to_owned)
                .unwrap_or_else(|| v.to_string());
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" font-size="{}" fill="crimson">{}</text>"#,
                px(p.x) + r,
                py(p.y) - r,
                s / 3,
                name
            );
        }
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_renders() {
        let d = crate::drawing::tests::unit_square();
        let svg = render_svg(&d, &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<line").count(), 4);
        // deterministic bytes
        assert_eq!(svg, render_svg(&d, &RenderOptions::default()).unwrap());
    }

    #[test]
    fn crossed_c8_renders_with_marker() {
        let d = crate::drawing::tests::crossed_c8();
        let svg = render_svg(&d, &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 8);
        // one crossing marker plus the background rect
        assert_eq!(svg.matches("<rect").count(), 2);
    }

    #[test]
    fn invalid_drawing_is_refused() {
        let g = crate::graph::Graph::cycle(6);
        let d = GridDrawing::new(
            g,
            vec![
                crate::drawing::GridPoint::new(0, 0),
                crate::drawing::GridPoint::new(1, 0),
                crate::drawing::GridPoint::new(3, 0),
                crate::drawing::GridPoint::new(3, 1),
                crate::drawing::GridPoint::new(1, 1),
                crate::drawing::GridPoint::new(0, 1),
            ],
            crate::drawing::Model::Rf,
        )
        .unwrap();
        assert!(render_svg(&d, &RenderOptions::default()).is_err());
    }
}
