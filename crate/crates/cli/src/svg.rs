//! Static SVG figures of frameworks.
//!
//! The drawing convention follows the usual tensegrity pictures: cables are
//! dashed, struts are heavy solid lines, bars are regular solid lines, and
//! vertices are labeled circles. Rendering is a pure function of the
//! framework — identical input produces byte-identical output — so figures
//! can be diffed and cached.
//!
//! Planar frameworks are drawn directly; spatial ones through a fixed
//! orthographic (isometric-style) projection. Higher dimensions have no
//! drawing and are reported as unsupported.

use rigidity_core::{Framework, MemberKind};

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;
const VERTEX_RADIUS: f64 = 11.0;

// cos 30° and sin 30°: project (x, y, z) to ((x − z)·cos 30°, y + (x + z)·sin 30°).
const ISO_COS: f64 = 0.866_025_403_784_438_6;
const ISO_SIN: f64 = 0.5;

fn project(point: &[f64]) -> (f64, f64) {
    match point.len() {
        2 => (point[0], point[1]),
        _ => (
            (point[0] - point[2]) * ISO_COS,
            point[1] + (point[0] + point[2]) * ISO_SIN,
        ),
    }
}

fn stroke_attributes(kind: MemberKind) -> &'static str {
    match kind {
        MemberKind::Cable => r#"stroke-width="1.5" stroke-dasharray="6 4""#,
        MemberKind::Strut => r#"stroke-width="4""#,
        MemberKind::Bar => r#"stroke-width="2""#,
    }
}

/// Render a framework as an SVG 1.1 document.
///
/// Supported dimensions are 2 and 3; anything else is an error.
pub fn render_svg(f: &Framework) -> Result<String, String> {
    let d = f.dim();
    if d != 2 && d != 3 {
        return Err(format!(
            "unsupported dimension {d}: drawings exist for dimensions 2 and 3"
        ));
    }
    let projected: Vec<(f64, f64)> = f
        .configuration()
        .points()
        .iter()
        .map(|p| project(p.as_slice()))
        .collect();

    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &projected {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let span_x = (max_x - min_x).max(1e-12);
    let span_y = (max_y - min_y).max(1e-12);
    let scale = ((WIDTH - 2.0 * MARGIN) / span_x).min((HEIGHT - 2.0 * MARGIN) / span_y);
    // Center the scaled drawing; SVG's y axis points down, so flip it.
    let offset_x = (WIDTH - span_x * scale) / 2.0;
    let offset_y = (HEIGHT - span_y * scale) / 2.0;
    let place = |&(x, y): &(f64, f64)| {
        (
            offset_x + (x - min_x) * scale,
            HEIGHT - offset_y - (y - min_y) * scale,
        )
    };

    let mut out = String::new();
    out.push_str(r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    out.push('\n');
    out.push_str(&format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    ));
    out.push('\n');

    for (pair, kind) in f.graph().members() {
        let (x1, y1) = place(&projected[pair.i()]);
        let (x2, y2) = place(&projected[pair.j()]);
        out.push_str(&format!(
            r##"  <line class="{}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#000" {} />"##,
            kind.as_str(),
            stroke_attributes(kind),
        ));
        out.push('\n');
    }

    for (v, point) in projected.iter().enumerate() {
        let (x, y) = place(point);
        out.push_str(&format!(
            r##"  <circle cx="{x:.2}" cy="{y:.2}" r="{VERTEX_RADIUS}" fill="#fff" stroke="#000" stroke-width="1.5" />"##
        ));
        out.push('\n');
        out.push_str(&format!(
            r#"  <text x="{x:.2}" y="{y:.2}" font-family="monospace" font-size="11" text-anchor="middle" dominant-baseline="central">{v}</text>"#
        ));
        out.push('\n');
    }

    out.push_str("</svg>\n");
    Ok(out)
}
