//! CSV and SVG writers. Floats are written with 17 significant digits.

use std::fmt::Write as _;

use su2opt_core::DiskPoint;

/// `{:.16e}`: shortest fixed-width form that round-trips every `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_row(fields: &[f64]) -> String {
    fields.iter().map(|&x| num(x)).collect::<Vec<_>>().join(",")
}

/// A polyline in the disk with a stroke colour.
pub struct SvgPath<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub points: &'a [DiskPoint],
}

const SIZE: f64 = 640.0;
const SCALE: f64 = 280.0;

fn to_px(p: DiskPoint) -> (f64, f64) {
    (SIZE / 2.0 + SCALE * p.x, SIZE / 2.0 - SCALE * p.y)
}

/// Plots the paths over the unit circle and the axes.
pub fn svg(title: &str, paths: &[SvgPath<'_>]) -> String {
    let mut out = String::new();
    let c = SIZE / 2.0;
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        out,
        r##"<line x1="0" y1="{c}" x2="{SIZE}" y2="{c}" stroke="#bbbbbb" stroke-width="0.5"/>"##
    );
    let _ = writeln!(
        out,
        r##"<line x1="{c}" y1="0" x2="{c}" y2="{SIZE}" stroke="#bbbbbb" stroke-width="0.5"/>"##
    );
    let _ = writeln!(
        out,
        r##"<circle cx="{c}" cy="{c}" r="{SCALE}" fill="none" stroke="#000000" stroke-width="1"/>"##
    );
    for p in paths {
        if p.points.is_empty() {
            continue;
        }
        let mut d = String::new();
        for (i, &q) in p.points.iter().enumerate() {
            let (x, y) = to_px(q);
            let _ = write!(d, "{}{x:.2},{y:.2}", if i == 0 { "M" } else { " L" });
        }
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="none" stroke="{}" stroke-width="1.5"><title>{}</title></path>"#,
            p.color,
            escape(p.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
