//! Minimal SVG: one small line panel per series, each on its own scale.

use std::fmt::Write as _;

use super::report::ExperimentReport;

const WIDTH: f64 = 640.0;
const PANEL: f64 = 140.0;
const MARGIN: f64 = 40.0;

pub fn render_svg(report: &ExperimentReport) -> String {
    let mut names: Vec<&str> = Vec::new();
    for r in &report.rows {
        if !names.contains(&r.series.as_str()) {
            names.push(&r.series);
        }
    }
    let height = MARGIN + names.len() as f64 * (PANEL + MARGIN);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" font-family="monospace" font-size="11">"##
    );
    let _ = writeln!(out, r##"<text x="{MARGIN}" y="20">{}</text>"##, escape(&report.experiment));
    for (i, name) in names.iter().enumerate() {
        let top = MARGIN + i as f64 * (PANEL + MARGIN);
        let pts = report.series(name);
        let (x0, x1) = bounds(pts.iter().map(|p| p.0));
        let (y0, y1) = bounds(pts.iter().map(|p| p.1));
        let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let sy = |y: f64| top + PANEL - (y - y0) / (y1 - y0) * PANEL;
        let _ = writeln!(
            out,
            r##"<rect x="{MARGIN}" y="{top}" width="{}" height="{PANEL}" fill="none" stroke="#999"/>"##,
            WIDTH - 2.0 * MARGIN
        );
        let _ = writeln!(
            out,
            r##"<text x="{MARGIN}" y="{}">{} [{y0:.4}, {y1:.4}]</text>"##,
            top - 4.0,
            escape(name)
        );
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            out,
            r##"<polyline fill="none" stroke="#1f4e79" stroke-width="1.5" points="{}"/>"##,
            path.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, lo + 0.5)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
