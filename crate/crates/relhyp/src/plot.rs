//! Minimal deterministic SVG emission for the charts the pipelines write.
//! Coordinates are formatted with fixed precision so identical inputs
//! yield byte-identical files.

use crate::analysis::DeltaScan;
use std::fmt::Write as _;

pub struct Svg {
    body: String,
    width: f64,
    height: f64,
}

fn fmt(v: f64) -> String {
    format!("{v:.3}")
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Svg {
        Svg { body: String::new(), width, height }
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\"/>",
            fmt(x),
            fmt(y),
            fmt(w),
            fmt(h)
        );
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64) {
        let _ = writeln!(
            self.body,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>",
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2)
        );
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str) {
        let pts: Vec<String> =
            points.iter().map(|&(x, y)| format!("{},{}", fmt(x), fmt(y))).collect();
        let _ = writeln!(
            self.body,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\"/>",
            pts.join(" ")
        );
    }

    pub fn circle(&mut self, x: f64, y: f64, r: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"/>",
            fmt(x),
            fmt(y),
            fmt(r)
        );
    }

    pub fn text(&mut self, x: f64, y: f64, content: &str) {
        let _ = writeln!(
            self.body,
            "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\">{}</text>",
            fmt(x),
            fmt(y),
            escape(content)
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n{}</svg>\n",
            fmt(self.width),
            fmt(self.height),
            fmt(self.width),
            fmt(self.height),
            self.body
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Line chart of a δ scan: radius on the x-axis, both δ series (scaled
/// units) on the y-axis.
pub fn delta_chart(scan: &DeltaScan) -> String {
    let width = 520.0;
    let height = 320.0;
    let margin = 40.0;
    let mut svg = Svg::new(width, height);
    let radii: Vec<u32> = scan.reports.iter().map(|r| r.radius).collect();
    let four: Vec<f64> = scan.reports.iter().map(|r| r.four_point_scaled()).collect();
    let slim: Vec<f64> = scan.reports.iter().map(|r| r.slim_scaled as f64).collect();
    let max_y = four
        .iter()
        .chain(slim.iter())
        .fold(1.0f64, |acc, &v| acc.max(v));
    let min_r = *radii.first().expect("non-empty scan") as f64;
    let max_r = *radii.last().expect("non-empty scan") as f64;
    let x_of = |r: f64| {
        if max_r > min_r {
            margin + (width - 2.0 * margin) * (r - min_r) / (max_r - min_r)
        } else {
            width / 2.0
        }
    };
    let y_of = |v: f64| height - margin - (height - 2.0 * margin) * v / max_y;
    svg.line(margin, height - margin, width - margin, height - margin);
    svg.line(margin, margin, margin, height - margin);
    for series in [(&four, "black"), (&slim, "gray")] {
        let pts: Vec<(f64, f64)> = radii
            .iter()
            .zip(series.0.iter())
            .map(|(&r, &v)| (x_of(r as f64), y_of(v)))
            .collect();
        svg.polyline(&pts, series.1);
        for &(x, y) in &pts {
            svg.circle(x, y, 2.5, series.1);
        }
    }
    for &r in &radii {
        svg.text(x_of(r as f64) - 4.0, height - margin + 16.0, &r.to_string());
    }
    svg.text(
        margin,
        margin - 10.0,
        &format!(
            "four-point (black): {} / slim (gray): {}",
            scan.four_point_verdict, scan.slim_verdict
        ),
    );
    svg.finish()
}
