//! Self-contained SVG line charts. Output depends only on the inputs, so
//! repeated runs produce identical files.

use std::fmt::Write;

pub const ACTUAL_COLOR: &str = "#d62728";
pub const PREDICTED_COLOR: &str = "#1f77b4";

const WIDTH: f64 = 900.0;
const PANEL_HEIGHT: f64 = 260.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 40.0;

#[derive(Debug, Clone)]
pub struct Line<'a> {
    pub label: &'a str,
    pub color: &'a str,
    /// Missing values break the line.
    pub values: &'a [f64],
    pub markers: bool,
}

#[derive(Debug, Clone)]
pub struct Panel<'a> {
    pub title: &'a str,
    pub lines: Vec<Line<'a>>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn label(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e6).contains(&a) {
        format!("{v:.3e}")
    } else {
        format!("{v:.3}")
    }
}

fn bounds<'a>(it: impl Iterator<Item = &'a f64>) -> (f64, f64) {
    let (lo, hi) = it.filter(|v| v.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 * lo.abs().max(1.0) {
        let pad = lo.abs().max(1.0) * 0.5;
        return (lo - pad, hi + pad);
    }
    let pad = (hi - lo) * 0.05;
    (lo - pad, hi + pad)
}

/// Stack `panels` vertically over a shared x axis of `x` values.
pub fn render(title: &str, x_label: &str, x: &[f64], panels: &[Panel<'_>]) -> String {
    let height = MARGIN_TOP + panels.len() as f64 * PANEL_HEIGHT;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="22" text-anchor="middle" font-size="16">{}</text>"#, WIDTH / 2.0, escape(title));

    let (x_lo, x_hi) = bounds(x.iter());
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let sx = |v: f64| MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w;

    for (k, panel) in panels.iter().enumerate() {
        let top = MARGIN_TOP + k as f64 * PANEL_HEIGHT + 20.0;
        let plot_h = PANEL_HEIGHT - MARGIN_BOTTOM - 20.0;
        let (y_lo, y_hi) = bounds(panel.lines.iter().flat_map(|l| l.values.iter()));
        let sy = |v: f64| top + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h;

        let _ = writeln!(out, r#"<g class="panel">"#);
        let _ = writeln!(out, r#"<text x="{MARGIN_LEFT}" y="{:.2}" font-size="13">{}</text>"#, top - 6.0, escape(panel.title));
        let _ = writeln!(
            out,
            r##"<rect x="{MARGIN_LEFT}" y="{top:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="#888"/>"##
        );
        for i in 0..=4 {
            let v = y_lo + (y_hi - y_lo) * i as f64 / 4.0;
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                MARGIN_LEFT - 6.0,
                sy(v) + 4.0,
                label(v)
            );
        }
        for i in 0..=4 {
            let v = x_lo + (x_hi - x_lo) * i as f64 / 4.0;
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                sx(v),
                top + plot_h + 16.0,
                label(v)
            );
        }

        for line in &panel.lines {
            let _ = writeln!(out, r#"<g class="series" data-label="{}">"#, escape(line.label));
            let mut segment: Vec<String> = Vec::new();
            let flush = |segment: &mut Vec<String>, out: &mut String| {
                if segment.len() > 1 {
                    let _ = writeln!(
                        out,
                        r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
                        line.color,
                        segment.join(" ")
                    );
                }
                segment.clear();
            };
            for (xi, yi) in x.iter().zip(line.values) {
                if yi.is_finite() && xi.is_finite() {
                    segment.push(format!("{:.2},{:.2}", sx(*xi), sy(*yi)));
                } else {
                    flush(&mut segment, &mut out);
                }
            }
            flush(&mut segment, &mut out);
            if line.markers {
                for (xi, yi) in x.iter().zip(line.values).filter(|(a, b)| a.is_finite() && b.is_finite()) {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{}"><title>{}</title></circle>"#,
                        sx(*xi),
                        sy(*yi),
                        line.color,
                        label(*yi)
                    );
                }
            }
            let _ = writeln!(out, "</g>");
        }

        // Legend in the panel's top-right corner.
        for (j, line) in panel.lines.iter().enumerate() {
            let lx = WIDTH - MARGIN_RIGHT - 150.0;
            let ly = top + 14.0 + j as f64 * 16.0;
            let _ = writeln!(
                out,
                r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="3"/><text x="{:.2}" y="{:.2}">{}</text>"#,
                ly - 4.0,
                lx + 20.0,
                ly - 4.0,
                line.color,
                lx + 26.0,
                ly,
                escape(line.label)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        height - 4.0,
        escape(x_label)
    );
    out.push_str("</svg>\n");
    out
}

/// Actuals in red and predictions in blue over a shared axis.
pub fn forecast_svg(title: &str, x: &[f64], actual: &[f64], predicted: &[f64]) -> String {
    render(
        title,
        "step",
        x,
        &[Panel {
            title: "forecast",
            lines: vec![
                Line { label: "actual", color: ACTUAL_COLOR, values: actual, markers: true },
                Line { label: "predicted", color: PREDICTED_COLOR, values: predicted, markers: true },
            ],
        }],
    )
}

/// Four stacked panels: value, trend, seasonal, residual.
pub fn decomposition_svg(title: &str, x: &[f64], value: &[f64], trend: &[f64], seasonal: &[f64], residual: &[f64]) -> String {
    let panel = |t, v| Panel { title: t, lines: vec![Line { label: t, color: PREDICTED_COLOR, values: v, markers: false }] };
    render(
        title,
        "step",
        x,
        &[panel("value", value), panel("trend", trend), panel("seasonal", seasonal), panel("residual", residual)],
    )
}
