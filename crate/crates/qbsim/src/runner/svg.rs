//! Self-contained SVG line charts of trace columns, 800x500 units,
//! deterministic byte output.

use std::path::Path;

use super::Trace;
use crate::{Error, Result};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 50.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
];

fn coord(x: f64) -> String {
    format!("{x:.2}")
}

fn tick(x: f64) -> String {
    format!("{x:.6}")
}

/// Renders the requested columns against `t` as one polyline each, with
/// autoscaled linear axes, min/max tick labels, and a legend.
pub fn svg_string(trace: &Trace, columns: &[String]) -> Result<String> {
    if columns.is_empty() {
        return Err(Error::InvalidInput("no plot columns requested".into()));
    }
    if trace.rows.is_empty() {
        return Err(Error::InvalidInput("trace has no rows".into()));
    }
    let times: Vec<f64> = trace.rows.iter().map(|r| r.t).collect();
    let mut series = Vec::with_capacity(columns.len());
    for name in columns {
        series.push((name.as_str(), trace.column(name)?));
    }

    let (mut x_lo, mut x_hi) = bounds(&times);
    let mut all = Vec::new();
    for (_, values) in &series {
        all.extend_from_slice(values);
    }
    let (mut y_lo, mut y_hi) = bounds(&all);
    if x_hi - x_lo < 1e-300 {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if y_hi - y_lo < 1e-12 {
        y_lo -= 0.5;
        y_hi += 0.5;
    }

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |t: f64| MARGIN_LEFT + (t - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |v: f64| HEIGHT - MARGIN_BOTTOM - (v - y_lo) / (y_hi - y_lo) * plot_h;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n"
    ));
    // Axes.
    out.push_str(&format!(
        "<line x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
        l = coord(MARGIN_LEFT),
        r = coord(WIDTH - MARGIN_RIGHT),
        b = coord(HEIGHT - MARGIN_BOTTOM),
    ));
    out.push_str(&format!(
        "<line x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
        l = coord(MARGIN_LEFT),
        t = coord(MARGIN_TOP),
        b = coord(HEIGHT - MARGIN_BOTTOM),
    ));
    // Tick labels: axis minima and maxima.
    out.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" font-family=\"monospace\" font-size=\"12\">{v}</text>\n",
        x = coord(MARGIN_LEFT),
        y = coord(HEIGHT - MARGIN_BOTTOM + 16.0),
        v = tick(x_lo),
    ));
    out.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">{v}</text>\n",
        x = coord(WIDTH - MARGIN_RIGHT),
        y = coord(HEIGHT - MARGIN_BOTTOM + 16.0),
        v = tick(x_hi),
    ));
    out.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">{v}</text>\n",
        x = coord(MARGIN_LEFT - 6.0),
        y = coord(HEIGHT - MARGIN_BOTTOM),
        v = tick(y_lo),
    ));
    out.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">{v}</text>\n",
        x = coord(MARGIN_LEFT - 6.0),
        y = coord(MARGIN_TOP + 10.0),
        v = tick(y_hi),
    ));
    // Series.
    for (k, (_, values)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let points: Vec<String> = times
            .iter()
            .zip(values)
            .map(|(&t, &v)| format!("{},{}", coord(px(t)), coord(py(v))))
            .collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.join(" ")
        ));
    }
    // Legend, top right.
    for (k, (name, _)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let y = MARGIN_TOP + 14.0 + 16.0 * k as f64;
        let x_line = WIDTH - MARGIN_RIGHT - 120.0;
        out.push_str(&format!(
            "<line x1=\"{x1}\" y1=\"{y0}\" x2=\"{x2}\" y2=\"{y0}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            x1 = coord(x_line),
            x2 = coord(x_line + 24.0),
            y0 = coord(y - 4.0),
        ));
        out.push_str(&format!(
            "<text x=\"{x}\" y=\"{y0}\" font-family=\"monospace\" font-size=\"12\">{name}</text>\n",
            x = coord(x_line + 30.0),
            y0 = coord(y),
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// Writes the chart to `path`.
pub fn write_svg(trace: &Trace, columns: &[String], path: &Path) -> Result<()> {
    let body = svg_string(trace, columns)?;
    std::fs::write(path, body).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
