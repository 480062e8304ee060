//! Minimal self-contained SVG emitters for the phase diagram and the
//! error-vs-order chart. No external assets, no scripts; every coordinate
//! is formatted with fixed precision so output bytes are reproducible.

use std::fmt::Write;

use crate::regimes::{PhaseCell, RegimeClass};

fn px(v: f64) -> String {
    format!("{v:.2}")
}

fn regime_fill(r: RegimeClass) -> &'static str {
    match r {
        RegimeClass::SubCritical => "#c0504d",
        RegimeClass::Critical => "#e8a33d",
        RegimeClass::SuperCritical => "#4f8f4f",
    }
}

/// Regime map over (β, N) cells with the divergence wall marked at
/// `β = wall`. Measured cells show `log10` of the measured total error,
/// bound-only cells the same for the analytic bound (parenthesised), and
/// budget-exceeded cells a dot.
pub fn phase_map(cells: &[PhaseCell], wall: f64, subtitle: &str) -> String {
    let mut betas: Vec<f64> = Vec::new();
    let mut rows: Vec<u32> = Vec::new();
    for c in cells {
        let b = c.beta.to_f64();
        if !betas.contains(&b) {
            betas.push(b);
        }
        if !rows.contains(&c.n_trunc) {
            rows.push(c.n_trunc);
        }
    }
    rows.sort_unstable();

    let cell_w = 120.0;
    let cell_h = 46.0;
    let left = 90.0;
    let top = 92.0;
    let width = left + cell_w * betas.len() as f64 + 40.0;
    let height = top + cell_h * rows.len() as f64 + 70.0;
    let col_center = |ci: usize| left + cell_w * (ci as f64 + 0.5);

    // Wall x-position: exact column when present, otherwise log-scale
    // interpolation between the neighbouring columns.
    let wall_x = betas
        .iter()
        .position(|&b| b == wall)
        .map(col_center)
        .or_else(|| {
            betas.windows(2).enumerate().find_map(|(i, w)| {
                if w[0] < wall && wall < w[1] {
                    let t = (wall.ln() - w[0].ln()) / (w[1].ln() - w[0].ln());
                    Some(col_center(i) + t * cell_w)
                } else {
                    None
                }
            })
        });

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        px(width),
        px(height),
        px(width),
        px(height)
    );
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"24\" font-family=\"monospace\" font-size=\"15\" text-anchor=\"middle\">convergence regimes {}</text>",
        px(width / 2.0),
        subtitle
    );

    // Region labels relative to the wall.
    if let Some(wx) = wall_x {
        if betas.first().copied().unwrap_or(wall) < wall {
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"48\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" fill=\"#c0504d\">sub-critical</text>",
                px((left + wx) / 2.0)
            );
        }
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"66\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" fill=\"#b07818\">critical</text>",
            px(wx)
        );
        if betas.last().copied().unwrap_or(wall) > wall {
            let right_edge = left + cell_w * betas.len() as f64;
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"48\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" fill=\"#4f8f4f\">super-critical</text>",
                px((wx + right_edge) / 2.0)
            );
        }
    }

    for c in cells {
        let ci = betas
            .iter()
            .position(|&b| b == c.beta.to_f64())
            .unwrap_or(0);
        let ri = rows.iter().position(|&r| r == c.n_trunc).unwrap_or(0);
        let x = left + cell_w * ci as f64;
        let y = top + cell_h * ri as f64;
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" fill-opacity=\"{}\" stroke=\"#555555\" stroke-width=\"0.5\"/>",
            px(x),
            px(y),
            px(cell_w),
            px(cell_h),
            regime_fill(c.regime),
            if c.measured { "0.85" } else { "0.35" }
        );
        let label = match &c.log10_error_or_bound {
            Some(v) if c.measured => format!("{:.2}", v.to_f64()),
            Some(v) => format!("({:.2})", v.to_f64()),
            None => "\u{00b7}".to_string(),
        };
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            px(x + cell_w / 2.0),
            px(y + cell_h / 2.0 + 4.0),
            label
        );
    }

    for (ci, b) in betas.iter().enumerate() {
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">\u{03b2} = {}</text>",
            px(col_center(ci)),
            px(top + cell_h * rows.len() as f64 + 22.0),
            b
        );
    }
    for (ri, r) in rows.iter().enumerate() {
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">N = {}</text>",
            px(left - 10.0),
            px(top + cell_h * (ri as f64 + 0.5) + 4.0),
            r
        );
    }

    if let Some(wx) = wall_x {
        let y1 = top - 8.0;
        let y0 = top + cell_h * rows.len() as f64 + 8.0;
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>",
            px(wx),
            px(y1),
            px(wx),
            px(y0)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">divergence wall \u{03b2} = ab\u{00b3} = {}</text>",
            px(wx),
            px(y0 + 38.0),
            wall
        );
    }

    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"start\">cells: log10(sup error + tail); parenthesised when only the analytic bound applies; \u{00b7} beyond budget</text>",
        px(16.0),
        px(height - 12.0)
    );
    s.push_str("</svg>\n");
    s
}

pub struct Series<'a> {
    pub name: &'a str,
    pub dashed: bool,
    pub points: Vec<(f64, f64)>,
}

/// A plain line chart on numeric axes (callers pass already-transformed
/// coordinates, e.g. log10 values).
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series<'_>]) -> String {
    let width = 640.0;
    let height = 440.0;
    let left = 78.0;
    let right = width - 30.0;
    let top = 56.0;
    let bottom = height - 64.0;

    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for sr in series {
        for &(x, y) in &sr.points {
            if x.is_finite() && y.is_finite() {
                xs.push(x);
                ys.push(y);
            }
        }
    }
    let (x0, x1) = min_max(&xs);
    let (y0, y1) = min_max(&ys);
    let sx = move |x: f64| left + (x - x0) / span(x0, x1) * (right - left);
    let sy = move |y: f64| bottom - (y - y0) / span(y0, y1) * (bottom - top);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        px(width),
        px(height),
        px(width),
        px(height)
    );
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"26\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
        px(width / 2.0),
        title
    );
    let _ = writeln!(
        s,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\"/>",
        px(left),
        px(bottom),
        px(right),
        px(bottom)
    );
    let _ = writeln!(
        s,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\"/>",
        px(left),
        px(bottom),
        px(left),
        px(top)
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
        px((left + right) / 2.0),
        px(height - 18.0),
        x_label
    );
    let _ = writeln!(
        s,
        "<text x=\"18\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{}</text>",
        px((top + bottom) / 2.0),
        px((top + bottom) / 2.0),
        y_label
    );
    // Corner tick labels are enough to read off scales.
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\">{:.3}</text>",
        px(left),
        px(bottom + 16.0),
        x0
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\">{:.3}</text>",
        px(right),
        px(bottom + 16.0),
        x1
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"end\">{:.3}</text>",
        px(left - 6.0),
        px(bottom + 4.0),
        y0
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"end\">{:.3}</text>",
        px(left - 6.0),
        px(top + 4.0),
        y1
    );

    let palette = ["#1f5fa8", "#c0504d", "#4f8f4f", "#7a5aa0"];
    for (i, sr) in series.iter().enumerate() {
        let color = palette[i % palette.len()];
        let mut path = String::new();
        for &(x, y) in sr.points.iter().filter(|(x, y)| x.is_finite() && y.is_finite()) {
            let _ = write!(path, "{},{} ", px(sx(x)), px(sy(y)));
        }
        let dash = if sr.dashed {
            " stroke-dasharray=\"6,4\""
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{}/>",
            path.trim_end(),
            color,
            dash
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" fill=\"{}\">{}{}</text>",
            px(right - 180.0),
            px(top + 16.0 * i as f64),
            color,
            if sr.dashed { "---- " } else { "\u{2014} " },
            sr.name
        );
    }
    s.push_str("</svg>\n");
    s
}

fn min_max(v: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in v {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    if lo > hi {
        (0.0, 1.0)
    } else {
        (lo, hi)
    }
}

fn span(a: f64, b: f64) -> f64 {
    if b > a {
        b - a
    } else {
        1.0
    }
}
