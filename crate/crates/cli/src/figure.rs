//! SVG rendering of iterated polygons under derived weights.

use std::fmt::Write as _;

use barypoly::{centroid, derived_step, limit_point, polygon_step, PointSet, WeightTuple};
use serde::Serialize;

use crate::error::CliError;

pub const DEFAULT_MIN_ITERATIONS: usize = 60;
/// Iteration continues until the diameter is this fraction of the initial one.
pub const CONVERGED_FRACTION: f64 = 1e-3;
pub const MAX_ITERATIONS: usize = 200_000;
/// Polygons drawn per series; longer runs are subsampled evenly.
pub const MAX_DRAWN: usize = 150;

const VIEW: f64 = 1000.0;
const MARGIN: f64 = 0.05 * VIEW;
const COLORS: [&str; 6] = ["#1f4e9c", "#c0392b", "#2e7d32", "#8e44ad", "#d35400", "#00838f"];

/// Weights of the derived sequence of the given order.
pub fn derived_weights(t0: &WeightTuple, order: usize) -> Result<WeightTuple, CliError> {
    let mut t = t0.clone();
    for _ in 0..order {
        t = derived_step(&t)?;
    }
    Ok(t)
}

#[derive(Debug, Clone, Serialize)]
pub struct Series {
    pub order: usize,
    pub weights: Vec<f64>,
    pub iterations: usize,
    pub final_diameter: f64,
    pub limit_point: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Figure {
    pub initial_diameter: f64,
    pub centroid: Vec<f64>,
    pub series: Vec<Series>,
    #[serde(skip)]
    pub svg: String,
}

struct Frame {
    x0: f64,
    y1: f64,
    scale: f64,
    dx: f64,
    dy: f64,
}

impl Frame {
    /// Uniform scale fitting the bounding box of `a` into the viewBox minus margins.
    fn fit(a: &PointSet) -> Self {
        let xs = a.points().iter().map(|v| v[0]);
        let ys = a.points().iter().map(|v| v[1]);
        let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
        let (y0, y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| (lo.min(y), hi.max(y)));
        let inner = VIEW - 2.0 * MARGIN;
        let scale = inner / (x1 - x0).max(y1 - y0);
        Self {
            x0,
            y1,
            scale,
            dx: MARGIN + 0.5 * (inner - (x1 - x0) * scale),
            dy: MARGIN + 0.5 * (inner - (y1 - y0) * scale),
        }
    }

    fn map(&self, v: &[f64]) -> (f64, f64) {
        (
            self.dx + (v[0] - self.x0) * self.scale,
            self.dy + (self.y1 - v[1]) * self.scale,
        )
    }
}

fn iterate(a: &PointSet, t: &WeightTuple, min_iterations: usize) -> Result<Vec<PointSet>, CliError> {
    let target = CONVERGED_FRACTION * a.diameter();
    let mut polygons = vec![a.clone()];
    loop {
        let n = polygons.len() - 1;
        let last = &polygons[n];
        if n >= MAX_ITERATIONS || (n >= min_iterations && last.diameter() < target) {
            return Ok(polygons);
        }
        let next = polygon_step(last, t)?;
        polygons.push(next);
    }
}

fn drawn_indices(n: usize) -> Vec<usize> {
    if n <= MAX_DRAWN {
        return (0..n).collect();
    }
    (0..MAX_DRAWN)
        .map(|i| (i * (n - 1) + (MAX_DRAWN - 1) / 2) / (MAX_DRAWN - 1))
        .collect()
}

fn format_weights(t: &[f64]) -> String {
    let parts: Vec<String> = t.iter().map(|x| format!("{x:.4}")).collect();
    format!("({})", parts.join(", "))
}

/// Draws the iterates of each requested order over the same point family.
/// One order gives a single spiral; several orders are superimposed in
/// distinct colours.
pub fn render_figure(
    a: &PointSet,
    t0: &WeightTuple,
    orders: &[usize],
    min_iterations: usize,
) -> Result<Figure, CliError> {
    if a.dim() != 2 {
        return Err(CliError::Usage(format!(
            "figures need planar points, got dimension {}",
            a.dim()
        )));
    }
    if orders.is_empty() {
        return Err(CliError::Usage("no derivative order requested".into()));
    }
    let frame = Frame::fit(a);
    let g = centroid(a);
    let mut series = Vec::new();
    let mut body = String::new();

    for (s, &order) in orders.iter().enumerate() {
        let color = COLORS[s % COLORS.len()];
        let t = derived_weights(t0, order)?;
        let polygons = iterate(a, &t, min_iterations)?;
        let shown = drawn_indices(polygons.len());
        let _ = writeln!(
            body,
            r#"<g id="order-{order}" fill="none" stroke="{color}" stroke-width="1.5">"#
        );
        for (i, &idx) in shown.iter().enumerate() {
            let opacity = 1.0 - 0.85 * i as f64 / (shown.len() - 1).max(1) as f64;
            let pts: Vec<String> = polygons[idx]
                .points()
                .iter()
                .map(|v| {
                    let (x, y) = frame.map(v);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(
                body,
                r#"<polygon stroke-opacity="{opacity:.3}" points="{}"/>"#,
                pts.join(" ")
            );
        }
        let limit = limit_point(a, &t)?;
        let (lx, ly) = frame.map(&limit);
        let _ = writeln!(
            body,
            r#"<circle class="limit" cx="{lx:.3}" cy="{ly:.3}" r="7" stroke-width="2.5"/>"#
        );
        body.push_str("</g>\n");
        let _ = writeln!(
            body,
            r#"<text x="{MARGIN:.0}" y="{:.0}" fill="{color}" font-family="sans-serif" font-size="18">order {order}: t = {}</text>"#,
            30.0 + 22.0 * s as f64,
            format_weights(t.t()),
        );
        series.push(Series {
            order,
            weights: t.t().to_vec(),
            iterations: polygons.len() - 1,
            final_diameter: polygons[polygons.len() - 1].diameter(),
            limit_point: limit,
        });
    }

    let (cx, cy) = frame.map(&g);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW:.0} {VIEW:.0}" width="{VIEW:.0}" height="{VIEW:.0}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    svg.push_str(&body);
    let _ = writeln!(
        svg,
        r#"<g class="centroid" stroke="black" stroke-width="2"><line x1="{:.3}" y1="{cy:.3}" x2="{:.3}" y2="{cy:.3}"/><line x1="{cx:.3}" y1="{:.3}" x2="{cx:.3}" y2="{:.3}"/></g>"#,
        cx - 8.0,
        cx + 8.0,
        cy - 8.0,
        cy + 8.0,
    );
    for (k, v) in a.points().iter().enumerate() {
        let (x, y) = frame.map(v);
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="16">A{}</text>"#,
            x + 6.0,
            y - 6.0,
            k + 1
        );
    }
    svg.push_str("</svg>\n");

    Ok(Figure {
        initial_diameter: a.diameter(),
        centroid: g,
        series,
        svg,
    })
}
