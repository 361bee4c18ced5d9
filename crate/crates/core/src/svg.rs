//! Layered SVG figures.
//!
//! Output depends only on the scene: coordinates are printed with a fixed
//! number of decimals and layers keep their insertion order.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerKind {
    Polygon,
    Ball,
    Dual,
    Central,
    Evolute,
    Involute,
    Iterate,
    Equidistant,
}

impl LayerKind {
    fn style(self) -> (&'static str, f64, &'static str) {
        // (stroke, relative width, dash pattern)
        match self {
            LayerKind::Polygon => ("#000000", 1.0, ""),
            LayerKind::Ball => ("#7f7f7f", 1.0, ""),
            LayerKind::Dual => ("#7f7f7f", 1.0, "4 2"),
            LayerKind::Central => ("#000000", 3.0, ""),
            LayerKind::Evolute => ("#c0392b", 1.5, ""),
            LayerKind::Involute => ("#2256a8", 1.5, ""),
            LayerKind::Iterate => ("#2e8b57", 0.75, ""),
            LayerKind::Equidistant => ("#000000", 0.75, "2 2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub id: String,
    pub kind: LayerKind,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Scene {
    pub layers: Vec<Layer>,
}

impl Scene {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add<S: Scalar>(&mut self, id: impl Into<String>, kind: LayerKind, points: &[Vec2<S>]) -> &mut Self {
        self.layers.push(Layer {
            id: id.into(),
            kind,
            points: points.iter().map(Vec2::to_f64).collect(),
        });
        self
    }

    fn bounds(&self) -> Option<(f64, f64, f64, f64)> {
        let mut pts = self.layers.iter().flat_map(|l| l.points.iter());
        let &(x0, y0) = pts.next()?;
        Some(pts.fold((x0, y0, x0, y0), |(a, b, c, d), &(x, y)| (a.min(x), b.min(y), c.max(x), d.max(y))))
    }
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.6}");
    // Avoid "-0.000000".
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Renders the scene with the y axis pointing up and a 5% margin.
pub fn render_svg(scene: &Scene) -> Result<String> {
    let (x0, y0, x1, y1) = scene.bounds().ok_or(Error::EmptyScene)?;
    if ![x0, y0, x1, y1].iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let extent = (x1 - x0).max(y1 - y0);
    let extent = if extent > 0.0 { extent } else { 1.0 };
    let margin = 0.05 * extent;
    let width = x1 - x0 + 2.0 * margin;
    let height = y1 - y0 + 2.0 * margin;
    let unit = extent / 400.0;
    let tx = |x: f64| fmt(x - x0 + margin);
    let ty = |y: f64| fmt(y1 - y + margin);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {} {}\" width=\"800\" height=\"{}\">",
        fmt(width),
        fmt(height),
        fmt(800.0 * height / width),
    );
    for layer in &scene.layers {
        let (stroke, w, dash) = layer.kind.style();
        let _ = write!(
            out,
            "  <g id=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{}\" stroke-linejoin=\"round\"",
            escape(&layer.id),
            fmt(w * unit),
        );
        if !dash.is_empty() {
            let scaled: Vec<String> = dash.split(' ').map(|d| fmt(d.parse::<f64>().unwrap_or(1.0) * unit)).collect();
            let _ = write!(out, " stroke-dasharray=\"{}\"", scaled.join(" "));
        }
        out.push_str(">\n");
        let distinct = distinct(&layer.points);
        if distinct.len() == 1 {
            let (x, y) = distinct[0];
            let _ = writeln!(
                out,
                "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{stroke}\"/>",
                tx(x),
                ty(y),
                fmt(3.0 * unit),
            );
        } else if !distinct.is_empty() {
            let coords: Vec<String> = distinct.iter().map(|&(x, y)| format!("{},{}", tx(x), ty(y))).collect();
            let _ = writeln!(out, "    <polygon points=\"{}\"/>", coords.join(" "));
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn distinct(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &p in points {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('"', "&quot;")
}
