//! Strip diagrams of arc collections.

use std::fmt::Write;

use annulus::{Curve, Surface};

const SCALE: f64 = 240.0;
const MARGIN: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 280.0;

fn px(x: f64, x0: f64) -> f64 {
    MARGIN + (x - x0) * SCALE
}

/// Lifts of `c` with both endpoints in `[x0, x1]`, as (start, end) strip
/// coordinates with the boundary each endpoint lies on (true for inner).
fn lifts(s: &Surface, c: Curve, x0: f64, x1: f64) -> Vec<((f64, bool), (f64, bool))> {
    let (p, q) = (s.p() as f64, s.q() as f64);
    let (start, end) = match c {
        Curve::Bridging { i, j } => ((j as f64 / q, false), (i as f64 / p, true)),
        Curve::Inner { a, b } => ((a as f64 / p, true), (b as f64 / p, true)),
        Curve::Outer { a, b } => ((a as f64 / q, false), (b as f64 / q, false)),
        Curve::Loop { .. } => return Vec::new(),
    };
    let lo = (x0 - start.0.max(end.0)).floor() as i64 - 1;
    let hi = (x1 - start.0.min(end.0)).ceil() as i64 + 1;
    (lo..=hi)
        .map(|k| ((start.0 + k as f64, start.1), (end.0 + k as f64, end.1)))
        .filter(|(a, b)| [a.0, b.0].iter().all(|x| (x0..=x1).contains(x)))
        .collect()
}

fn boundary_y(inner: bool) -> f64 {
    if inner {
        TOP
    } else {
        BOTTOM
    }
}

pub fn render(s: &Surface, arcs: &[Curve], x0: f64, x1: f64) -> String {
    let width = 2.0 * MARGIN + (x1 - x0) * SCALE;
    let height = BOTTOM + TOP;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#
    );
    for inner in [true, false] {
        let y = boundary_y(inner);
        let _ = writeln!(
            out,
            r#"<line class="boundary" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="gray" stroke-width="2"/>"#,
            px(x0, x0),
            px(x1, x0)
        );
        let (n, label) = if inner { (s.p(), "inner") } else { (s.q(), "outer") };
        let first = (x0 * n as f64).ceil() as i64;
        let last = (x1 * n as f64).floor() as i64;
        for m in first..=last {
            let x = px(m as f64 / n as f64, x0);
            let _ = writeln!(out, r#"<circle class="{label}-point" cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
            let ty = if inner { y - 10.0 } else { y + 20.0 };
            let _ = writeln!(out, r#"<text x="{x:.2}" y="{ty:.2}" font-size="12" text-anchor="middle">{m}</text>"#);
        }
    }
    for &c in arcs {
        for ((sx, sin), (ex, ein)) in lifts(s, c, x0, x1) {
            let (ax, ay) = (px(sx, x0), boundary_y(sin));
            let (bx, by) = (px(ex, x0), boundary_y(ein));
            // peripheral lifts bulge into the strip, bridging ones leave vertically
            let bulge = (BOTTOM - TOP) * 0.45;
            let (c1y, c2y) = match (sin, ein) {
                (true, true) => (ay + bulge, by + bulge),
                (false, false) => (ay - bulge, by - bulge),
                _ => ((ay + by) / 2.0, (ay + by) / 2.0),
            };
            let _ = writeln!(
                out,
                r#"<path class="arc" data-arc="{c}" d="M{ax:.2},{ay:.2} C{ax:.2},{c1y:.2} {bx:.2},{c2y:.2} {bx:.2},{by:.2}" fill="none" stroke="steelblue" stroke-width="2" marker-end="url(#arrow)"/>"#
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
