//! SVG rendering of a curve and its asymptotes.
//!
//! Zero sets are traced with marching squares on a regular grid, so the
//! picture is only as fine as the grid.

use crate::algebra::{BiPoly, Rat, Scalar};
use crate::asymptote::Asymptote;
use num_traits::ToPrimitive;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Default for Window {
    fn default() -> Self {
        Window { x0: -10.0, x1: 10.0, y0: -10.0, y1: 10.0 }
    }
}

impl Window {
    pub fn is_valid(&self) -> bool {
        [self.x0, self.x1, self.y0, self.y1].iter().all(|v| v.is_finite()) && self.x0 < self.x1 && self.y0 < self.y1
    }
}

#[derive(Clone, Debug)]
pub struct PlotOptions {
    pub window: Window,
    pub grid: usize,
    /// Side of the square canvas in pixels.
    pub size: f64,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions { window: Window::default(), grid: 512, size: 640.0 }
    }
}

/// Real polynomial in a form cheap to evaluate.
struct RealPoly(Vec<(i32, i32, f64)>);

impl RealPoly {
    fn eval(&self, x: f64, y: f64) -> f64 {
        self.0.iter().map(|&(i, j, c)| c * x.powi(i) * y.powi(j)).sum()
    }
}

fn real_rational(f: &BiPoly<Rat>) -> RealPoly {
    RealPoly(
        f.terms()
            .map(|(&(i, j), c)| (i as i32, j as i32, c.to_f64().unwrap_or(f64::NAN)))
            .collect(),
    )
}

/// `None` when some coefficient is not real.
fn real_scalar(f: &BiPoly<Scalar>) -> Option<RealPoly> {
    let vals: Vec<_> = f.terms().map(|(&(i, j), c)| (i, j, c.to_c64())).collect();
    let scale = vals.iter().map(|(_, _, (re, im))| re.hypot(*im)).fold(0.0, f64::max);
    let tol = 1e-10 * scale.max(1.0);
    vals.iter()
        .map(|&(i, j, (re, im))| (im.abs() <= tol).then_some((i as i32, j as i32, re)))
        .collect::<Option<Vec<_>>>()
        .map(RealPoly)
}

type Segment = [(f64, f64); 2];

/// Zero contour of `p` over the window as line segments in plane coordinates.
fn contour(p: &RealPoly, w: &Window, n: usize) -> Vec<Segment> {
    let n = n.max(2);
    let dx = (w.x1 - w.x0) / n as f64;
    let dy = (w.y1 - w.y0) / n as f64;
    let xs: Vec<f64> = (0..=n).map(|i| w.x0 + i as f64 * dx).collect();
    let ys: Vec<f64> = (0..=n).map(|j| w.y0 + j as f64 * dy).collect();
    let vals: Vec<Vec<f64>> = ys.iter().map(|&y| xs.iter().map(|&x| p.eval(x, y)).collect()).collect();
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..n {
            // corners counter-clockwise from bottom-left
            let c = [
                (xs[i], ys[j], vals[j][i]),
                (xs[i + 1], ys[j], vals[j][i + 1]),
                (xs[i + 1], ys[j + 1], vals[j + 1][i + 1]),
                (xs[i], ys[j + 1], vals[j + 1][i]),
            ];
            if c.iter().any(|v| !v.2.is_finite()) {
                continue;
            }
            let mut pts = Vec::with_capacity(4);
            for k in 0..4 {
                let (a, b) = (c[k], c[(k + 1) % 4]);
                if (a.2 > 0.0) != (b.2 > 0.0) {
                    let t = a.2 / (a.2 - b.2);
                    pts.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
                }
            }
            match pts.len() {
                2 => out.push([pts[0], pts[1]]),
                4 => {
                    // saddle: pair edges according to the sign at the centre
                    let centre = c.iter().map(|v| v.2).sum::<f64>() / 4.0;
                    if (centre > 0.0) == (c[0].2 > 0.0) {
                        out.push([pts[0], pts[3]]);
                        out.push([pts[1], pts[2]]);
                    } else {
                        out.push([pts[0], pts[1]]);
                        out.push([pts[2], pts[3]]);
                    }
                }
                _ => {}
            }
        }
    }
    out
}

fn path(segs: &[Segment], w: &Window, size: f64) -> String {
    let sx = size / (w.x1 - w.x0);
    let sy = size / (w.y1 - w.y0);
    let mut d = String::new();
    for [a, b] in segs {
        let _ = write!(
            d,
            "M{:.2} {:.2}L{:.2} {:.2}",
            (a.0 - w.x0) * sx,
            (w.y1 - a.1) * sy,
            (b.0 - w.x0) * sx,
            (w.y1 - b.1) * sy
        );
    }
    d
}

pub struct PlotOutcome {
    pub svg: String,
    /// Set when the curve leaves no visible trace in the window.
    pub empty_trace: bool,
}

/// Renders the curve and the real asymptotes among `asymptotes`.
pub fn render_svg(f: &BiPoly<Rat>, asymptotes: &[Asymptote], opts: &PlotOptions) -> PlotOutcome {
    let w = &opts.window;
    let size = opts.size;
    let curve = contour(&real_rational(f), w, opts.grid);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">
<style>.axis{{stroke:#999;stroke-width:1}}.curve{{stroke:#000;stroke-width:1.5;fill:none}}.asymptote{{stroke-width:1;fill:none;stroke-dasharray:6 3}}.a0{{stroke:#d62728}}.a1{{stroke:#1f77b4}}.a2{{stroke:#2ca02c}}.a3{{stroke:#9467bd}}.a4{{stroke:#ff7f0e}}.a5{{stroke:#8c564b}}.warning{{font:14px sans-serif;fill:#b00}}</style>
<rect width="{size}" height="{size}" fill="#fff"/>"##
    );
    let sx = size / (w.x1 - w.x0);
    let sy = size / (w.y1 - w.y0);
    if w.x0 <= 0.0 && 0.0 <= w.x1 {
        let x = -w.x0 * sx;
        let _ = writeln!(svg, r#"<line class="axis" x1="{x:.2}" y1="0" x2="{x:.2}" y2="{size}"/>"#);
    }
    if w.y0 <= 0.0 && 0.0 <= w.y1 {
        let y = w.y1 * sy;
        let _ = writeln!(svg, r#"<line class="axis" x1="0" y1="{y:.2}" x2="{size}" y2="{y:.2}"/>"#);
    }
    let empty_trace = curve.is_empty();
    if empty_trace {
        let _ = writeln!(svg, r#"<text class="warning" x="10" y="20">warning: no real points of the curve in the window</text>"#);
    } else {
        let _ = writeln!(svg, r#"<path class="curve" d="{}"/>"#, path(&curve, w, size));
    }
    let mut drawn = 0;
    for a in asymptotes {
        let Some(p) = real_scalar(&a.implicit_original) else { continue };
        let segs = contour(&p, w, opts.grid);
        if segs.is_empty() {
            continue;
        }
        let _ = writeln!(svg, r#"<path class="asymptote a{}" d="{}"/>"#, drawn % 6, path(&segs, w, size));
        drawn += 1;
    }
    svg.push_str("</svg>\n");
    PlotOutcome { svg, empty_trace }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    #[test]
    fn circle_contour_stays_on_circle() {
        let f = parse_poly("x^2 + y^2 - 25").unwrap();
        let segs = contour(&real_rational(&f), &Window::default(), 64);
        assert!(!segs.is_empty());
        for [a, b] in segs {
            for p in [a, b] {
                assert!((p.0.hypot(p.1) - 5.0).abs() < 0.1);
            }
        }
    }

    #[test]
    fn empty_trace_warns() {
        let f = parse_poly("x^2 + y^2 + 1").unwrap();
        let out = render_svg(&f, &[], &PlotOptions { grid: 32, ..Default::default() });
        assert!(out.empty_trace);
        assert!(out.svg.contains("warning"));
        assert!(out.svg.contains("class=\"axis\""));
    }
}
