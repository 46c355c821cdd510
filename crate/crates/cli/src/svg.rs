//! SVG pictures of curves in the fundamental square. For inspection only.

use std::fmt::Write;

use finegraph::curves_ops::intersect_torus;
use finegraph::surfaces::{AnnulusArc, TorusCurve};
use finegraph::RatPoint;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 20.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

type P = (f64, f64);

fn f(p: &RatPoint) -> P {
    (p.x.to_f64(), p.y.to_f64())
}

/// Liang-Barsky clip of a segment to `[x0,x1] x [y0,y1]`.
fn clip(a: P, b: P, x0: f64, x1: f64, y0: f64, y1: f64) -> Option<(P, P)> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (p, q) in [(-dx, a.0 - x0), (dx, x1 - a.0), (-dy, a.1 - y0), (dy, y1 - a.1)] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
            continue;
        }
        let r = q / p;
        if p < 0.0 {
            t0 = t0.max(r);
        } else {
            t1 = t1.min(r);
        }
        if t0 > t1 {
            return None;
        }
    }
    Some(((a.0 + t0 * dx, a.1 + t0 * dy), (a.0 + t1 * dx, a.1 + t1 * dy)))
}

struct Canvas {
    out: String,
    ymax: f64,
}

impl Canvas {
    fn new(height: f64) -> Canvas {
        let w = SIZE + 2.0 * MARGIN;
        let h = SIZE * height + 2.0 * MARGIN;
        let mut out = String::new();
        writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
        writeln!(out, r#"<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{}" fill="white" stroke="black"/>"#, SIZE * height).unwrap();
        Canvas { out, ymax: height }
    }

    fn map(&self, p: P) -> P {
        (MARGIN + p.0 * SIZE, MARGIN + (self.ymax - p.1) * SIZE)
    }

    fn line(&mut self, a: P, b: P, color: &str) {
        let (a, b) = (self.map(a), self.map(b));
        writeln!(
            self.out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#,
            a.0, a.1, b.0, b.1
        )
        .unwrap();
    }

    fn dot(&mut self, p: P) {
        let p = self.map(p);
        writeln!(self.out, r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="black"/>"#, p.0, p.1).unwrap();
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

fn x_range(pts: &[RatPoint]) -> (i64, i64) {
    let lo = pts.iter().map(|p| p.x.floor_i64()).min().unwrap_or(0);
    let hi = pts.iter().map(|p| p.x.ceil_i64()).max().unwrap_or(0);
    (lo, hi)
}

fn y_range(pts: &[RatPoint]) -> (i64, i64) {
    let lo = pts.iter().map(|p| p.y.floor_i64()).min().unwrap_or(0);
    let hi = pts.iter().map(|p| p.y.ceil_i64()).max().unwrap_or(0);
    (lo, hi)
}

/// Torus curves: every translate clipped to the unit square, crossing
/// points marked.
pub fn torus(curves: &[TorusCurve]) -> String {
    let mut c = Canvas::new(1.0);
    for (k, curve) in curves.iter().enumerate() {
        let pts: Vec<P> = curve.lift().iter().map(f).collect();
        let (xl, xh) = x_range(curve.lift());
        let (yl, yh) = y_range(curve.lift());
        for i in -xh..=1 - xl {
            for j in -yh..=1 - yl {
                for w in pts.windows(2) {
                    let a = (w[0].0 + i as f64, w[0].1 + j as f64);
                    let b = (w[1].0 + i as f64, w[1].1 + j as f64);
                    if let Some((p, q)) = clip(a, b, 0.0, 1.0, 0.0, 1.0) {
                        c.line(p, q, COLORS[k % COLORS.len()]);
                    }
                }
            }
        }
    }
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            for p in intersect_torus(&curves[i], &curves[j]).points {
                c.dot(f(&p.location));
            }
        }
    }
    c.finish()
}

/// Annulus arcs: translates clipped to `[0,1] x [0,1]`.
pub fn annulus(arcs: &[AnnulusArc]) -> String {
    let mut c = Canvas::new(1.0);
    for (k, arc) in arcs.iter().enumerate() {
        let pts: Vec<P> = arc.lift().iter().map(f).collect();
        let (xl, xh) = x_range(arc.lift());
        for i in -xh..=1 - xl {
            for w in pts.windows(2) {
                let a = (w[0].0 + i as f64, w[0].1);
                let b = (w[1].0 + i as f64, w[1].1);
                if let Some((p, q)) = clip(a, b, 0.0, 1.0, 0.0, 1.0) {
                    c.line(p, q, COLORS[k % COLORS.len()]);
                }
            }
        }
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use finegraph::Rat;

    #[test]
    fn clip_cases() {
        assert_eq!(clip((-1.0, 0.5), (2.0, 0.5), 0.0, 1.0, 0.0, 1.0), Some(((0.0, 0.5), (1.0, 0.5))));
        assert_eq!(clip((2.0, 2.0), (3.0, 3.0), 0.0, 1.0, 0.0, 1.0), None);
    }

    #[test]
    fn marks_crossings() {
        let s = torus(&[TorusCurve::horizontal(Rat::new(1, 2)), TorusCurve::vertical(Rat::new(1, 2))]);
        assert_eq!(s.matches("<circle").count(), 1);
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
    }
}
