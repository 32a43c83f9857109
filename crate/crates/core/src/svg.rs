//! Deterministic SVG rendering of a planar result.

use std::fmt::Write;

use num_traits::{One, Signed, Zero};

use crate::config::ColoredConfiguration;
use crate::error::{Error, Result};
use crate::geometry::{Hyperplane, Point};
use crate::pipeline::ResultBundle;
use crate::rational::{int, to_decimal, Rational};

const SIZE: i64 = 800;
const MARGIN: i64 = 40;
const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    let (oc, ac, bc) = (o.coords(), a.coords(), b.coords());
    (&ac[0] - &oc[0]) * (&bc[1] - &oc[1]) - (&ac[1] - &oc[1]) * (&bc[0] - &oc[0])
}

/// Convex hull in counterclockwise order, collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

struct Viewport {
    min_x: Rational,
    max_y: Rational,
    scale: Rational,
    bounds: [Rational; 4],
}

impl Viewport {
    fn new<'a>(points: impl Iterator<Item = &'a Point>) -> Self {
        let pts: Vec<&Point> = points.collect();
        let min = |k: usize| pts.iter().map(|p| p.coords()[k].clone()).min().unwrap_or_else(Rational::zero);
        let max = |k: usize| pts.iter().map(|p| p.coords()[k].clone()).max().unwrap_or_else(Rational::zero);
        let (min_x, max_x, min_y, max_y) = (min(0), max(0), min(1), max(1));
        let span = std::cmp::max(&max_x - &min_x, &max_y - &min_y);
        let span = if span.is_zero() { Rational::one() } else { span };
        let scale = int(SIZE - 2 * MARGIN) / span;
        Viewport {
            bounds: [min_x.clone(), max_x, min_y, max_y.clone()],
            min_x,
            max_y,
            scale,
        }
    }

    fn map(&self, p: &Point) -> (String, String) {
        let x = int(MARGIN) + (&p.coords()[0] - &self.min_x) * &self.scale;
        let y = int(MARGIN) + (&self.max_y - &p.coords()[1]) * &self.scale;
        (to_decimal(&x, 9), to_decimal(&y, 9))
    }

    /// The segment of `h` inside the bounding box, if any.
    fn clip(&self, h: &Hyperplane) -> Option<(Point, Point)> {
        let [x0, x1, y0, y1] = &self.bounds;
        let (a, b, c) = (&h.normal()[0], &h.normal()[1], h.offset());
        let mut hits: Vec<Point> = Vec::new();
        if !b.is_zero() {
            for x in [x0, x1] {
                let y = (c - a * x) / b;
                if &y >= y0 && &y <= y1 {
                    hits.push(Point::new(vec![x.clone(), y]));
                }
            }
        }
        if !a.is_zero() {
            for y in [y0, y1] {
                let x = (c - b * y) / a;
                if &x >= x0 && &x <= x1 {
                    hits.push(Point::new(vec![x, y.clone()]));
                }
            }
        }
        hits.sort();
        hits.dedup();
        (hits.len() >= 2).then(|| (hits[0].clone(), hits[hits.len() - 1].clone()))
    }
}

/// Points colored by class, `O` marked, `Q_i` ringed with their hulls
/// outlined, and trimming cuts dashed.
pub fn render_svg(cfg: &ColoredConfiguration, bundle: &ResultBundle) -> Result<String> {
    if cfg.dimension() != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "rendering needs d = 2, got d = {}",
            cfg.dimension()
        )));
    }
    let view = Viewport::new(cfg.all_points().into_iter().chain(std::iter::once(&bundle.o)));
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    for step in &bundle.trace.steps {
        if let Some((a, b)) = view.clip(&step.cut) {
            let ((x1, y1), (x2, y2)) = (view.map(&a), view.map(&b));
            let _ = writeln!(
                out,
                r##"<line class="cut" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#777777" stroke-dasharray="6 4"/>"##
            );
        }
    }
    for (c, q) in bundle.q.iter().enumerate() {
        let color = PALETTE[c % PALETTE.len()];
        let hull = convex_hull(q);
        let coords: Vec<String> = hull
            .iter()
            .map(|p| {
                let (x, y) = view.map(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon class="hull" points="{}" fill="{color}" fill-opacity="0.12" stroke="{color}" stroke-width="1.5"/>"#,
            coords.join(" ")
        );
    }
    for (c, class) in cfg.colors().iter().enumerate() {
        let color = PALETTE[c % PALETTE.len()];
        for p in class {
            let (x, y) = view.map(p);
            let _ = writeln!(out, r#"<circle class="point" cx="{x}" cy="{y}" r="4" fill="{color}"/>"#);
        }
    }
    for (c, q) in bundle.q.iter().enumerate() {
        let color = PALETTE[c % PALETTE.len()];
        for p in q {
            let (x, y) = view.map(p);
            let _ = writeln!(
                out,
                r#"<circle class="q" cx="{x}" cy="{y}" r="8" fill="none" stroke="{color}" stroke-width="2"/>"#
            );
        }
    }
    let (ox, oy) = view.map(&bundle.o);
    let _ = writeln!(
        out,
        r#"<circle class="origin" cx="{ox}" cy="{oy}" r="5" fill="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{ox}" y="{oy}" dx="8" dy="-8" font-family="sans-serif" font-size="14">O</text>"#
    );
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior_point() {
        let pts: Vec<Point> = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1), (1, 0)]
            .iter()
            .map(|&(x, y)| Point::from_ints(&[x, y]))
            .collect();
        let hull = convex_hull(&pts);
        let want: Vec<Point> = [(0, 0), (2, 0), (2, 2), (0, 2)]
            .iter()
            .map(|&(x, y)| Point::from_ints(&[x, y]))
            .collect();
        assert_eq!(hull, want);
    }
}
