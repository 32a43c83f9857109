#![allow(dead_code)]

use std::path::PathBuf;

use rainbow_core::config::{ColoredConfiguration, Format};
use rainbow_core::geometry::Point;
use rainbow_core::hypergraph::PartiteHypergraph;
use rainbow_core::rational::{rat, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load_fixture(name: &str) -> ColoredConfiguration {
    let bytes = std::fs::read(fixture(name)).unwrap();
    let format = if name.ends_with(".json") { Format::Json } else { Format::Plain };
    ColoredConfiguration::load(&bytes, format).unwrap()
}

pub fn pt(x: i64, y: i64) -> Point {
    Point::from_ints(&[x, y])
}

/// Rational with numerator in `[-range, range]` and denominator in `1..=den`.
pub fn rand_rational(rng: &mut ChaCha8Rng, range: i64, den: i64) -> Rational {
    rat(rng.random_range(-range..=range), rng.random_range(1..=den))
}

pub fn rand_point(rng: &mut ChaCha8Rng, d: usize, range: i64, den: i64) -> Point {
    Point::new((0..d).map(|_| rand_rational(rng, range, den)).collect())
}

/// Up to `max` distinct integer points inside a square around `center`.
pub fn cluster(rng: &mut ChaCha8Rng, center: (i64, i64), radius: i64, max: usize) -> Vec<Point> {
    let k = rng.random_range(1..=max);
    let mut out: Vec<Point> = Vec::new();
    while out.len() < k {
        let p = pt(
            center.0 + rng.random_range(-radius..=radius),
            center.1 + rng.random_range(-radius..=radius),
        );
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

pub fn random_hypergraph(rng: &mut ChaCha8Rng, sizes: &[usize], p: f64) -> PartiteHypergraph {
    let mut h = PartiteHypergraph::empty(sizes.to_vec()).unwrap();
    for a in 0..sizes[0] {
        for b in 0..sizes[1] {
            for c in 0..sizes[2] {
                if rng.random_bool(p) {
                    h.add_edge(vec![a, b, c]).unwrap();
                }
            }
        }
    }
    h
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    let (o, a, b) = (o.coords(), a.coords(), b.coords());
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

fn sgn(r: &Rational) -> i32 {
    use num_traits::{Signed, Zero};
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if sgn(&cross(a, b, p)) != 0 {
        return false;
    }
    (0..2).all(|k| {
        let (lo, hi) = if a.coords()[k] <= b.coords()[k] { (a, b) } else { (b, a) };
        lo.coords()[k] <= p.coords()[k] && p.coords()[k] <= hi.coords()[k]
    })
}

/// Closed segments `ab` and `cd` meet.
pub fn segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let d1 = sgn(&cross(c, d, a));
    let d2 = sgn(&cross(c, d, b));
    let d3 = sgn(&cross(a, b, c));
    let d4 = sgn(&cross(a, b, d));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
}

/// `p` lies in the closed convex hull of `set`, by Carathéodory.
pub fn in_closed_hull(p: &Point, set: &[Point]) -> bool {
    let n = set.len();
    for i in 0..n {
        if &set[i] == p {
            return true;
        }
        for j in i + 1..n {
            if on_segment(p, &set[i], &set[j]) {
                return true;
            }
            for k in j + 1..n {
                let s = [
                    sgn(&cross(&set[i], &set[j], p)),
                    sgn(&cross(&set[j], &set[k], p)),
                    sgn(&cross(&set[k], &set[i], p)),
                ];
                let enclosed = s.iter().all(|&x| x >= 0) || s.iter().all(|&x| x <= 0);
                if enclosed && sgn(&cross(&set[i], &set[j], &set[k])) != 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Planar closed convex hulls of `a` and `b` intersect.
pub fn hulls_meet(a: &[Point], b: &[Point]) -> bool {
    if a.iter().any(|p| in_closed_hull(p, b)) || b.iter().any(|p| in_closed_hull(p, a)) {
        return true;
    }
    for (i, p) in a.iter().enumerate() {
        for q in &a[i..] {
            for (j, r) in b.iter().enumerate() {
                for s in &b[j..] {
                    if segments_meet(p, q, r, s) {
                        return true;
                    }
                }
            }
        }
    }
    false
}
