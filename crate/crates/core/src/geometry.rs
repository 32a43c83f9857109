//! Exact geometric predicates over rational coordinates.
//!
//! Every predicate reduces to the sign of a determinant. Points are turned
//! into integer homogeneous coordinates (common denominator as the weight)
//! so determinants are computed over `BigInt` without any division.

use std::borrow::Borrow;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// A point in d-space with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// Parses each coordinate with [`parse_rational`].
    pub fn parse<S: AsRef<str>>(coords: &[S]) -> Result<Self> {
        coords
            .iter()
            .map(|c| parse_rational(c.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Point::new)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rational).collect()
    }

    /// Integer homogeneous form `(L·x_1, …, L·x_d, L)` with `L > 0`.
    pub fn homogeneous(&self) -> Homogeneous {
        let weight = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coords = self
            .coords
            .iter()
            .map(|c| c.numer() * (&weight / c.denom()))
            .collect();
        Homogeneous { coords, weight }
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Rational) -> Point {
        Point::new(self.coords.iter().map(|c| c * factor).collect())
    }

    pub fn dot(&self, v: &[Rational]) -> Rational {
        self.coords.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Arithmetic mean of a nonempty list of points.
    pub fn centroid<P: Borrow<Point>>(points: &[P]) -> Point {
        let d = points[0].borrow().dim();
        let mut acc = vec![Rational::zero(); d];
        for p in points {
            for (a, c) in acc.iter_mut().zip(p.borrow().coords()) {
                *a += c;
            }
        }
        let k = Rational::from_integer(BigInt::from(points.len()));
        Point::new(acc.into_iter().map(|a| a / &k).collect())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(deserializer)?;
        raw.iter()
            .map(|v| match v {
                serde_json::Value::String(s) => parse_rational(s),
                serde_json::Value::Number(n) => parse_rational(&n.to_string()),
                other => Err(Error::Parse(format!("coordinate must be a string or number, got {other}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Point::new)
            .map_err(serde::de::Error::custom)
    }
}

/// Integer homogeneous coordinates; `weight` is always positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogeneous {
    pub coords: Vec<BigInt>,
    pub weight: BigInt,
}

/// Orientation / side sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_int(v: &BigInt) -> Sign {
        match v.sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        }
    }

    pub fn of_rational(v: &Rational) -> Sign {
        Sign::of_int(v.numer())
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Oriented hyperplane `normal · x = offset`; the positive side is where
/// `normal · x > offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Point,
    #[serde(with = "crate::rational::as_string")]
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::input("hyperplane normal must be nonzero"));
        }
        Ok(Hyperplane {
            normal: Point::new(normal),
            offset,
        })
    }

    /// Line through two distinct planar points, positive side to the left
    /// of the direction `a -> b`.
    pub fn through(a: &Point, b: &Point) -> Result<Self> {
        if a.dim() != 2 || b.dim() != 2 {
            return Err(Error::input("Hyperplane::through expects planar points"));
        }
        let dx = &b.coords()[0] - &a.coords()[0];
        let dy = &b.coords()[1] - &a.coords()[1];
        let normal = vec![-dy, dx];
        let offset = a.dot(&normal);
        Hyperplane::new(normal, offset)
    }

    pub fn normal(&self) -> &[Rational] {
        self.normal.coords()
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `normal · p − offset`.
    pub fn eval(&self, p: &Point) -> Rational {
        p.dot(self.normal()) - &self.offset
    }

    pub fn flipped(&self) -> Hyperplane {
        Hyperplane {
            normal: self.normal.scale(&(-Rational::one())),
            offset: -self.offset.clone(),
        }
    }
}

fn check_dims<P: Borrow<Point>>(points: &[P], d: usize) -> Result<()> {
    match points.iter().find(|p: &&P| (*p).borrow().dim() != d) {
        Some(p) => Err(Error::input(format!(
            "dimension mismatch: expected {d}, got point {} of dimension {}",
            p.borrow(),
            p.borrow().dim()
        ))),
        None => Ok(()),
    }
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 3 {
        return det3(&m[0], &m[1], &m[2]);
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn det3(a: &[BigInt], b: &[BigInt], c: &[BigInt]) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn det_rational(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rational::zero();
        };
        if pivot != k {
            m.swap(k, pivot);
            det = -det;
        }
        let p = m[k][k].clone();
        det *= &p;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &p;
            for j in k..n {
                let v = &m[k][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    det
}

/// Sign of the homogeneous determinant of `d+1` homogeneous points.
pub fn orientation_hom(rows: &[&Homogeneous]) -> Sign {
    if rows.len() == 3 && rows[0].coords.len() == 2 {
        let r = |h: &Homogeneous| [h.coords[0].clone(), h.coords[1].clone(), h.weight.clone()];
        let (a, b, c) = (r(rows[0]), r(rows[1]), r(rows[2]));
        return Sign::of_int(&det3(&a, &b, &c));
    }
    let m = rows
        .iter()
        .map(|h| {
            let mut row = h.coords.clone();
            row.push(h.weight.clone());
            row
        })
        .collect();
    Sign::of_int(&det_int(m))
}

/// Planar orientation of three homogeneous points without cloning.
pub fn orient2_hom(a: &Homogeneous, b: &Homogeneous, c: &Homogeneous) -> Sign {
    let (ax, ay, aw) = (&a.coords[0], &a.coords[1], &a.weight);
    let (bx, by, bw) = (&b.coords[0], &b.coords[1], &b.weight);
    let (cx, cy, cw) = (&c.coords[0], &c.coords[1], &c.weight);
    let det = ax * (by * cw - bw * cy) - ay * (bx * cw - bw * cx) + aw * (bx * cy - by * cx);
    Sign::of_int(&det)
}

/// Orientation of `d+1` points in d-space: sign of the determinant of the
/// matrix whose rows are `(p_i, 1)`.
pub fn orientation<P: Borrow<Point>>(vertices: &[P]) -> Result<Sign> {
    let d = vertices
        .first()
        .map(|p| p.borrow().dim())
        .ok_or_else(|| Error::input("orientation needs vertices"))?;
    if vertices.len() != d + 1 {
        return Err(Error::input(format!(
            "orientation in dimension {d} needs {} vertices, got {}",
            d + 1,
            vertices.len()
        )));
    }
    check_dims(vertices, d)?;
    let hom: Vec<Homogeneous> = vertices.iter().map(|p| p.borrow().homogeneous()).collect();
    let refs: Vec<&Homogeneous> = hom.iter().collect();
    Ok(orientation_hom(&refs))
}

/// Strict interior containment. Points on the boundary are outside.
pub fn point_in_simplex_interior<P: Borrow<Point>>(p: &Point, vertices: &[P]) -> Result<bool> {
    let sigma = orientation(vertices)?;
    if sigma == Sign::Zero {
        return Err(Error::input("degenerate simplex"));
    }
    check_dims(std::slice::from_ref(p), vertices[0].borrow().dim())?;
    let hom: Vec<Homogeneous> = vertices.iter().map(|v| v.borrow().homogeneous()).collect();
    let ph = p.homogeneous();
    Ok(interior_hom(&ph, &hom.iter().collect::<Vec<_>>(), sigma))
}

/// Containment test on precomputed homogeneous points; `sigma` is the
/// (nonzero) orientation of the simplex.
pub fn interior_hom(p: &Homogeneous, vertices: &[&Homogeneous], sigma: Sign) -> bool {
    let mut rows: Vec<&Homogeneous> = vertices.to_vec();
    for j in 0..vertices.len() {
        rows[j] = p;
        let s = if rows.len() == 3 && p.coords.len() == 2 {
            orient2_hom(rows[0], rows[1], rows[2])
        } else {
            orientation_hom(&rows)
        };
        rows[j] = vertices[j];
        if s != sigma {
            return false;
        }
    }
    true
}

pub fn side_of_hyperplane(h: &Hyperplane, p: &Point) -> Result<Sign> {
    if h.dim() != p.dim() {
        return Err(Error::input(format!(
            "dimension mismatch: hyperplane in {}-space, point in {}-space",
            h.dim(),
            p.dim()
        )));
    }
    Ok(Sign::of_rational(&h.eval(p)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneralPosition {
    Ok,
    /// Lexicographically first index tuple of affinely dependent points.
    Violation(Vec<usize>),
}

impl GeneralPosition {
    pub fn is_ok(&self) -> bool {
        matches!(self, GeneralPosition::Ok)
    }
}

/// No `d+1` points on a common hyperplane.
pub fn general_position_check<P: Borrow<Point>>(points: &[P], d: usize) -> GeneralPosition {
    if points.len() < d + 1 {
        return GeneralPosition::Ok;
    }
    let hom: Vec<Homogeneous> = points.iter().map(|p| p.borrow().homogeneous()).collect();
    for tuple in (0..points.len()).combinations(d + 1) {
        let rows: Vec<&Homogeneous> = tuple.iter().map(|&i| &hom[i]).collect();
        if orientation_hom(&rows) == Sign::Zero {
            return GeneralPosition::Violation(tuple);
        }
    }
    GeneralPosition::Ok
}

/// Affine functional `x ↦ det(rows with row j replaced by (x, 1))`,
/// returned as `(coefficients, constant)`.
pub fn facet_functional<P: Borrow<Point>>(vertices: &[P], j: usize) -> (Vec<Rational>, Rational) {
    let d = vertices[0].borrow().dim();
    let n = d + 1;
    let full: Vec<Vec<Rational>> = vertices
        .iter()
        .map(|v| {
            let mut row = v.borrow().coords().to_vec();
            row.push(Rational::one());
            row
        })
        .collect();
    // Cofactor expansion along row j.
    let mut coeffs = Vec::with_capacity(n);
    for col in 0..n {
        let minor: Vec<Vec<Rational>> = full
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != j)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut cof = det_rational(minor);
        if (j + col) % 2 == 1 {
            cof = -cof;
        }
        coeffs.push(cof);
    }
    let constant = coeffs.pop().unwrap();
    (coeffs, constant)
}

/// Barycentric coordinates of `p` relative to a nondegenerate simplex,
/// by solving the linear system directly.
pub fn barycentric<P: Borrow<Point>>(p: &Point, vertices: &[P]) -> Option<Vec<Rational>> {
    let d = p.dim();
    let n = d + 1;
    // Columns are (v_i, 1); unknowns are the weights.
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r < d {
                        vertices[c].borrow().coords()[r].clone()
                    } else {
                        Rational::one()
                    }
                })
                .collect()
        })
        .collect();
    let mut rhs: Vec<Rational> = p.coords().iter().cloned().chain([Rational::one()]).collect();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, pivot);
        rhs.swap(k, pivot);
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let v = &m[k][j] * &f;
                m[i][j] -= v;
            }
            let v = &rhs[k] * &f;
            rhs[i] -= v;
        }
    }
    Some((0..n).map(|k| &rhs[k] / &m[k][k]).collect())
}

pub fn all_positive(values: &[Rational]) -> bool {
    values.iter().all(|v| v.is_positive())
}
