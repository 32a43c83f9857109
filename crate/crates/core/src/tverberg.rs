//! Vertex-disjoint rainbow simplices with a common interior point, found by
//! exhaustive search with exact strict-feasibility tests.

use std::collections::HashSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::depth::rainbow_tuples;
use crate::error::{Error, Result};
use crate::geometry::{
    facet_functional, general_position_check, orient2_hom, orientation, point_in_simplex_interior,
    GeneralPosition, Homogeneous, Point, Sign,
};
use crate::lp::{LinearProgram, LpOutcome};
use crate::rational::Rational;

/// Largest number of rainbow simplices the exhaustive search will enumerate.
pub const MAX_RAINBOW_SIMPLICES: usize = 4096;
/// Planar search with three simplices is refused above this class size.
pub const MAX_PLANAR_CLASS_SIZE: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TverbergCertificate {
    /// One local index per color for each simplex.
    pub simplices: Vec<Vec<usize>>,
    pub witness: Point,
}

/// Rational point strictly inside every simplex, or `None` when the open
/// intersection is empty. Maximizes the smallest facet margin.
pub fn common_interior_point(simplices: &[Vec<Point>]) -> Result<Option<Point>> {
    let Some(first) = simplices.first() else {
        return Err(Error::input("need at least one simplex"));
    };
    let d = first
        .first()
        .map(Point::dim)
        .ok_or_else(|| Error::input("empty simplex"))?;
    let mut lp = LinearProgram::maximize(unit(d + 1, d));
    for simplex in simplices {
        let sigma = orientation(simplex)?;
        if sigma == Sign::Zero {
            return Err(Error::input("degenerate simplex"));
        }
        let s = Rational::from_integer(sigma.value().into());
        for j in 0..=d {
            // sigma * (a . x + c) >= t
            let (a, c) = facet_functional(simplex, j);
            let mut row: Vec<Rational> = a.iter().map(|v| -(v * &s)).collect();
            row.push(Rational::one());
            lp.le(row, c * &s);
        }
    }
    lp.le(unit(d + 1, d), Rational::one());
    match lp.solve() {
        LpOutcome::Optimal { value, mut x } if value.is_positive() => {
            x.truncate(d);
            Ok(Some(Point::new(x)))
        }
        _ => Ok(None),
    }
}

fn unit(len: usize, at: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[at] = Rational::one();
    v
}

fn check_input(sets: &[Vec<Point>], k: usize) -> Result<usize> {
    let d = sets
        .first()
        .and_then(|s| s.first())
        .map(Point::dim)
        .ok_or_else(|| Error::input("empty point sets"))?;
    if sets.len() != d + 1 {
        return Err(Error::input(format!("need {} sets in dimension {d}, got {}", d + 1, sets.len())));
    }
    if k == 0 {
        return Err(Error::input("k must be positive"));
    }
    if let Some((i, s)) = sets.iter().enumerate().find(|(_, s)| s.len() < k) {
        return Err(Error::input(format!("set {i} has {} points, fewer than k = {k}", s.len())));
    }
    if sets.iter().flatten().any(|p| p.dim() != d) {
        return Err(Error::input("dimension mismatch"));
    }
    let mut seen = HashSet::new();
    if let Some(p) = sets.iter().flatten().find(|p| !seen.insert(*p)) {
        return Err(Error::input(format!("sets are not disjoint: {p} repeats")));
    }
    let all: Vec<&Point> = sets.iter().flatten().collect();
    if let GeneralPosition::Violation(t) = general_position_check(&all, d) {
        return Err(Error::input(format!("points {t:?} are not in general position")));
    }
    Ok(d)
}

/// Two planar triangles have intersecting interiors unless some edge line
/// leaves the other triangle on its closed outer side.
fn triangles_overlap(a: &[&Homogeneous; 3], b: &[&Homogeneous; 3]) -> bool {
    let separates = |t: &[&Homogeneous; 3], other: &[&Homogeneous; 3]| {
        (0..3).any(|e| {
            let (p, q, r) = (t[e], t[(e + 1) % 3], t[(e + 2) % 3]);
            let inner = orient2_hom(p, q, r).value();
            other.iter().all(|x| orient2_hom(p, q, x).value() * inner <= 0)
        })
    };
    !separates(a, b) && !separates(b, a)
}

/// Exhaustive search for `k` vertex-disjoint rainbow simplices sharing an
/// interior point. Simplices are enumerated in lexicographic order of their
/// index tuples and the first feasible `k`-set in that order is returned.
pub fn find_disjoint_rainbow_simplices(sets: &[Vec<Point>], k: usize) -> Result<Option<TverbergCertificate>> {
    let d = check_input(sets, k)?;
    let sizes: Vec<usize> = sets.iter().map(Vec::len).collect();
    if d == 2 && k == 3 && sizes.iter().any(|&s| s > MAX_PLANAR_CLASS_SIZE) {
        return Err(Error::Budget(format!(
            "planar search with k = 3 is limited to {MAX_PLANAR_CLASS_SIZE} points per class"
        )));
    }
    let count = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
    if count.is_none_or(|c| c > MAX_RAINBOW_SIMPLICES) {
        return Err(Error::Budget(format!(
            "more than {MAX_RAINBOW_SIMPLICES} rainbow simplices to enumerate"
        )));
    }
    let tuples: Vec<Vec<usize>> = sizes.iter().map(|&s| 0..s).multi_cartesian_product().collect();
    let hom: Vec<Vec<Homogeneous>> = sets
        .iter()
        .map(|s| s.iter().map(Point::homogeneous).collect())
        .collect();
    let vertices = |t: &[usize]| -> Vec<Point> { t.iter().enumerate().map(|(c, &i)| sets[c][i].clone()).collect() };
    let disjoint = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(x, y)| x != y);
    let overlap = |a: usize, b: usize| -> bool {
        if d == 2 {
            let tri = |t: &[usize]| [&hom[0][t[0]], &hom[1][t[1]], &hom[2][t[2]]];
            triangles_overlap(&tri(&tuples[a]), &tri(&tuples[b]))
        } else {
            matches!(
                common_interior_point(&[vertices(&tuples[a]), vertices(&tuples[b])]),
                Ok(Some(_))
            )
        }
    };

    let found = (0..tuples.len()).into_par_iter().find_map_first(|first| {
        let candidates: Vec<usize> = (first + 1..tuples.len())
            .filter(|&j| disjoint(&tuples[first], &tuples[j]) && overlap(first, j))
            .collect();
        let mut chosen = vec![first];
        search(&tuples, &mut chosen, &candidates, k, &disjoint, &overlap, &|chosen: &[usize]| {
            let simplices: Vec<Vec<Point>> = chosen.iter().map(|&i| vertices(&tuples[i])).collect();
            common_witness(&simplices)
        })
        .map(|(chosen, witness)| TverbergCertificate {
            simplices: chosen.iter().map(|&i| tuples[i].clone()).collect(),
            witness,
        })
    });
    Ok(found)
}

fn search(
    tuples: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    candidates: &[usize],
    k: usize,
    disjoint: &(dyn Fn(&[usize], &[usize]) -> bool + Sync),
    overlap: &(dyn Fn(usize, usize) -> bool + Sync),
    feasible: &dyn Fn(&[usize]) -> Option<Point>,
) -> Option<(Vec<usize>, Point)> {
    if chosen.len() == k {
        return feasible(chosen).map(|w| (chosen.clone(), w));
    }
    for (pos, &next) in candidates.iter().enumerate() {
        if chosen.len() + 1 == k {
            chosen.push(next);
            if let Some(w) = feasible(chosen) {
                return Some((chosen.clone(), w));
            }
            chosen.pop();
            continue;
        }
        let rest: Vec<usize> = candidates[pos + 1..]
            .iter()
            .copied()
            .filter(|&j| disjoint(&tuples[next], &tuples[j]) && overlap(next, j))
            .collect();
        if rest.len() + chosen.len() + 1 < k {
            continue;
        }
        chosen.push(next);
        if let Some(hit) = search(tuples, chosen, &rest, k, disjoint, overlap, feasible) {
            return Some(hit);
        }
        chosen.pop();
    }
    None
}

/// Prefers the mean of the simplex centroids when it is a valid witness, so
/// single simplices report their centroid.
fn common_witness(simplices: &[Vec<Point>]) -> Option<Point> {
    let centroids: Vec<Point> = simplices.iter().map(|s| Point::centroid(s)).collect();
    let mean = Point::centroid(&centroids);
    if simplices
        .iter()
        .all(|s| point_in_simplex_interior(&mean, s).unwrap_or(false))
    {
        return Some(mean);
    }
    common_interior_point(simplices).ok().flatten()
}

/// Re-checks a certificate with the basic predicates only.
pub fn verify_tverberg(sets: &[Vec<Point>], cert: &TverbergCertificate) -> Result<()> {
    let colors = sets.len();
    for (i, t) in cert.simplices.iter().enumerate() {
        if t.len() != colors || t.iter().enumerate().any(|(c, &ix)| ix >= sets[c].len()) {
            return Err(Error::input(format!("simplex {i} is not a rainbow tuple")));
        }
        let verts: Vec<&Point> = t.iter().enumerate().map(|(c, &ix)| &sets[c][ix]).collect();
        if !point_in_simplex_interior(&cert.witness, &verts)? {
            return Err(Error::input(format!("witness is not interior to simplex {i}")));
        }
    }
    for c in 0..colors {
        let mut used = HashSet::new();
        if !cert.simplices.iter().all(|t| used.insert(t[c])) {
            return Err(Error::input(format!("simplices share a vertex of color {c}")));
        }
    }
    Ok(())
}

/// Brute-force oracle: does any single rainbow simplex exist at all
/// (i.e. is some point covered)? Used to cross-check empty answers.
pub fn any_rainbow_simplex(sets: &[Vec<Point>]) -> bool {
    let n = sets.iter().map(Vec::len).min().unwrap_or(0);
    rainbow_tuples(n, sets.len()).any(|t| {
        let verts: Vec<&Point> = t.iter().enumerate().map(|(c, &i)| &sets[c][i]).collect();
        orientation(&verts).is_ok_and(|s| s != Sign::Zero)
    })
}
