//! Separated families of point sets, line transversals, ham-sandwich cuts
//! and the trimming loop that makes a family separated.

use std::cmp::Ordering;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationKind};
use crate::geometry::{orientation, Hyperplane, Point, Sign};
use crate::lp::{LinearProgram, LpOutcome};
use crate::rational::{int, Rational};

fn check_points(sets: &[&[Point]], d: usize) -> Result<()> {
    for (i, s) in sets.iter().enumerate() {
        if s.is_empty() {
            return Err(Error::input(format!("set {i} is empty")));
        }
        if let Some(p) = s.iter().find(|p| p.dim() != d) {
            return Err(Error::input(format!("point {p} is not {d}-dimensional")));
        }
    }
    Ok(())
}

/// A hyperplane with every point of `a` strictly on its negative side and
/// every point of `b` strictly on its positive side, or `None` when the
/// convex hulls meet.
///
/// Solves `max t` subject to `w·a − c + t ≤ 0`, `c − w·b + t ≤ 0`,
/// `|w_k| ≤ 1`, `t ≤ 1`; a strict separator exists iff `t > 0`.
pub fn strictly_separating_hyperplane(a: &[Point], b: &[Point]) -> Result<Option<Hyperplane>> {
    let d = a
        .first()
        .or(b.first())
        .map(Point::dim)
        .ok_or_else(|| Error::input("separation needs nonempty sets"))?;
    check_points(&[a, b], d)?;
    let vars = d + 2;
    let mut objective = vec![Rational::zero(); vars];
    objective[d + 1] = Rational::one();
    let mut lp = LinearProgram::maximize(objective);
    for p in a {
        let mut row: Vec<Rational> = p.coords().to_vec();
        row.push(-Rational::one());
        row.push(Rational::one());
        lp.le(row, Rational::zero());
    }
    for p in b {
        let mut row: Vec<Rational> = p.coords().iter().map(|x| -x).collect();
        row.push(Rational::one());
        row.push(Rational::one());
        lp.le(row, Rational::zero());
    }
    for k in 0..vars {
        if k == d {
            continue;
        }
        let mut row = vec![Rational::zero(); vars];
        row[k] = Rational::one();
        lp.le(row.clone(), Rational::one());
        if k < d {
            row[k] = -Rational::one();
            lp.le(row, Rational::one());
        }
    }
    match lp.solve() {
        LpOutcome::Optimal { value, x } if value.is_positive() => {
            Ok(Some(Hyperplane::new(x[..d].to_vec(), x[d].clone())?))
        }
        _ => Ok(None),
    }
}

/// A `(d+1)`-tuple of bodies and a split of it into two groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationWitness {
    /// Body indices of the tuple, increasing.
    pub tuple: Vec<usize>,
    /// Body indices of the smaller side of the split, increasing.
    pub group: Vec<usize>,
    /// Separator with `group` on its negative side, absent if none exists.
    pub hyperplane: Option<Hyperplane>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Separated,
    Failing(SeparationWitness),
}

impl Separation {
    pub fn is_separated(&self) -> bool {
        matches!(self, Separation::Separated)
    }
}

/// Splits of a `k`-tuple as position masks, one per unordered split.
fn split_masks(k: usize) -> impl Iterator<Item = u32> {
    let full = (1u32 << k) - 1;
    (1..full).filter(move |&m| m < full ^ m)
}

fn split_bodies(tuple: &[usize], mask: u32) -> (Vec<usize>, Vec<usize>) {
    let (g, r): (Vec<_>, Vec<_>) = tuple.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
    (g.into_iter().map(|(_, &b)| b).collect(), r.into_iter().map(|(_, &b)| b).collect())
}

fn gather(bodies: &[Vec<Point>], idx: &[usize]) -> Vec<Point> {
    idx.iter().flat_map(|&i| bodies[i].iter().cloned()).collect()
}

/// Separator for one split of one tuple, `group` on the negative side.
pub fn split_separator(bodies: &[Vec<Point>], tuple: &[usize], group: &[usize]) -> Result<Option<Hyperplane>> {
    let rest: Vec<usize> = tuple.iter().copied().filter(|b| !group.contains(b)).collect();
    strictly_separating_hyperplane(&gather(bodies, group), &gather(bodies, &rest))
}

/// Checks every `(d+1)`-tuple of bodies and each of its splits, reporting
/// the lexicographically first split that cannot be strictly separated.
pub fn is_separated_family(bodies: &[Vec<Point>], d: usize) -> Result<Separation> {
    if bodies.len() < d + 1 {
        return Err(Error::input(format!(
            "a separated family needs at least {} sets, got {}",
            d + 1,
            bodies.len()
        )));
    }
    let refs: Vec<&[Point]> = bodies.iter().map(Vec::as_slice).collect();
    check_points(&refs, d)?;
    let jobs: Vec<(Vec<usize>, u32)> = (0..bodies.len())
        .combinations(d + 1)
        .flat_map(|t| split_masks(d + 1).map(move |m| (t.clone(), m)))
        .collect();
    let failing = jobs
        .par_iter()
        .map(|(tuple, mask)| {
            let (group, rest) = split_bodies(tuple, *mask);
            let sep = strictly_separating_hyperplane(&gather(bodies, &group), &gather(bodies, &rest))?;
            Ok(sep.is_none().then(|| SeparationWitness {
                tuple: tuple.clone(),
                group,
                hyperplane: None,
            }))
        })
        .find_map_first(|r: Result<Option<SeparationWitness>>| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match failing {
        None => Ok(Separation::Separated),
        Some(r) => Ok(Separation::Failing(r?.expect("failing split"))),
    }
}

fn require_planar(d: usize, what: &str) -> Result<()> {
    if d != 2 {
        return Err(Error::UnsupportedDimension(format!("{what} is implemented for d = 2, got d = {d}")));
    }
    Ok(())
}

fn meets_hull(h: &Hyperplane, set: &[Point]) -> bool {
    let signs: Vec<Sign> = set.iter().map(|p| Sign::of_rational(&h.eval(p))).collect();
    signs.iter().any(|&s| s != Sign::Negative) && signs.iter().any(|&s| s != Sign::Positive)
}

/// A line meeting the convex hull of each of three planar sets.
///
/// If such a line exists it can be moved, keeping every hull met, until it
/// passes through two distinct points of the union, so those candidates are
/// exhaustive.
pub fn hyperplane_transversal_exists(sets: &[Vec<Point>]) -> Result<Option<Hyperplane>> {
    let d = sets
        .first()
        .and_then(|s| s.first())
        .map(Point::dim)
        .ok_or_else(|| Error::input("transversal check needs nonempty sets"))?;
    require_planar(d, "exact transversal search")?;
    if sets.len() != d + 1 {
        return Err(Error::input(format!("transversal check expects {} sets", d + 1)));
    }
    let refs: Vec<&[Point]> = sets.iter().map(Vec::as_slice).collect();
    check_points(&refs, d)?;
    let union: Vec<Point> = sets.iter().flatten().cloned().sorted().dedup().collect();
    if union.len() == 1 {
        let p = &union[0];
        return Ok(Some(Hyperplane::new(vec![int(0), int(1)], p.coords()[1].clone())?));
    }
    for (a, b) in union.iter().tuple_combinations() {
        let h = Hyperplane::through(a, b)?;
        if sets.iter().all(|s| meets_hull(&h, s)) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Line through `p` with direction `v`, `v` normalized to the half-turn
/// `[0, π)` so candidates can be ordered by angle.
struct Candidate {
    point: Point,
    dir: [Rational; 2],
}

impl Candidate {
    fn new(point: Point, dir: [Rational; 2]) -> Option<Self> {
        if dir[0].is_zero() && dir[1].is_zero() {
            return None;
        }
        let flip = dir[1].is_negative() || (dir[1].is_zero() && dir[0].is_negative());
        let dir = if flip { [-&dir[0], -&dir[1]] } else { dir };
        Some(Candidate { point, dir })
    }

    fn normal(&self) -> Vec<Rational> {
        vec![-&self.dir[1], self.dir[0].clone()]
    }

    fn line(&self) -> Hyperplane {
        let n = self.normal();
        let offset = self.point.dot(&n);
        Hyperplane::new(n, offset).expect("nonzero direction")
    }

    fn angle_cmp(&self, other: &Candidate) -> Ordering {
        // Both directions lie in [0, π); a positive cross product means
        // `other` is further counterclockwise.
        let cross = &self.dir[0] * &other.dir[1] - &self.dir[1] * &other.dir[0];
        match Sign::of_rational(&cross) {
            Sign::Positive => Ordering::Less,
            Sign::Negative => Ordering::Greater,
            Sign::Zero => {
                let n = self.normal();
                self.point.dot(&n).cmp(&other.point.dot(&n))
            }
        }
    }
}

fn direction(a: &Point, b: &Point) -> [Rational; 2] {
    [&b.coords()[0] - &a.coords()[0], &b.coords()[1] - &a.coords()[1]]
}

/// Counts of points strictly on the negative and positive sides.
pub fn side_counts(h: &Hyperplane, set: &[Point]) -> (usize, usize) {
    set.iter().fold((0, 0), |(neg, pos), p| match Sign::of_rational(&h.eval(p)) {
        Sign::Negative => (neg + 1, pos),
        Sign::Positive => (neg, pos + 1),
        Sign::Zero => (neg, pos),
    })
}

/// Whether each open side of `h` holds at most `⌊|S|/2⌋` points of each set.
pub fn bisects_all(h: &Hyperplane, sets: &[Vec<Point>]) -> bool {
    sets.iter().all(|s| {
        let (neg, pos) = side_counts(h, s);
        neg <= s.len() / 2 && pos <= s.len() / 2
    })
}

/// A line leaving at most `⌊|S_i|/2⌋` points of each set on either open side.
///
/// Without an anchor at most two sets are accepted; with an anchor the line
/// passes through it and bisects at most one set. Candidates are lines
/// through two input points (through the anchor and an input point when
/// anchored) plus the axis-parallel lines through those points, tried in
/// increasing angle and then offset; the first valid one is returned.
pub fn ham_sandwich_cut(sets: &[Vec<Point>], anchor: Option<&Point>) -> Result<Hyperplane> {
    let d = anchor
        .map(Point::dim)
        .or_else(|| sets.iter().flatten().next().map(Point::dim))
        .ok_or_else(|| Error::input("ham-sandwich cut needs at least one point"))?;
    require_planar(d, "ham-sandwich cut")?;
    let limit = if anchor.is_some() { 1 } else { 2 };
    if sets.len() > limit {
        return Err(Error::input(format!(
            "ham-sandwich cut accepts at most {limit} sets here, got {}",
            sets.len()
        )));
    }
    for s in sets {
        if let Some(p) = s.iter().find(|p| p.dim() != d) {
            return Err(Error::input(format!("point {p} is not planar")));
        }
    }
    let pivots: Vec<Point> = match anchor {
        Some(o) => vec![o.clone()],
        None => sets.iter().flatten().cloned().sorted().dedup().collect(),
    };
    let targets: Vec<Point> = sets.iter().flatten().cloned().sorted().dedup().collect();
    let mut candidates: Vec<Candidate> = Vec::new();
    for p in &pivots {
        for axis in [[int(1), int(0)], [int(0), int(1)]] {
            candidates.extend(Candidate::new(p.clone(), axis));
        }
        for q in &targets {
            candidates.extend(Candidate::new(p.clone(), direction(p, q)));
        }
    }
    candidates.sort_by(|a, b| a.angle_cmp(b));
    candidates
        .iter()
        .map(Candidate::line)
        .find(|h| bisects_all(h, sets))
        .ok_or_else(|| Error::input("no bisecting line among the candidates"))
}

/// Orientation of every `(d+1)`-subsequence, in lexicographic index order.
pub fn order_type(points: &[Point]) -> Result<Vec<Sign>> {
    let d = points.first().map(Point::dim).unwrap_or(0);
    (0..points.len())
        .combinations(d + 1)
        .map(|idx| {
            let verts: Vec<&Point> = idx.iter().map(|&i| &points[i]).collect();
            match orientation(&verts)? {
                Sign::Zero => Err(Error::validation(
                    ValidationKind::GeneralPosition,
                    format!("points {idx:?} are degenerate"),
                )),
                s => Ok(s),
            }
        })
        .collect()
}

/// One cut of the trimming loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrimStep {
    /// Failing split that triggered the cut; body 0 is the anchor point and
    /// body `i + 1` is set `i`.
    pub split: SeparationWitness,
    /// Oriented cut; the group holding the last set keeps the positive side.
    pub cut: Hyperplane,
    /// Sets bisected by the cut, as set indices.
    pub bisected: Vec<usize>,
    /// Set whose majority fixes the orientation of the cut.
    pub last: usize,
    /// Discarded points per set, as indices into the input sets.
    pub discarded: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrimTrace {
    pub steps: Vec<TrimStep>,
    pub initial_sizes: Vec<usize>,
    pub final_sizes: Vec<usize>,
}

impl TrimTrace {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }
}

/// Surviving indices per input set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trimmed {
    pub kept: Vec<Vec<usize>>,
    pub trace: TrimTrace,
}

impl Trimmed {
    pub fn points(&self, sets: &[Vec<Point>]) -> Vec<Vec<Point>> {
        self.kept
            .iter()
            .zip(sets)
            .map(|(k, s)| k.iter().map(|&i| s[i].clone()).collect())
            .collect()
    }
}

/// Upper bound on cuts; every cut fixes its split for good, so this is never
/// reached on inputs in general position.
const MAX_TRIM_STEPS: usize = 64;

struct Proposal {
    cut: Hyperplane,
    bisected: Vec<usize>,
    last: usize,
    discarded: Vec<Vec<usize>>,
}

fn propose(
    sets: &[Vec<Point>],
    kept: &[Vec<usize>],
    split: &SeparationWitness,
    cut: Hyperplane,
    bisected: Vec<usize>,
    last: usize,
) -> Proposal {
    // Orient so the last set has at least as many points above as below.
    let (below, above) = kept[last].iter().map(|&j| &sets[last][j]).fold((0, 0), |(b, a), p| match Sign::of_rational(&cut.eval(p)) {
        Sign::Negative => (b + 1, a),
        Sign::Positive => (b, a + 1),
        Sign::Zero => (b, a),
    });
    let cut = if above < below { cut.flipped() } else { cut };
    let last_body = last + 1;
    let upper_group = split.group.contains(&last_body);
    let discarded = (0..sets.len())
        .map(|i| {
            let body = i + 1;
            if !split.tuple.contains(&body) {
                return Vec::new();
            }
            let in_group = split.group.contains(&body);
            // Bodies on the same side as the last set keep the positive side.
            let keep_positive = in_group == upper_group;
            kept[i]
                .iter()
                .copied()
                .filter(|&j| {
                    let s = Sign::of_rational(&cut.eval(&sets[i][j]));
                    if keep_positive { s == Sign::Negative } else { s == Sign::Positive }
                })
                .collect()
        })
        .collect();
    Proposal {
        cut,
        bisected,
        last,
        discarded,
    }
}

/// Discards points until `{anchor}` and the hulls of the sets form a
/// separated family.
///
/// While some split fails, the first failing one in lexicographic order is
/// cut. For tuples without the anchor, the first two sets are bisected and
/// the third is the last set. For tuples with the anchor, the line passes
/// through it and bisects one of the two sets, the other being the last
/// set; both choices are tried and the one that separates the split while
/// discarding fewer points wins. The side holding at least half of the last
/// set is "above": the group holding the last set drops its points below
/// the cut and the other group drops its points above it. Points on the cut
/// and sets outside the tuple are kept.
pub fn trim_to_separated(sets: &[Vec<Point>], anchor: &Point) -> Result<Trimmed> {
    require_planar(anchor.dim(), "trimming")?;
    let refs: Vec<&[Point]> = sets.iter().map(Vec::as_slice).collect();
    check_points(&refs, 2)?;
    if sets.len() != 3 {
        return Err(Error::input(format!("trimming expects 3 sets, got {}", sets.len())));
    }
    let mut kept: Vec<Vec<usize>> = sets.iter().map(|s| (0..s.len()).collect()).collect();
    let mut trace = TrimTrace {
        initial_sizes: sets.iter().map(Vec::len).collect(),
        ..TrimTrace::default()
    };
    let bodies_of = |kept: &[Vec<usize>]| -> Vec<Vec<Point>> {
        std::iter::once(vec![anchor.clone()])
            .chain(kept.iter().zip(sets).map(|(k, s)| k.iter().map(|&j| s[j].clone()).collect()))
            .collect()
    };
    loop {
        let bodies = bodies_of(&kept);
        let witness = match is_separated_family(&bodies, 2)? {
            Separation::Separated => break,
            Separation::Failing(w) => w,
        };
        if trace.steps.len() >= MAX_TRIM_STEPS {
            trace.final_sizes = kept.iter().map(Vec::len).collect();
            return Err(Error::Budget(format!(
                "trimming did not converge within {MAX_TRIM_STEPS} cuts"
            )));
        }
        let members: Vec<usize> = witness.tuple.iter().filter(|&&b| b > 0).map(|b| b - 1).collect();
        let proposals: Vec<Proposal> = if witness.tuple[0] == 0 {
            let (x, y) = (members[0], members[1]);
            [(x, y), (y, x)]
                .into_iter()
                .map(|(bisect, last)| {
                    let cut = ham_sandwich_cut(&[bodies[bisect + 1].clone()], Some(anchor))?;
                    Ok(propose(sets, &kept, &witness, cut, vec![bisect], last))
                })
                .collect::<Result<_>>()?
        } else {
            let cut = ham_sandwich_cut(&[bodies[members[0] + 1].clone(), bodies[members[1] + 1].clone()], None)?;
            vec![propose(sets, &kept, &witness, cut, members[..2].to_vec(), members[2])]
        };
        let mut best: Option<(bool, usize, Proposal)> = None;
        for p in proposals {
            let after: Vec<Vec<usize>> = kept
                .iter()
                .zip(&p.discarded)
                .map(|(k, drop)| k.iter().copied().filter(|j| !drop.contains(j)).collect())
                .collect();
            let fixed = after.iter().all(|k| !k.is_empty())
                && split_separator(&bodies_of(&after), &witness.tuple, &witness.group)?.is_some();
            let loss: usize = p.discarded.iter().map(Vec::len).sum();
            let better = match &best {
                None => true,
                Some((bf, bl, _)) => (fixed && !bf) || (fixed == *bf && loss < *bl),
            };
            if better {
                best = Some((fixed, loss, p));
            }
        }
        let (_, _, step) = best.expect("at least one proposal");
        for (k, drop) in kept.iter_mut().zip(&step.discarded) {
            k.retain(|j| !drop.contains(j));
        }
        trace.steps.push(TrimStep {
            split: witness,
            cut: step.cut,
            bisected: step.bisected,
            last: step.last,
            discarded: step.discarded,
        });
        if kept.iter().any(Vec::is_empty) {
            trace.final_sizes = kept.iter().map(Vec::len).collect();
            return Err(Error::TrimExhausted { trace: Box::new(trace) });
        }
    }
    trace.final_sizes = kept.iter().map(Vec::len).collect();
    Ok(Trimmed { kept, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::from_ints(&[x, y])).collect()
    }

    fn strictly_separates(h: &Hyperplane, a: &[Point], b: &[Point]) -> bool {
        a.iter().all(|p| h.eval(p).is_negative()) && b.iter().all(|p| h.eval(p).is_positive())
    }

    #[test]
    fn separator_examples() {
        let (a, b) = (pts(&[(0, 0)]), pts(&[(1, 0)]));
        let h = strictly_separating_hyperplane(&a, &b).unwrap().unwrap();
        assert!(strictly_separates(&h, &a, &b));
        let a = pts(&[(0, 0), (2, 0)]);
        let b = vec![Point::new(vec![int(1), rat(1, 2)])];
        let h = strictly_separating_hyperplane(&a, &b).unwrap().unwrap();
        assert!(strictly_separates(&h, &a, &b));
        assert!(strictly_separating_hyperplane(&a, &pts(&[(1, 0)])).unwrap().is_none());
    }

    #[test]
    fn family_examples() {
        let tri = vec![pts(&[(0, 0)]), pts(&[(1, 0)]), pts(&[(0, 1)])];
        assert!(is_separated_family(&tri, 2).unwrap().is_separated());
        let line = vec![pts(&[(0, 0)]), pts(&[(1, 0)]), pts(&[(2, 0)])];
        match is_separated_family(&line, 2).unwrap() {
            Separation::Failing(w) => {
                assert_eq!(w.tuple, vec![0, 1, 2]);
                assert_eq!(w.group, vec![1]);
            }
            Separation::Separated => panic!("collinear singletons are not separated"),
        }
        let crossing = vec![pts(&[(0, 0), (2, 2)]), pts(&[(0, 2), (2, 0)]), pts(&[(10, 10)])];
        match is_separated_family(&crossing, 2).unwrap() {
            Separation::Failing(w) => assert_eq!(w.group, vec![0]),
            Separation::Separated => panic!("crossing segments are not separated"),
        }
    }

    #[test]
    fn transversal_examples() {
        let line = vec![pts(&[(0, 0)]), pts(&[(1, 0)]), pts(&[(2, 0)])];
        let h = hyperplane_transversal_exists(&line).unwrap().unwrap();
        assert!(line.iter().flatten().all(|p| h.eval(p).is_zero()));
        let tri = vec![pts(&[(0, 0)]), pts(&[(10, 0)]), pts(&[(5, 10)])];
        assert!(hyperplane_transversal_exists(&tri).unwrap().is_none());
        let segs = vec![pts(&[(0, -1), (0, 1)]), pts(&[(3, -2), (4, 5)]), pts(&[(9, 1), (8, -3)])];
        assert!(hyperplane_transversal_exists(&segs).unwrap().is_some());
        let cube = vec![vec![Point::from_ints(&[0, 0, 0])]; 4];
        assert!(matches!(hyperplane_transversal_exists(&cube), Err(Error::UnsupportedDimension(_))));
    }

    #[test]
    fn ham_sandwich_examples() {
        let sets = vec![pts(&[(0, 0), (0, 2)]), pts(&[(1, 0), (1, 2)])];
        let h = ham_sandwich_cut(&sets, None).unwrap();
        assert!(bisects_all(&h, &sets));
        let row = vec![pts(&[(0, 0), (1, 0), (2, 0), (3, 0)])];
        let anchor = Point::new(vec![rat(3, 2), int(5)]);
        let h = ham_sandwich_cut(&row, Some(&anchor)).unwrap();
        assert!(h.eval(&anchor).is_zero());
        assert!(bisects_all(&h, &row));
        let odd = vec![pts(&[(0, 0), (1, 0), (2, 1)])];
        assert!(bisects_all(&ham_sandwich_cut(&odd, None).unwrap(), &odd));
        assert!(ham_sandwich_cut(&[odd[0].clone(), odd[0].clone()], Some(&anchor)).is_err());
    }

    #[test]
    fn order_type_examples() {
        assert_eq!(order_type(&pts(&[(0, 0), (1, 0), (0, 1)])).unwrap(), vec![Sign::Positive]);
        let square = order_type(&pts(&[(0, 0), (1, 0), (0, 1), (1, 1)])).unwrap();
        assert_eq!(
            square,
            vec![Sign::Positive, Sign::Positive, Sign::Negative, Sign::Negative]
        );
        assert!(order_type(&pts(&[(0, 0), (1, 1), (2, 2)])).is_err());
    }

    #[test]
    fn trimming_keeps_separated_input() {
        let sets = vec![pts(&[(10, 0), (11, 1)]), pts(&[(-5, 9), (-6, 10)]), pts(&[(-5, -9), (-6, -8)])];
        let t = trim_to_separated(&sets, &Point::from_ints(&[0, 0])).unwrap();
        assert_eq!(t.trace.step_count(), 0);
        assert_eq!(t.kept, vec![vec![0, 1]; 3]);
    }
}
