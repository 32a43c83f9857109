//! Rainbow simplicial depth: exact counting at a point, deepest-point
//! search, and the constant formulas that bound the deepest point.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ColoredConfiguration;
use crate::error::{Error, Result};
use crate::geometry::{interior_hom, orient2_hom, orientation_hom, Homogeneous, Point, Sign};
use crate::rational::Rational;

/// Constants driving the existence argument, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantsBundle {
    pub d: usize,
    pub n: usize,
    /// `1 / (5d)^(d^2)`
    pub alpha: Rational,
    /// `alpha / (d+1)`
    pub beta: Rational,
    /// `1 / 2^(d * 2^d)`
    pub epsilon: Rational,
    /// Number of rainbow simplices, `n^(d+1)`.
    pub big_n: BigInt,
}

pub fn theoretical_constants(d: usize, n: usize) -> Result<ConstantsBundle> {
    if d == 0 || n == 0 {
        return Err(Error::input("constants need d >= 1 and n >= 1"));
    }
    let alpha = Rational::new(BigInt::one(), Pow::pow(BigInt::from(5 * d), (d * d) as u32));
    let beta = &alpha / Rational::from_integer(BigInt::from(d + 1));
    let eps_exp = d
        .checked_mul(1usize.checked_shl(d as u32).ok_or_else(|| Error::input("dimension too large"))?)
        .ok_or_else(|| Error::input("dimension too large"))?;
    let epsilon = Rational::new(BigInt::one(), Pow::pow(BigInt::from(2), eps_exp as u32));
    let big_n = Pow::pow(BigInt::from(n), (d + 1) as u32);
    Ok(ConstantsBundle {
        d,
        n,
        alpha,
        beta,
        epsilon,
        big_n,
    })
}

pub fn binomial(n: &BigInt, k: u64) -> BigInt {
    if n.is_negative() || BigInt::from(k) > *n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// Both sides of the counting inequality that feeds the fractional Helly
/// step. Diagnostic only: the inequality is asymptotic in `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingBound {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

pub fn counting_bound_diagnostic(d: usize, n: usize) -> Option<CountingBound> {
    let consts = theoretical_constants(d, n).ok()?;
    let e = (d + 1) as u32;
    let num = Pow::pow(binomial(&BigInt::from(n), 4 * d as u64), e);
    let den = Pow::pow(binomial(&BigInt::from(n as i64 - d as i64 - 1), 3 * d as u64 - 1), e);
    if den.is_zero() {
        return None;
    }
    let lhs = Rational::new(num, den);
    let rhs = &consts.alpha * Rational::from_integer(binomial(&consts.big_n, (d + 1) as u64));
    let holds = lhs > rhs;
    Some(CountingBound { lhs, rhs, holds })
}

/// All rainbow index tuples (one local index per color), lexicographic.
pub fn rainbow_tuples(n: usize, colors: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..colors).map(|_| 0..n).multi_cartesian_product()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowDepth {
    pub count: usize,
    /// Local index per color for every rainbow simplex strictly containing the point.
    pub tuples: Vec<Vec<usize>>,
}

/// Precomputed homogeneous data for repeated depth queries.
pub(crate) struct DepthIndex {
    n: usize,
    d: usize,
    hom: Vec<Vec<Homogeneous>>,
    /// Orientation of every rainbow tuple, in `rainbow_tuples` order.
    sigma: Vec<Sign>,
}

impl DepthIndex {
    pub(crate) fn new(cfg: &ColoredConfiguration) -> Self {
        let hom: Vec<Vec<Homogeneous>> = cfg
            .colors()
            .iter()
            .map(|class| class.iter().map(Point::homogeneous).collect())
            .collect();
        let sigma = rainbow_tuples(cfg.n(), cfg.num_colors())
            .map(|t| {
                let rows: Vec<&Homogeneous> = t.iter().enumerate().map(|(c, &i)| &hom[c][i]).collect();
                orientation_hom(&rows)
            })
            .collect();
        DepthIndex {
            n: cfg.n(),
            d: cfg.dimension(),
            hom,
            sigma,
        }
    }

    fn vertices(&self, tuple: &[usize]) -> Vec<&Homogeneous> {
        tuple.iter().enumerate().map(|(c, &i)| &self.hom[c][i]).collect()
    }

    /// True if `p` lies on a hyperplane spanned by `d` points of pairwise
    /// distinct colors (a facet hyperplane of some rainbow simplex).
    pub(crate) fn on_facet_hyperplane(&self, p: &Homogeneous) -> Option<Vec<(usize, usize)>> {
        for colors in (0..self.d + 1).combinations(self.d) {
            for idx in (0..self.d).map(|_| 0..self.n).multi_cartesian_product() {
                let mut rows: Vec<&Homogeneous> =
                    colors.iter().zip(&idx).map(|(&c, &i)| &self.hom[c][i]).collect();
                rows.push(p);
                if orientation_hom(&rows) == Sign::Zero {
                    return Some(colors.iter().copied().zip(idx).collect());
                }
            }
        }
        None
    }

    /// True if `p` lies on any hyperplane spanned by `d` input points.
    pub(crate) fn on_any_spanned_hyperplane(&self, p: &Homogeneous) -> bool {
        let all: Vec<&Homogeneous> = self.hom.iter().flatten().collect();
        (0..all.len()).combinations(self.d).any(|subset| {
            let mut rows: Vec<&Homogeneous> = subset.iter().map(|&i| all[i]).collect();
            rows.push(p);
            orientation_hom(&rows) == Sign::Zero
        })
    }

    pub(crate) fn count(&self, p: &Homogeneous) -> usize {
        rainbow_tuples(self.n, self.d + 1)
            .zip(&self.sigma)
            .filter(|(t, &s)| s != Sign::Zero && interior_hom(p, &self.vertices(t), s))
            .count()
    }

    fn containing(&self, p: &Homogeneous) -> Vec<Vec<usize>> {
        rainbow_tuples(self.n, self.d + 1)
            .zip(&self.sigma)
            .filter(|(t, &s)| s != Sign::Zero && interior_hom(p, &self.vertices(t), s))
            .map(|(t, _)| t)
            .collect()
    }
}

/// Exact rainbow depth of `p`: every rainbow simplex is tested for strict
/// interior containment.
pub fn rainbow_depth_at(cfg: &ColoredConfiguration, p: &Point) -> Result<RainbowDepth> {
    if p.dim() != cfg.dimension() {
        return Err(Error::input(format!(
            "point has dimension {}, configuration has {}",
            p.dim(),
            cfg.dimension()
        )));
    }
    let index = DepthIndex::new(cfg);
    let ph = p.homogeneous();
    if let Some(witness) = index.on_facet_hyperplane(&ph) {
        return Err(Error::Ambiguous(format!(
            "{p} is on the hyperplane spanned by (color, index) {witness:?}"
        )));
    }
    let tuples = index.containing(&ph);
    Ok(RainbowDepth {
        count: tuples.len(),
        tuples,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum DepthStrategy {
    /// Planar only: one certified point per cell of the line arrangement.
    ExactArrangement,
    /// Any dimension: rainbow centroids plus seeded random points.
    CandidateSampling {
        centroid_budget: usize,
        random_points: usize,
        seed: u64,
    },
}

impl DepthStrategy {
    pub fn sampling(seed: u64) -> Self {
        DepthStrategy::CandidateSampling {
            centroid_budget: 20_000,
            random_points: 1_000,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthResult {
    pub witness: Point,
    pub depth: usize,
    pub candidates_examined: usize,
}

pub fn deepest_point(cfg: &ColoredConfiguration, strategy: &DepthStrategy) -> Result<DepthResult> {
    match strategy {
        DepthStrategy::ExactArrangement => {
            if cfg.dimension() != 2 {
                return Err(Error::UnsupportedDimension(format!(
                    "exact arrangement search needs d = 2, got d = {}",
                    cfg.dimension()
                )));
            }
            arrangement::deepest(cfg)
        }
        DepthStrategy::CandidateSampling {
            centroid_budget,
            random_points,
            seed,
        } => sample_deepest(cfg, *centroid_budget, *random_points, *seed),
    }
}

fn sample_deepest(
    cfg: &ColoredConfiguration,
    centroid_budget: usize,
    random_points: usize,
    seed: u64,
) -> Result<DepthResult> {
    let index = DepthIndex::new(cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cfg.n();
    let k = cfg.num_colors();
    let total = n.checked_pow(k as u32).unwrap_or(usize::MAX);
    let mut candidates: Vec<Point> = Vec::new();
    let centroid_of = |t: &[usize]| {
        let verts: Vec<&Point> = t.iter().enumerate().map(|(c, &i)| cfg.point(c, i)).collect();
        Point::centroid(&verts)
    };
    if total <= centroid_budget {
        candidates.extend(rainbow_tuples(n, k).map(|t| centroid_of(&t)));
    } else {
        for _ in 0..centroid_budget {
            let t: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
            candidates.push(centroid_of(&t));
        }
    }
    let d = cfg.dimension();
    let all = cfg.all_points();
    let (lo, hi): (Vec<Rational>, Vec<Rational>) = (0..d)
        .map(|axis| {
            let vals = all.iter().map(|p| &p.coords()[axis]);
            (vals.clone().min().unwrap().clone(), vals.max().unwrap().clone())
        })
        .unzip();
    const GRID: i64 = 1 << 20;
    for _ in 0..random_points {
        let coords = (0..d)
            .map(|axis| {
                let f = Rational::new(BigInt::from(rng.random_range(1..GRID)), BigInt::from(GRID));
                &lo[axis] + (&hi[axis] - &lo[axis]) * f
            })
            .collect();
        candidates.push(Point::new(coords));
    }
    let examined = candidates.len();
    let best = candidates
        .into_par_iter()
        .filter_map(|p| {
            let h = p.homogeneous();
            if index.on_any_spanned_hyperplane(&h) {
                return None;
            }
            Some((index.count(&h), p))
        })
        .reduce_with(pick_deeper);
    match best {
        Some((depth, witness)) => Ok(DepthResult {
            witness,
            depth,
            candidates_examined: examined,
        }),
        None => Err(Error::Budget("no candidate avoided the spanned hyperplanes".into())),
    }
}

/// Larger depth wins; ties go to the lexicographically smaller point.
fn pick_deeper(a: (usize, Point), b: (usize, Point)) -> (usize, Point) {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    }
}

/// Exhaustive planar search over the arrangement of all lines through two
/// input points.
///
/// Every cell of the arrangement has an edge on some line, so walking each
/// bichromatic line on both sides visits a point of every cell where the
/// rainbow depth can change. Along one line the sign of every other line's
/// functional only flips at its crossing, so containment reduces to
/// comparing crossing ranks.
mod arrangement {
    use super::*;

    struct Walk {
        best: usize,
        /// (interval index, side) pairs reaching `best`.
        hits: Vec<(usize, i8)>,
        params: Vec<Rational>,
    }

    enum LineSign {
        Constant(i8),
        /// Sign is `-slope` up to and including interval `rank`, `slope` after.
        Crossing { rank: usize, slope: i8 },
    }

    fn det3(a: &Homogeneous, b: &Homogeneous, c: &Homogeneous) -> BigInt {
        let (ax, ay, aw) = (&a.coords[0], &a.coords[1], &a.weight);
        let (bx, by, bw) = (&b.coords[0], &b.coords[1], &b.weight);
        let (cx, cy, cw) = (&c.coords[0], &c.coords[1], &c.weight);
        ax * (by * cw - bw * cy) - ay * (bx * cw - bw * cx) + aw * (bx * cy - by * cx)
    }

    fn sgn(v: &BigInt) -> i8 {
        Sign::of_int(v).value()
    }

    pub(super) fn deepest(cfg: &ColoredConfiguration) -> Result<DepthResult> {
        let n = cfg.n();
        let pts: Vec<&Point> = cfg.all_points();
        let hom: Vec<Homogeneous> = pts.iter().map(|p| p.homogeneous()).collect();
        let color = |g: usize| g / n;
        let m = hom.len();
        let pairs: Vec<(usize, usize)> = (0..m).tuple_combinations().collect();
        let pair_id = |u: usize, v: usize| -> usize {
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            // Index of (u, v) in lexicographic tuple_combinations order.
            u * m - u * (u + 1) / 2 + (v - u - 1)
        };
        // Rainbow triangles as global indices with their orientation.
        let triangles: Vec<([usize; 3], i8)> = rainbow_tuples(n, 3)
            .map(|t| {
                let g = [t[0], n + t[1], 2 * n + t[2]];
                (g, orient2_hom(&hom[g[0]], &hom[g[1]], &hom[g[2]]).value())
            })
            .collect();
        let tri_id = |g: [usize; 3]| -> usize { (g[0] * n + (g[1] - n)) * n + (g[2] - 2 * n) };

        let walks: Vec<(usize, Walk)> = pairs
            .par_iter()
            .enumerate()
            .filter(|(_, (a, b))| color(*a) != color(*b))
            .map(|(li, &(a, b))| {
                let (ha, hb) = (&hom[a], &hom[b]);
                // Crossing parameter t along a + t (b - a) for every other line.
                let mut crossings: Vec<(Rational, usize)> = Vec::new();
                let mut fa_fb: Vec<(BigInt, BigInt)> = Vec::with_capacity(pairs.len());
                for (mi, &(u, v)) in pairs.iter().enumerate() {
                    let da = det3(&hom[u], &hom[v], ha);
                    let db = det3(&hom[u], &hom[v], hb);
                    // f(a) = da / (W w_a), f(b) = db / (W w_b)
                    let fa = &da * &hb.weight;
                    let fb = &db * &ha.weight;
                    if mi != li && fa != fb {
                        crossings.push((Rational::new(fa.clone(), &fa - &fb), mi));
                    }
                    fa_fb.push((fa, fb));
                }
                crossings.sort();
                let mut params: Vec<Rational> = Vec::new();
                let mut line_sign: Vec<LineSign> = fa_fb
                    .iter()
                    .map(|(fa, _)| LineSign::Constant(sgn(fa)))
                    .collect();
                let mut by_rank: Vec<Vec<usize>> = Vec::new();
                for (t, mi) in crossings {
                    if params.last() != Some(&t) {
                        params.push(t);
                        by_rank.push(Vec::new());
                    }
                    let rank = params.len() - 1;
                    let (fa, fb) = &fa_fb[mi];
                    line_sign[mi] = LineSign::Crossing {
                        rank,
                        slope: sgn(&(fb - fa)),
                    };
                    by_rank[rank].push(mi);
                }
                let edge_sign = |p: usize, q: usize, interval: usize, side: i8| -> i8 {
                    let id = pair_id(p, q);
                    let canon = if id == li {
                        side
                    } else {
                        match line_sign[id] {
                            LineSign::Constant(s) => s,
                            LineSign::Crossing { rank, slope } => {
                                if interval <= rank {
                                    -slope
                                } else {
                                    slope
                                }
                            }
                        }
                    };
                    if p < q {
                        canon
                    } else {
                        -canon
                    }
                };
                let inside = |tri: &([usize; 3], i8), interval: usize, side: i8| -> bool {
                    let ([u, v, w], s) = *tri;
                    s != 0
                        && edge_sign(u, v, interval, side) == s
                        && edge_sign(v, w, interval, side) == s
                        && edge_sign(w, u, interval, side) == s
                };
                let intervals = params.len() + 1;
                let mut walk = Walk {
                    best: 0,
                    hits: Vec::new(),
                    params: Vec::new(),
                };
                let record = |depth: usize, k: usize, side: i8, walk: &mut Walk| {
                    if depth > walk.best || walk.hits.is_empty() {
                        walk.best = depth;
                        walk.hits.clear();
                    }
                    if depth == walk.best {
                        walk.hits.push((k, side));
                    }
                };
                for side in [1i8, -1] {
                    let mut depth = triangles.iter().filter(|t| inside(t, 0, side)).count();
                    record(depth, 0, side, &mut walk);
                    for k in 1..intervals {
                        let mut affected: Vec<usize> = Vec::new();
                        for &mi in &by_rank[k - 1] {
                            let (u, v) = pairs[mi];
                            let (cu, cv) = (color(u), color(v));
                            if cu == cv {
                                continue;
                            }
                            let third = 3 - cu - cv;
                            for w in third * n..(third + 1) * n {
                                let mut g = [u, v, w];
                                g.sort_by_key(|&x| color(x));
                                affected.push(tri_id(g));
                            }
                        }
                        affected.sort_unstable();
                        affected.dedup();
                        for id in affected {
                            let tri = &triangles[id];
                            let before = inside(tri, k - 1, side);
                            let after = inside(tri, k, side);
                            if after && !before {
                                depth += 1;
                            } else if before && !after {
                                depth -= 1;
                            }
                        }
                        record(depth, k, side, &mut walk);
                    }
                }
                walk.params = params;
                (li, walk)
            })
            .collect();

        let best = walks.iter().map(|(_, w)| w.best).max().unwrap_or(0);
        let pts_ref = &pts;
        let pairs_ref = &pairs;
        let witness = walks
            .par_iter()
            .filter(|(_, w)| w.best == best)
            .flat_map_iter(|(li, w)| {
                let (a, b) = pairs_ref[*li];
                w.hits.iter().map(move |&(k, side)| {
                    cell_witness(pts_ref, pairs_ref, *li, pts_ref[a], pts_ref[b], &w.params, k, side)
                })
            })
            .reduce_with(|x, y| if x <= y { x } else { y })
            .ok_or_else(|| Error::input("configuration has no bichromatic line"))?;

        let index = DepthIndex::new(cfg);
        let wh = witness.homogeneous();
        debug_assert!(!index.on_any_spanned_hyperplane(&wh));
        let depth = index.count(&wh);
        debug_assert_eq!(depth, best);
        let candidates = walks.iter().map(|(_, w)| 2 * (w.params.len() + 1)).sum();
        Ok(DepthResult {
            witness,
            depth,
            candidates_examined: candidates,
        })
    }

    /// A rational point strictly inside the cell adjacent to interval `k` of
    /// line `a -> b`, on the left (`side = 1`) or right (`side = -1`).
    #[allow(clippy::too_many_arguments)]
    fn cell_witness(
        pts: &[&Point],
        pairs: &[(usize, usize)],
        li: usize,
        a: &Point,
        b: &Point,
        params: &[Rational],
        k: usize,
        side: i8,
    ) -> Point {
        let one = Rational::one();
        let t = if params.is_empty() {
            Rational::new(BigInt::one(), BigInt::from(2))
        } else if k == 0 {
            &params[0] - &one
        } else if k == params.len() {
            &params[k - 1] + &one
        } else {
            (&params[k - 1] + &params[k]) / Rational::from_integer(BigInt::from(2))
        };
        let dir = b.sub(a);
        let mid = a.add(&dir.scale(&t));
        let (dx, dy) = (&dir.coords()[0], &dir.coords()[1]);
        let s = Rational::from_integer(BigInt::from(side));
        let push = Point::new(vec![-dy * &s, dx * &s]);
        // Stay short of the first line met by the ray mid + tau * push.
        let mut limit: Option<Rational> = None;
        for (mi, &(u, v)) in pairs.iter().enumerate() {
            if mi == li {
                continue;
            }
            let (pu, pv) = (pts[u], pts[v]);
            let e = pv.sub(pu);
            let normal = [-e.coords()[1].clone(), e.coords()[0].clone()];
            let at_mid = mid.sub(pu).dot(&normal);
            let rate = push.dot(&normal);
            if rate.is_zero() {
                continue;
            }
            let tau = -at_mid / rate;
            if tau.is_positive() && limit.as_ref().is_none_or(|l| tau < *l) {
                limit = Some(tau);
            }
        }
        let tau = limit.map_or(one, |l| l / Rational::from_integer(BigInt::from(2)));
        mid.add(&push.scale(&tau))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn cfg(colors: Vec<Vec<(i64, i64)>>) -> ColoredConfiguration {
        ColoredConfiguration::new(
            2,
            colors
                .into_iter()
                .map(|c| c.into_iter().map(|(x, y)| Point::from_ints(&[x, y])).collect())
                .collect(),
        )
        .unwrap()
    }

    pub(crate) fn hexagon() -> ColoredConfiguration {
        // Affinely regular hexagon v0..v5, color i = {v_i, v_{i+3}}.
        cfg(vec![
            vec![(1, 0), (-1, 0)],
            vec![(1, 1), (-1, -1)],
            vec![(0, 1), (0, -1)],
        ])
    }

    #[test]
    fn theoretical_constant_values() {
        let c = theoretical_constants(2, 5).unwrap();
        assert_eq!(c.alpha, rat(1, 10_000));
        assert_eq!(c.epsilon, rat(1, 256));
        assert_eq!(c.beta, rat(1, 30_000));
        assert_eq!(c.big_n, BigInt::from(125));
        let c = theoretical_constants(1, 3).unwrap();
        assert_eq!((c.alpha, c.beta, c.epsilon), (rat(1, 5), rat(1, 10), rat(1, 4)));
        for d in 1..6 {
            let c = theoretical_constants(d, 2).unwrap();
            assert!(c.epsilon < rat(1, 2) && c.epsilon.is_positive());
            assert!(c.alpha.is_positive() && c.beta.is_positive());
        }
        assert!(theoretical_constants(0, 3).is_err());
    }

    #[test]
    fn counting_bound_is_reported_not_asserted() {
        assert!(counting_bound_diagnostic(2, 5).is_none());
        let diag = counting_bound_diagnostic(1, 6).unwrap();
        // C(6,4)^2 / C(4,2)^2 = 225/36 against (1/5) C(36, 2).
        assert_eq!(diag.lhs, rat(225, 36));
        assert_eq!(diag.rhs, rat(630, 5));
        assert!(!diag.holds);
    }

    #[test]
    fn triangle_depth() {
        let c = cfg(vec![vec![(0, 0)], vec![(3, 0)], vec![(0, 3)]]);
        let inside = rainbow_depth_at(&c, &Point::from_ints(&[1, 1])).unwrap();
        assert_eq!(inside.count, 1);
        assert_eq!(inside.tuples, vec![vec![0, 0, 0]]);
        assert_eq!(rainbow_depth_at(&c, &Point::from_ints(&[50, 50])).unwrap().count, 0);
        let edge = Point::new(vec![rat(3, 2), int(0)]);
        assert!(matches!(rainbow_depth_at(&c, &edge), Err(Error::Ambiguous(_))));
    }

    #[test]
    fn hexagon_center_has_depth_two() {
        let h = hexagon();
        let r = rainbow_depth_at(&h, &Point::from_ints(&[0, 0])).unwrap();
        assert_eq!(r.count, 2);
        // v0 v2 v4 -> (0, 1, 0) by color-local index; v1 v3 v5 -> (1, 0, 1).
        assert_eq!(r.tuples, vec![vec![0, 1, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn exact_search_on_triangle_and_hexagon() {
        let c = cfg(vec![vec![(0, 0)], vec![(3, 0)], vec![(0, 3)]]);
        let r = deepest_point(&c, &DepthStrategy::ExactArrangement).unwrap();
        assert_eq!(r.depth, 1);
        let tri: Vec<&Point> = c.all_points();
        assert!(crate::geometry::point_in_simplex_interior(&r.witness, &tri).unwrap());

        let h = hexagon();
        let r = deepest_point(&h, &DepthStrategy::ExactArrangement).unwrap();
        assert_eq!(r.depth, 2);
        assert_eq!(rainbow_depth_at(&h, &r.witness).unwrap().count, 2);
    }

    #[test]
    fn exact_search_needs_the_plane() {
        let c = ColoredConfiguration::new(
            1,
            vec![vec![Point::from_ints(&[0])], vec![Point::from_ints(&[1])]],
        )
        .unwrap();
        assert!(matches!(
            deepest_point(&c, &DepthStrategy::ExactArrangement),
            Err(Error::UnsupportedDimension(_))
        ));
        let r = deepest_point(&c, &DepthStrategy::sampling(1)).unwrap();
        assert_eq!(r.depth, 1);
    }

    #[test]
    fn sampling_never_beats_exact() {
        for seed in 0..4 {
            let c = crate::config::generate(&crate::config::GeneratorSpec::new(seed, 3, 2)).unwrap();
            let exact = deepest_point(&c, &DepthStrategy::ExactArrangement).unwrap();
            let sampled = deepest_point(
                &c,
                &DepthStrategy::CandidateSampling {
                    centroid_budget: 100,
                    random_points: 50,
                    seed,
                },
            )
            .unwrap();
            assert!(exact.depth >= sampled.depth, "seed {seed}");
            assert_eq!(rainbow_depth_at(&c, &exact.witness).unwrap().count, exact.depth);
            assert_eq!(rainbow_depth_at(&c, &sampled.witness).unwrap().count, sampled.depth);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&BigInt::from(6), 4), BigInt::from(15));
        assert_eq!(binomial(&BigInt::from(3), 5), BigInt::zero());
        assert_eq!(binomial(&BigInt::from(-1), 1), BigInt::zero());
    }
}
