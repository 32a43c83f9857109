//! Partite hypergraphs, dense sub-tuples and the averaging identity.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::{ceil_fraction, compare, compare_log_powers};
use crate::depth::binomial;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Default cap on exhaustive enumerations.
pub const EXHAUSTIVE_GATE: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct PartiteHypergraph {
    part_sizes: Vec<usize>,
    edges: BTreeSet<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    part_sizes: Vec<usize>,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for PartiteHypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        PartiteHypergraph::new(raw.part_sizes, raw.edges)
    }
}

impl From<PartiteHypergraph> for RawHypergraph {
    fn from(h: PartiteHypergraph) -> Self {
        RawHypergraph {
            part_sizes: h.part_sizes,
            edges: h.edges.into_iter().collect(),
        }
    }
}

impl PartiteHypergraph {
    /// Rejects out-of-range indices, wrong arity and duplicate edges.
    pub fn new(part_sizes: Vec<usize>, edges: Vec<Vec<usize>>) -> Result<Self> {
        if part_sizes.len() < 2 {
            return Err(Error::input("a partite hypergraph needs at least two parts"));
        }
        let mut h = PartiteHypergraph {
            part_sizes,
            edges: BTreeSet::new(),
        };
        for e in edges {
            if !h.add_edge(e.clone())? {
                return Err(Error::input(format!("duplicate edge {e:?}")));
            }
        }
        Ok(h)
    }

    pub fn empty(part_sizes: Vec<usize>) -> Result<Self> {
        Self::new(part_sizes, Vec::new())
    }

    pub fn complete(part_sizes: Vec<usize>) -> Result<Self> {
        let edges = part_sizes.iter().map(|&n| 0..n).multi_cartesian_product().collect();
        Self::new(part_sizes, edges)
    }

    /// Inserts an edge; returns false if it was already present.
    pub fn add_edge(&mut self, edge: Vec<usize>) -> Result<bool> {
        if edge.len() != self.part_sizes.len() {
            return Err(Error::input(format!(
                "edge {edge:?} needs one index per part ({} parts)",
                self.part_sizes.len()
            )));
        }
        if let Some(i) = (0..edge.len()).find(|&i| edge[i] >= self.part_sizes[i]) {
            return Err(Error::input(format!("edge {edge:?}: index out of range in part {i}")));
        }
        Ok(self.edges.insert(edge))
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn num_parts(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.edges.iter()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        self.edges.contains(edge)
    }

    pub fn full_tuple(&self) -> SubsetTuple {
        SubsetTuple {
            subsets: self.part_sizes.iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    fn equal_part_size(&self) -> Result<usize> {
        let n = self.part_sizes[0];
        if self.part_sizes.iter().any(|&m| m != n) {
            return Err(Error::input("dense extraction needs parts of equal size"));
        }
        if n == 0 {
            return Err(Error::input("dense extraction needs nonempty parts"));
        }
        Ok(n)
    }
}

/// One index set per part.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubsetTuple {
    pub subsets: Vec<Vec<usize>>,
}

impl SubsetTuple {
    /// Sorts and deduplicates each subset.
    pub fn new(mut subsets: Vec<Vec<usize>>) -> Self {
        for s in &mut subsets {
            s.sort_unstable();
            s.dedup();
        }
        SubsetTuple { subsets }
    }

    /// Common subset size, if all subsets have the same size.
    pub fn common_size(&self) -> Option<usize> {
        let s = self.subsets.first()?.len();
        self.subsets.iter().all(|x| x.len() == s).then_some(s)
    }

    fn validate(&self, h: &PartiteHypergraph) -> Result<()> {
        if self.subsets.len() != h.num_parts() {
            return Err(Error::input(format!(
                "subset tuple has {} sets for {} parts",
                self.subsets.len(),
                h.num_parts()
            )));
        }
        for (i, s) in self.subsets.iter().enumerate() {
            if s.iter().any(|&v| v >= h.part_sizes[i]) {
                return Err(Error::input(format!("subset {i} has an index out of range")));
            }
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::input(format!("subset {i} is not strictly increasing")));
            }
        }
        Ok(())
    }

    fn masks(&self) -> Vec<u128> {
        self.subsets.iter().map(|s| mask_of(s)).collect()
    }
}

fn mask_of(s: &[usize]) -> u128 {
    s.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

fn count_with_masks<'a>(edges: impl Iterator<Item = &'a Vec<usize>>, masks: &[u128]) -> u64 {
    edges
        .filter(|e| e.iter().zip(masks).all(|(&v, m)| m >> v & 1 == 1))
        .count() as u64
}

fn check_mask_width(h: &PartiteHypergraph) -> Result<()> {
    if h.part_sizes.iter().any(|&n| n > 128) {
        return Err(Error::Budget("parts larger than 128 vertices".into()));
    }
    Ok(())
}

/// Number of edges with every coordinate inside the matching subset.
pub fn edge_count(h: &PartiteHypergraph, s: &SubsetTuple) -> Result<u64> {
    s.validate(h)?;
    if h.part_sizes.iter().all(|&n| n <= 128) {
        return Ok(count_with_masks(h.edges(), &s.masks()));
    }
    let sets: Vec<BTreeSet<usize>> = s.subsets.iter().map(|x| x.iter().copied().collect()).collect();
    Ok(h.edges()
        .filter(|e| e.iter().zip(&sets).all(|(v, set)| set.contains(v)))
        .count() as u64)
}

/// Evaluates both sides of the averaging identity by full enumeration.
///
/// The left side is the density `e(S) / Π|S_i|`; the right side averages
/// `e(T) / Π t_i` over all `t_i`-subsets `T_i ⊆ S_i`.
pub fn averaging_identity_check(h: &PartiteHypergraph, s: &SubsetTuple, t: &[usize]) -> Result<bool> {
    s.validate(h)?;
    check_mask_width(h)?;
    if t.len() != s.subsets.len() {
        return Err(Error::input("one subset size per part is required"));
    }
    for (i, (&ti, si)) in t.iter().zip(&s.subsets).enumerate() {
        if ti == 0 || ti > si.len() {
            return Err(Error::input(format!("t[{i}] = {ti} must lie in 1..={}", si.len())));
        }
    }
    let combos: BigInt = t
        .iter()
        .zip(&s.subsets)
        .map(|(&ti, si)| binomial(&BigInt::from(si.len()), ti as u64))
        .product();
    if combos > BigInt::from(EXHAUSTIVE_GATE) {
        return Err(Error::Budget(format!("{combos} subset combinations exceed the gate")));
    }
    let prod_s: u64 = s.subsets.iter().map(|x| x.len() as u64).product();
    let lhs = Rational::new(BigInt::from(edge_count(h, s)?), BigInt::from(prod_s));

    let per_part: Vec<Vec<u128>> = t
        .iter()
        .zip(&s.subsets)
        .map(|(&ti, si)| si.iter().copied().combinations(ti).map(|c| mask_of(&c)).collect())
        .collect();
    let total: u64 = per_part
        .iter()
        .map(|v| 0..v.len())
        .multi_cartesian_product()
        .par_bridge()
        .map(|idx| {
            let masks: Vec<u128> = idx.iter().enumerate().map(|(i, &j)| per_part[i][j]).collect();
            count_with_masks(h.edges(), &masks)
        })
        .sum();
    let prod_t: u64 = t.iter().map(|&x| x as u64).product();
    let rhs = Rational::new(BigInt::from(total), BigInt::from(prod_t) * combos);
    Ok(lhs == rhs)
}

/// The exponent `d + 1 − ε^(2d)` for `d + 1` parts.
pub fn density_exponent(parts: usize, epsilon: &Rational) -> Rational {
    let d = parts as u32 - 1;
    int(parts as i64) - Pow::pow(epsilon, 2 * d)
}

pub(crate) fn check_epsilon(epsilon: &Rational) -> Result<()> {
    if *epsilon <= Rational::zero() || *epsilon >= Rational::new(BigInt::one(), BigInt::from(2)) {
        return Err(Error::input(format!("epsilon {epsilon} must lie in (0, 1/2)")));
    }
    Ok(())
}

/// `e / s^c`, compared exactly and never evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityValue {
    pub edge_count: u64,
    pub size: usize,
    #[serde(with = "crate::rational::as_string")]
    pub exponent: Rational,
}

impl DensityValue {
    pub fn new(edge_count: u64, size: usize, exponent: Rational) -> Self {
        DensityValue {
            edge_count,
            size,
            exponent,
        }
    }

    /// Exact comparison. Panics if the exponents differ.
    pub fn compare(&self, other: &DensityValue) -> Ordering {
        assert_eq!(self.exponent, other.exponent, "density values with different exponents");
        compare(
            self.edge_count,
            self.size as u64,
            other.edge_count,
            other.size as u64,
            &self.exponent,
        )
    }
}

impl PartialOrd for DensityValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.exponent == other.exponent).then(|| self.compare(other))
    }
}

pub fn density_value(h: &PartiteHypergraph, s: &SubsetTuple, epsilon: &Rational) -> Result<DensityValue> {
    check_epsilon(epsilon)?;
    let size = s
        .common_size()
        .filter(|&k| k > 0)
        .ok_or_else(|| Error::input("density needs nonempty subsets of equal size"))?;
    Ok(DensityValue::new(
        edge_count(h, s)?,
        size,
        density_exponent(h.num_parts(), epsilon),
    ))
}

/// Number of tuples visited by exact extraction: `Σ_s C(n, s)^(parts − 1)`.
pub fn exact_search_size(n: usize, parts: usize) -> BigInt {
    (1..=n)
        .map(|s| Pow::pow(binomial(&BigInt::from(n), s as u64), parts as u32 - 1))
        .sum()
}

/// The equal-size tuple of maximum density, ties broken lexicographically.
pub fn extract_dense_exact(h: &PartiteHypergraph, epsilon: &Rational) -> Result<SubsetTuple> {
    let mut ranked = extract_dense_ranked(h, epsilon, 1)?;
    Ok(ranked.remove(0))
}

/// The `keep` best equal-size tuples in decreasing density, ties broken
/// lexicographically.
///
/// All choices for the first `d` parts are enumerated; for each, the last
/// part takes the `s` vertices of largest degree, preferring smaller
/// indices, which is the lexicographically least optimal completion.
pub fn extract_dense_ranked(h: &PartiteHypergraph, epsilon: &Rational, keep: usize) -> Result<Vec<SubsetTuple>> {
    extract_dense_ranked_gated(h, epsilon, keep, EXHAUSTIVE_GATE)
}

/// [`extract_dense_ranked`] with a caller-chosen cap on visited tuples.
pub fn extract_dense_ranked_gated(
    h: &PartiteHypergraph,
    epsilon: &Rational,
    keep: usize,
    gate: u128,
) -> Result<Vec<SubsetTuple>> {
    check_epsilon(epsilon)?;
    let n = h.equal_part_size()?;
    let parts = h.num_parts();
    let work = exact_search_size(n, parts);
    if work > BigInt::from(gate) {
        return Err(Error::Budget(format!(
            "exact extraction would visit {work} tuples; use local search"
        )));
    }
    let keep = keep.max(1);
    let exponent = density_exponent(parts, epsilon);
    let edges: Vec<&Vec<usize>> = h.edges().collect();

    let mut candidates: Vec<(DensityValue, SubsetTuple)> = Vec::new();
    for s in 1..=n {
        let combos: Vec<Vec<usize>> = (0..n).combinations(s).collect();
        let prefixes: Vec<Vec<usize>> = (0..parts - 1)
            .map(|_| 0..combos.len())
            .multi_cartesian_product()
            .collect();
        let mut scored: Vec<(u64, usize, Vec<usize>)> = prefixes
            .par_iter()
            .enumerate()
            .map(|(idx, prefix)| {
                let masks: Vec<u128> = prefix.iter().map(|&c| mask_of(&combos[c])).collect();
                let mut degree = vec![0u64; n];
                for e in &edges {
                    let (last, head) = e.split_last().unwrap();
                    if head.iter().zip(&masks).all(|(&v, m)| m >> v & 1 == 1) {
                        degree[*last] += 1;
                    }
                }
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
                let mut chosen = order[..s].to_vec();
                chosen.sort_unstable();
                let e = chosen.iter().map(|&v| degree[v]).sum();
                (e, idx, chosen)
            })
            .collect();
        scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        scored.truncate(keep);
        for (e, idx, last) in scored {
            let mut subsets: Vec<Vec<usize>> = prefixes[idx].iter().map(|&c| combos[c].clone()).collect();
            subsets.push(last);
            candidates.push((DensityValue::new(e, s, exponent.clone()), SubsetTuple { subsets }));
        }
    }
    candidates.sort_by(|a, b| b.0.compare(&a.0).then_with(|| a.1.cmp(&b.1)));
    candidates.truncate(keep);
    Ok(candidates.into_iter().map(|(_, t)| t).collect())
}

/// Degree of every vertex of `part` against the other subsets of `s`.
fn part_degrees(h: &PartiteHypergraph, masks: &[u128], part: usize) -> Vec<u64> {
    let mut degree = vec![0u64; h.part_sizes[part]];
    for e in h.edges() {
        let inside = e
            .iter()
            .zip(masks)
            .enumerate()
            .all(|(i, (&v, m))| i == part || m >> v & 1 == 1);
        if inside {
            degree[e[part]] += 1;
        }
    }
    degree
}

/// Hill climbing from the full parts.
///
/// Moves are the simultaneous removal of a minimum-degree vertex from every
/// part and single-vertex swaps within a part, tried in a seeded order. Only
/// strict density increases are accepted.
pub fn extract_dense_local(h: &PartiteHypergraph, epsilon: &Rational, seed: u64) -> Result<SubsetTuple> {
    check_epsilon(epsilon)?;
    h.equal_part_size()?;
    check_mask_width(h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = h.full_tuple();
    let mut value = density_value(h, &current, epsilon)?;
    loop {
        let masks = current.masks();
        let s = value.size;
        if s > 1 {
            let shrunk = SubsetTuple {
                subsets: (0..h.num_parts())
                    .map(|i| {
                        let degree = part_degrees(h, &masks, i);
                        let set = &current.subsets[i];
                        let drop = *set
                            .iter()
                            .min_by(|&&a, &&b| degree[a].cmp(&degree[b]).then(a.cmp(&b)))
                            .unwrap();
                        set.iter().copied().filter(|&v| v != drop).collect()
                    })
                    .collect(),
            };
            let v = density_value(h, &shrunk, epsilon)?;
            if v.compare(&value) == Ordering::Greater {
                current = shrunk;
                value = v;
                continue;
            }
        }
        let mut moves: Vec<(usize, usize, usize)> = Vec::new();
        for (i, set) in current.subsets.iter().enumerate() {
            for &out in set {
                for inn in (0..h.part_sizes[i]).filter(|v| masks[i] >> v & 1 == 0) {
                    moves.push((i, out, inn));
                }
            }
        }
        moves.shuffle(&mut rng);
        let degrees: Vec<Vec<u64>> = (0..h.num_parts()).map(|i| part_degrees(h, &masks, i)).collect();
        let improving = moves
            .into_iter()
            .find(|&(i, out, inn)| degrees[i][inn] > degrees[i][out]);
        match improving {
            Some((i, out, inn)) => {
                let set = &mut current.subsets[i];
                set.retain(|&v| v != out);
                set.push(inn);
                set.sort_unstable();
                value = density_value(h, &current, epsilon)?;
            }
            None => return Ok(current),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "counterexample", rename_all = "kebab-case")]
pub enum PropertyII {
    Ok,
    Counterexample(SubsetTuple),
}

impl PropertyII {
    pub fn is_ok(&self) -> bool {
        matches!(self, PropertyII::Ok)
    }
}

fn property_ii_setup(h: &PartiteHypergraph, s: &SubsetTuple, epsilon: &Rational) -> Result<usize> {
    check_epsilon(epsilon)?;
    s.validate(h)?;
    check_mask_width(h)?;
    let size = s
        .common_size()
        .filter(|&k| k > 0)
        .ok_or_else(|| Error::input("property check needs nonempty subsets of equal size"))?;
    Ok(ceil_fraction(epsilon, size).min(size))
}

/// Checks that every choice of `⌈εs⌉` vertices from each subset spans an edge.
/// Returns the lexicographically first empty choice otherwise.
pub fn verify_property_ii(h: &PartiteHypergraph, s: &SubsetTuple, epsilon: &Rational) -> Result<PropertyII> {
    let q = property_ii_setup(h, s, epsilon)?;
    let total: BigInt = s
        .subsets
        .iter()
        .map(|x| binomial(&BigInt::from(x.len()), q as u64))
        .product();
    if total > BigInt::from(EXHAUSTIVE_GATE) {
        return Err(Error::Budget(format!(
            "{total} subset combinations exceed the gate; use sampling"
        )));
    }
    let per_part: Vec<Vec<Vec<usize>>> = s
        .subsets
        .iter()
        .map(|x| x.iter().copied().combinations(q).collect())
        .collect();
    let masks: Vec<Vec<u128>> = per_part
        .iter()
        .map(|v| v.iter().map(|c| mask_of(c)).collect())
        .collect();
    let indices: Vec<Vec<usize>> = per_part
        .iter()
        .map(|v| 0..v.len())
        .multi_cartesian_product()
        .collect();
    let found = indices.par_iter().find_map_first(|idx| {
        let m: Vec<u128> = idx.iter().enumerate().map(|(i, &j)| masks[i][j]).collect();
        let empty = !h.edges().any(|e| e.iter().zip(&m).all(|(&v, mk)| mk >> v & 1 == 1));
        empty.then(|| SubsetTuple {
            subsets: idx.iter().enumerate().map(|(i, &j)| per_part[i][j].clone()).collect(),
        })
    });
    Ok(found.map_or(PropertyII::Ok, PropertyII::Counterexample))
}

/// Random spot check of the same property, for tuples beyond the gate.
pub fn sample_property_ii(
    h: &PartiteHypergraph,
    s: &SubsetTuple,
    epsilon: &Rational,
    samples: usize,
    seed: u64,
) -> Result<PropertyII> {
    let q = property_ii_setup(h, s, epsilon)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let pick = SubsetTuple::new(
            s.subsets
                .iter()
                .map(|x| x.choose_multiple(&mut rng, q).copied().collect())
                .collect(),
        );
        if edge_count(h, &pick)? == 0 {
            return Ok(PropertyII::Counterexample(pick));
        }
    }
    Ok(PropertyII::Ok)
}

/// Edge density `e(S) / Π|S_i|` as an exact rational.
pub fn edge_density(h: &PartiteHypergraph, s: &SubsetTuple) -> Result<Rational> {
    let e = edge_count(h, s)?;
    let prod: u64 = s.subsets.iter().map(|x| x.len() as u64).product();
    if prod == 0 {
        return Err(Error::input("density of an empty subset"));
    }
    Ok(Rational::new(BigInt::from(e), BigInt::from(prod)))
}

/// Size of `s` as a fraction of the part size, for reports.
pub fn size_ratio(h: &PartiteHypergraph, s: &SubsetTuple) -> Option<Rational> {
    let n = *h.part_sizes.first()?;
    let k = s.common_size()?;
    (n > 0).then(|| Rational::new(BigInt::from(k), BigInt::from(n)))
}

/// Checks the size bound `s^(ε^(2d)) ≥ β · n^(ε^(2d))` with `β` the density
/// of the full parts, by raising both sides to the exponent's denominator.
pub fn size_bound_holds(h: &PartiteHypergraph, s: &SubsetTuple, epsilon: &Rational) -> Result<bool> {
    let n = h.equal_part_size()?;
    let k = s
        .common_size()
        .ok_or_else(|| Error::input("size bound needs subsets of equal size"))?;
    let d = h.num_parts() as u32 - 1;
    let beta = edge_density(h, &h.full_tuple())?;
    let delta = Pow::pow(epsilon, 2 * d);
    if beta.is_zero() {
        return Ok(true);
    }
    // (k/n)^δ ≥ β  ⇔  (k/n)^p ≥ β^q for δ = p/q.
    let ratio = Rational::new(BigInt::from(k), BigInt::from(n));
    Ok(compare_log_powers(&ratio, delta.numer(), &beta, delta.denom()) != Ordering::Less)
}
