//! End-to-end search for a point `O` and subsets `Q_i` such that every
//! rainbow simplex on the `Q_i` contains `O` in its interior.
//!
//! Stages: deepest point, hypergraph of rainbow simplices around it, dense
//! equal-size extraction, trimming to a separated family, and an
//! independent brute-force verification.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{ColoredConfiguration, Format};
use crate::depth::{deepest_point, rainbow_depth_at, DepthIndex, DepthStrategy};
use crate::error::{Error, Result};
use crate::geometry::{barycentric, Point};
use crate::hypergraph::{
    check_epsilon, edge_count, extract_dense_local, extract_dense_ranked_gated, exact_search_size,
    PartiteHypergraph, SubsetTuple, EXHAUSTIVE_GATE,
};
use crate::rational::{rat, Rational};
use crate::separation::{is_separated_family, trim_to_separated, Separation, TrimTrace};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtractionMode {
    /// Exhaustive search when within the gate, local search otherwise.
    Exact,
    Local,
}

impl std::str::FromStr for ExtractionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ExtractionMode::Exact),
            "local" => Ok(ExtractionMode::Local),
            other => Err(Error::input(format!("unknown extraction mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineParams {
    #[serde(with = "crate::rational::as_string")]
    pub epsilon: Rational,
    pub depth: DepthStrategy,
    pub mode: ExtractionMode,
    /// Cap on tuples visited by exact extraction.
    pub max_exact: u64,
    /// Extra extraction candidates tried after a failed attempt.
    pub max_retries: usize,
    pub seed: u64,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            epsilon: rat(1, 4),
            depth: DepthStrategy::ExactArrangement,
            mode: ExtractionMode::Exact,
            max_exact: EXHAUSTIVE_GATE as u64,
            max_retries: 8,
            seed: 0,
        }
    }
}

impl PipelineParams {
    /// Uses `ε = 2^-(d·2^d)`.
    pub fn with_theoretical_epsilon(mut self, d: usize) -> Result<Self> {
        self.epsilon = crate::depth::theoretical_constants(d, 1)?.epsilon;
        Ok(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum AttemptOutcome {
    Verified,
    TrimExhausted,
    VerificationFailed { counterexample: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    /// Extracted indices per color.
    pub extracted: Vec<Vec<usize>>,
    pub trim_steps: usize,
    pub outcome: AttemptOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineStats {
    pub depth_candidates: usize,
    pub extraction: ExtractionMode,
    /// Edges of the hypergraph around `O`; equals the depth.
    pub hypergraph_edges: u64,
    pub extracted_size: usize,
    /// Edges induced by the extracted tuple.
    pub extracted_edges: u64,
    /// Edges induced by the final subsets.
    pub trimmed_edges: u64,
    /// Extracted indices per color for the reported attempt.
    pub extracted: Vec<Vec<usize>>,
    pub attempts: Vec<Attempt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub schema_version: u32,
    pub input_hash: String,
    pub params: PipelineParams,
    #[serde(rename = "O")]
    pub o: Point,
    pub depth: usize,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<Point>>,
    #[serde(rename = "Q_indices")]
    pub q_indices: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    #[serde(with = "rational_list")]
    pub ratios: Vec<Rational>,
    pub trace: TrimTrace,
    pub stats: PipelineStats,
    pub verified: bool,
}

mod rational_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl ResultBundle {
    pub fn min_ratio(&self) -> Option<&Rational> {
        self.ratios.iter().min()
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let bundle: ResultBundle =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("report: {e}")))?;
        if bundle.schema_version != SCHEMA_VERSION {
            return Err(Error::input(format!(
                "unsupported report schema version {}",
                bundle.schema_version
            )));
        }
        Ok(bundle)
    }
}

/// SHA-256 of the canonical JSON form of the configuration.
pub fn input_hash(cfg: &ColoredConfiguration) -> String {
    hex::encode(Sha256::digest(cfg.save(Format::Json)))
}

/// Hypergraph on the color classes whose edges are the rainbow simplices
/// containing `o` in their interior.
pub fn build_hypergraph(cfg: &ColoredConfiguration, o: &Point) -> Result<PartiteHypergraph> {
    let depth = rainbow_depth_at(cfg, o)?;
    PartiteHypergraph::new(vec![cfg.n(); cfg.num_colors()], depth.tuples)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// Positions within the `Q_i` of a rainbow simplex missing `O`.
    Counterexample(Vec<usize>),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

fn check_q(cfg: &ColoredConfiguration, o: &Point, q: &[Vec<Point>]) -> Result<()> {
    if o.dim() != cfg.dimension() {
        return Err(Error::input("O has the wrong dimension"));
    }
    if q.len() != cfg.num_colors() {
        return Err(Error::input(format!(
            "expected {} subsets, got {}",
            cfg.num_colors(),
            q.len()
        )));
    }
    for (c, set) in q.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::input(format!("Q_{c} is empty")));
        }
        if let Some(p) = set.iter().find(|p| !cfg.color(c).contains(p)) {
            return Err(Error::input(format!("{p} is not a point of color {c}")));
        }
    }
    Ok(())
}

/// Brute-force check that every rainbow simplex on the `Q_i` strictly
/// contains `o`, by solving for barycentric coordinates.
pub fn verify_certificate(cfg: &ColoredConfiguration, o: &Point, q: &[Vec<Point>]) -> Result<Verdict> {
    check_q(cfg, o, q)?;
    for tuple in q.iter().map(|s| 0..s.len()).multi_cartesian_product() {
        let verts: Vec<&Point> = tuple.iter().enumerate().map(|(c, &i)| &q[c][i]).collect();
        match barycentric(o, &verts) {
            None => return Ok(Verdict::Counterexample(tuple)),
            Some(w) => {
                if w.iter().any(Zero::is_zero) {
                    return Err(Error::Ambiguous(format!(
                        "{o} lies on a facet of the simplex {tuple:?}"
                    )));
                }
                if w.iter().any(|x| x < &Rational::zero()) {
                    return Ok(Verdict::Counterexample(tuple));
                }
            }
        }
    }
    Ok(Verdict::Ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dichotomy {
    All,
    None,
    Mixed,
}

/// Classifies the rainbow simplices on the `Q_i` by whether they contain
/// `o`. Requires `{o}` and the hulls of the `Q_i` to form a separated family.
pub fn all_or_none_check(o: &Point, q: &[Vec<Point>]) -> Result<Dichotomy> {
    let d = o.dim();
    let bodies: Vec<Vec<Point>> = std::iter::once(vec![o.clone()]).chain(q.iter().cloned()).collect();
    if let Separation::Failing(w) = is_separated_family(&bodies, d)? {
        return Err(Error::input(format!(
            "precondition failed: bodies {:?} split {:?} are not separated",
            w.tuple, w.group
        )));
    }
    let (mut inside, mut outside) = (false, false);
    for tuple in q.iter().map(|s| 0..s.len()).multi_cartesian_product() {
        let verts: Vec<&Point> = tuple.iter().enumerate().map(|(c, &i)| &q[c][i]).collect();
        if crate::geometry::point_in_simplex_interior(o, &verts)? {
            inside = true;
        } else {
            outside = true;
        }
    }
    Ok(match (inside, outside) {
        (true, false) => Dichotomy::All,
        (false, _) => Dichotomy::None,
        (true, true) => Dichotomy::Mixed,
    })
}

fn candidates(
    h: &PartiteHypergraph,
    params: &PipelineParams,
    n: usize,
) -> Result<(ExtractionMode, Vec<SubsetTuple>)> {
    let exact_fits = exact_search_size(n, h.num_parts()) <= BigInt::from(params.max_exact);
    if params.mode == ExtractionMode::Exact && exact_fits {
        let ranked = extract_dense_ranked_gated(h, &params.epsilon, params.max_retries + 1, params.max_exact as u128)?;
        return Ok((ExtractionMode::Exact, ranked));
    }
    let mut out: Vec<SubsetTuple> = Vec::new();
    for k in 0..=params.max_retries as u64 {
        let t = extract_dense_local(h, &params.epsilon, params.seed.wrapping_add(k))?;
        if !out.contains(&t) {
            out.push(t);
        }
    }
    Ok((ExtractionMode::Local, out))
}

/// Runs every stage; deterministic for fixed inputs.
///
/// If trimming empties a set or the result fails verification, the next
/// extraction candidate is tried, up to `max_retries` times. All attempts
/// are listed in the statistics. A bundle with `verified = false` is
/// returned when every attempt that reached verification failed.
pub fn run_pipeline(cfg: &ColoredConfiguration, params: &PipelineParams) -> Result<ResultBundle> {
    check_epsilon(&params.epsilon).map_err(|e| e.at_stage("params"))?;
    if cfg.dimension() != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "the pipeline runs in the plane, got d = {}",
            cfg.dimension()
        ))
        .at_stage("params"));
    }
    let n = cfg.n();

    let deepest = deepest_point(cfg, &params.depth).map_err(|e| e.at_stage("depth"))?;
    let o = deepest.witness;
    if DepthIndex::new(cfg).on_any_spanned_hyperplane(&o.homogeneous()) {
        return Err(Error::Ambiguous(format!("{o} lies on a line through two input points")).at_stage("depth"));
    }

    let h = build_hypergraph(cfg, &o).map_err(|e| e.at_stage("hypergraph"))?;
    if h.num_edges() == 0 {
        return Err(Error::input("no rainbow simplex contains the deepest point").at_stage("hypergraph"));
    }

    let (mode, tuples) = candidates(&h, params, n).map_err(|e| e.at_stage("extract"))?;
    let mut attempts: Vec<Attempt> = Vec::new();
    let mut last_failure: Option<Error> = None;
    let mut unverified: Option<ResultBundle> = None;

    for s in tuples {
        let sets: Vec<Vec<Point>> = s
            .subsets
            .iter()
            .enumerate()
            .map(|(c, idx)| idx.iter().map(|&i| cfg.point(c, i).clone()).collect())
            .collect();
        let trimmed = match trim_to_separated(&sets, &o) {
            Ok(t) => t,
            Err(Error::TrimExhausted { trace }) => {
                attempts.push(Attempt {
                    extracted: s.subsets.clone(),
                    trim_steps: trace.step_count(),
                    outcome: AttemptOutcome::TrimExhausted,
                });
                last_failure = Some(Error::TrimExhausted { trace });
                continue;
            }
            Err(e) => return Err(e.at_stage("trim")),
        };
        let q_indices: Vec<Vec<usize>> = trimmed
            .kept
            .iter()
            .zip(&s.subsets)
            .map(|(k, idx)| k.iter().map(|&j| idx[j]).collect())
            .collect();
        let q = trimmed.points(&sets);
        let verdict = verify_certificate(cfg, &o, &q).map_err(|e| e.at_stage("verify"))?;
        attempts.push(Attempt {
            extracted: s.subsets.clone(),
            trim_steps: trimmed.trace.step_count(),
            outcome: match &verdict {
                Verdict::Ok => AttemptOutcome::Verified,
                Verdict::Counterexample(t) => AttemptOutcome::VerificationFailed {
                    counterexample: t.clone(),
                },
            },
        });
        let q_tuple = SubsetTuple::new(q_indices.clone());
        let bundle = ResultBundle {
            schema_version: SCHEMA_VERSION,
            input_hash: input_hash(cfg),
            params: params.clone(),
            o: o.clone(),
            depth: deepest.depth,
            sizes: q.iter().map(Vec::len).collect(),
            ratios: q.iter().map(|x| rat(x.len() as i64, n as i64)).collect(),
            q,
            q_indices,
            trace: trimmed.trace,
            stats: PipelineStats {
                depth_candidates: deepest.candidates_examined,
                extraction: mode,
                hypergraph_edges: h.num_edges() as u64,
                extracted_size: s.common_size().unwrap_or(0),
                extracted_edges: edge_count(&h, &s).map_err(|e| e.at_stage("extract"))?,
                trimmed_edges: edge_count(&h, &q_tuple).map_err(|e| e.at_stage("trim"))?,
                extracted: s.subsets.clone(),
                attempts: Vec::new(),
            },
            verified: verdict.is_ok(),
        };
        if verdict.is_ok() {
            let mut bundle = bundle;
            bundle.stats.attempts = attempts;
            return Ok(bundle);
        }
        unverified = Some(bundle);
    }
    if let Some(mut bundle) = unverified {
        bundle.stats.attempts = attempts;
        return Ok(bundle);
    }
    match last_failure {
        Some(e) => Err(e.at_stage("trim")),
        None => Err(Error::input("no extraction candidate").at_stage("extract")),
    }
}
