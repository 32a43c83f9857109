//! Python bindings. Coordinates travel as strings such as `"3/4"`; any
//! Python value whose `str()` is an integer, fraction or decimal is accepted.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use rainbow_core::config::{generate as core_generate, ColoredConfiguration, Format, GeneratorSpec, PointDistribution};
use rainbow_core::depth::{deepest_point as core_deepest_point, rainbow_depth_at, DepthStrategy};
use rainbow_core::error::Error;
use rainbow_core::geometry::Point;
use rainbow_core::hypergraph::{
    density_value, extract_dense_exact, extract_dense_local, verify_property_ii, PartiteHypergraph, PropertyII,
    SubsetTuple,
};
use rainbow_core::pipeline::{
    all_or_none_check, run_pipeline as core_run_pipeline, verify_certificate, Dichotomy, ExtractionMode,
    PipelineParams, ResultBundle, Verdict,
};
use rainbow_core::rational::{format_rational, parse_rational};
use rainbow_core::separation::{is_separated_family as core_is_separated, trim_to_separated};
use rainbow_core::tverberg::{find_disjoint_rainbow_simplices as core_tverberg, verify_tverberg};

create_exception!(rainbow_py, RainbowError, PyException);
create_exception!(rainbow_py, BudgetError, RainbowError);
create_exception!(rainbow_py, AmbiguousError, RainbowError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e.root() {
        Error::Budget(_) | Error::UnsupportedDimension(_) => BudgetError::new_err(msg),
        Error::Ambiguous(_) => AmbiguousError::new_err(msg),
        _ => RainbowError::new_err(msg),
    }
}

fn point(coords: Vec<Bound<'_, PyAny>>) -> PyResult<Point> {
    let parsed = coords
        .iter()
        .map(|c| parse_rational(&c.str()?.to_cow()?).map_err(to_py))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(Point::new(parsed))
}

fn point_set(points: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Vec<Point>> {
    points.into_iter().map(point).collect()
}

fn strings(p: &Point) -> Vec<String> {
    p.to_strings()
}

fn string_sets(sets: &[Vec<Point>]) -> Vec<Vec<Vec<String>>> {
    sets.iter().map(|s| s.iter().map(strings).collect()).collect()
}

/// A colored point configuration in general position.
#[pyclass(module = "rainbow_py", frozen)]
struct Configuration {
    inner: ColoredConfiguration,
}

#[pymethods]
impl Configuration {
    #[new]
    fn new(dimension: usize, colors: Vec<Vec<Vec<Bound<'_, PyAny>>>>) -> PyResult<Self> {
        let colors = colors.into_iter().map(point_set).collect::<PyResult<Vec<_>>>()?;
        let inner = ColoredConfiguration::new(dimension, colors).map_err(to_py)?;
        Ok(Configuration { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = ColoredConfiguration::load(text.as_bytes(), Format::Json).map_err(to_py)?;
        Ok(Configuration { inner })
    }

    #[staticmethod]
    fn from_plain(text: &str) -> PyResult<Self> {
        let inner = ColoredConfiguration::load(text.as_bytes(), Format::Plain).map_err(to_py)?;
        Ok(Configuration { inner })
    }

    fn to_json(&self) -> String {
        String::from_utf8(self.inner.save(Format::Json)).expect("utf-8")
    }

    fn to_plain(&self) -> String {
        String::from_utf8(self.inner.save(Format::Plain)).expect("utf-8")
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn colors(&self) -> Vec<Vec<Vec<String>>> {
        string_sets(self.inner.colors())
    }

    fn __repr__(&self) -> String {
        format!("Configuration(dimension={}, n={})", self.inner.dimension(), self.inner.n())
    }
}

/// Seeded configuration in general position.
#[pyfunction]
#[pyo3(signature = (seed, n, dimension=2, distribution="uniform-box"))]
fn generate(seed: u64, n: usize, dimension: usize, distribution: &str) -> PyResult<Configuration> {
    let dist: PointDistribution = distribution.parse().map_err(to_py)?;
    let spec = GeneratorSpec::new(seed, n, dimension).with_distribution(dist);
    Ok(Configuration {
        inner: core_generate(&spec).map_err(to_py)?,
    })
}

/// Number of rainbow simplices containing `point` in their interior.
#[pyfunction]
fn rainbow_depth(cfg: &Configuration, point_coords: Vec<Bound<'_, PyAny>>) -> PyResult<usize> {
    let p = point(point_coords)?;
    Ok(rainbow_depth_at(&cfg.inner, &p).map_err(to_py)?.count)
}

/// `(witness, depth)` for the deepest point found.
#[pyfunction]
#[pyo3(signature = (cfg, strategy="exact", seed=0))]
fn deepest_point(cfg: &Configuration, strategy: &str, seed: u64) -> PyResult<(Vec<String>, usize)> {
    let strategy = match strategy {
        "exact" => DepthStrategy::ExactArrangement,
        "sampling" => DepthStrategy::sampling(seed),
        other => return Err(RainbowError::new_err(format!("unknown strategy {other:?}"))),
    };
    let r = core_deepest_point(&cfg.inner, &strategy).map_err(to_py)?;
    Ok((strings(&r.witness), r.depth))
}

type Certificate = (Vec<Vec<usize>>, Vec<String>);

/// `k` vertex-disjoint rainbow simplices with a common interior point, as
/// `(simplices, witness)`, or `None`.
#[pyfunction]
#[pyo3(signature = (cfg, k=3))]
fn find_disjoint_rainbow_simplices(cfg: &Configuration, k: usize) -> PyResult<Option<Certificate>> {
    let Some(cert) = core_tverberg(cfg.inner.colors(), k).map_err(to_py)? else {
        return Ok(None);
    };
    verify_tverberg(cfg.inner.colors(), &cert).map_err(to_py)?;
    Ok(Some((cert.simplices, strings(&cert.witness))))
}

/// A partite hypergraph given by part sizes and edges.
#[pyclass(module = "rainbow_py", frozen)]
struct Hypergraph {
    inner: PartiteHypergraph,
}

#[pymethods]
impl Hypergraph {
    #[new]
    fn new(part_sizes: Vec<usize>, edges: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(Hypergraph {
            inner: PartiteHypergraph::new(part_sizes, edges).map_err(to_py)?,
        })
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("serializable")
    }

    /// Densest equal-size subset tuple, by exhaustive or local search.
    #[pyo3(signature = (epsilon="1/4", mode="exact", seed=0))]
    fn extract_dense(&self, epsilon: &str, mode: &str, seed: u64) -> PyResult<Vec<Vec<usize>>> {
        let eps = parse_rational(epsilon).map_err(to_py)?;
        let t = match mode.parse::<ExtractionMode>().map_err(to_py)? {
            ExtractionMode::Exact => extract_dense_exact(&self.inner, &eps),
            ExtractionMode::Local => extract_dense_local(&self.inner, &eps, seed),
        }
        .map_err(to_py)?;
        Ok(t.subsets)
    }

    /// `(edge_count, size)` of a subset tuple; subsets must share one size.
    #[pyo3(signature = (subsets, epsilon="1/4"))]
    fn density(&self, subsets: Vec<Vec<usize>>, epsilon: &str) -> PyResult<(u64, usize)> {
        let eps = parse_rational(epsilon).map_err(to_py)?;
        let v = density_value(&self.inner, &SubsetTuple::new(subsets), &eps).map_err(to_py)?;
        Ok((v.edge_count, v.size))
    }

    /// `None` when every choice of `⌈εs⌉` vertices per subset spans an
    /// edge, otherwise an empty choice.
    #[pyo3(signature = (subsets, epsilon))]
    fn property_ii_counterexample(&self, subsets: Vec<Vec<usize>>, epsilon: &str) -> PyResult<Option<Vec<Vec<usize>>>> {
        let eps = parse_rational(epsilon).map_err(to_py)?;
        match verify_property_ii(&self.inner, &SubsetTuple::new(subsets), &eps).map_err(to_py)? {
            PropertyII::Ok => Ok(None),
            PropertyII::Counterexample(t) => Ok(Some(t.subsets)),
        }
    }
}

/// Whether the hulls of the bodies form a separated family in dimension `d`.
#[pyfunction]
fn is_separated_family(bodies: Vec<Vec<Vec<Bound<'_, PyAny>>>>, d: usize) -> PyResult<bool> {
    let bodies = bodies.into_iter().map(point_set).collect::<PyResult<Vec<_>>>()?;
    Ok(core_is_separated(&bodies, d).map_err(to_py)?.is_separated())
}

/// Surviving indices per set after trimming around `anchor`.
#[pyfunction]
fn trim(sets: Vec<Vec<Vec<Bound<'_, PyAny>>>>, anchor: Vec<Bound<'_, PyAny>>) -> PyResult<(Vec<Vec<usize>>, usize)> {
    let sets = sets.into_iter().map(point_set).collect::<PyResult<Vec<_>>>()?;
    let trimmed = trim_to_separated(&sets, &point(anchor)?).map_err(to_py)?;
    let steps = trimmed.trace.step_count();
    Ok((trimmed.kept, steps))
}

/// Report of a pipeline run.
#[pyclass(module = "rainbow_py", frozen)]
struct Bundle {
    inner: ResultBundle,
}

#[pymethods]
impl Bundle {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Bundle {
            inner: ResultBundle::from_json(text).map_err(to_py)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn verified(&self) -> bool {
        self.inner.verified
    }

    #[getter]
    fn origin(&self) -> Vec<String> {
        strings(&self.inner.o)
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth
    }

    #[getter]
    fn q(&self) -> Vec<Vec<Vec<String>>> {
        string_sets(&self.inner.q)
    }

    #[getter]
    fn q_indices(&self) -> Vec<Vec<usize>> {
        self.inner.q_indices.clone()
    }

    #[getter]
    fn sizes(&self) -> Vec<usize> {
        self.inner.sizes.clone()
    }

    #[getter]
    fn ratios(&self) -> Vec<String> {
        self.inner.ratios.iter().map(format_rational).collect()
    }

    #[getter]
    fn trim_steps(&self) -> usize {
        self.inner.trace.step_count()
    }

    /// `"all"`, `"none"` or `"mixed"` for the rainbow simplices on `Q`.
    fn dichotomy(&self) -> PyResult<&'static str> {
        Ok(match all_or_none_check(&self.inner.o, &self.inner.q).map_err(to_py)? {
            Dichotomy::All => "all",
            Dichotomy::None => "none",
            Dichotomy::Mixed => "mixed",
        })
    }
}

/// Full pipeline on a planar configuration.
#[pyfunction]
#[pyo3(signature = (cfg, epsilon="1/4", mode="exact", max_exact=10_000_000, max_retries=8, seed=0))]
fn run_pipeline(
    py: Python<'_>,
    cfg: &Configuration,
    epsilon: &str,
    mode: &str,
    max_exact: u64,
    max_retries: usize,
    seed: u64,
) -> PyResult<Bundle> {
    let params = PipelineParams {
        epsilon: parse_rational(epsilon).map_err(to_py)?,
        mode: mode.parse().map_err(to_py)?,
        max_exact,
        max_retries,
        seed,
        ..PipelineParams::default()
    };
    let inner = py.detach(|| core_run_pipeline(&cfg.inner, &params)).map_err(to_py)?;
    Ok(Bundle { inner })
}

/// `None` if every rainbow simplex on the bundle's `Q` contains its `O`,
/// otherwise the positions of one that does not.
#[pyfunction]
fn verify(cfg: &Configuration, bundle: &Bundle) -> PyResult<Option<Vec<usize>>> {
    match verify_certificate(&cfg.inner, &bundle.inner.o, &bundle.inner.q).map_err(to_py)? {
        Verdict::Ok => Ok(None),
        Verdict::Counterexample(t) => Ok(Some(t)),
    }
}

#[pymodule]
fn rainbow_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RainbowError", m.py().get_type::<RainbowError>())?;
    m.add("BudgetError", m.py().get_type::<BudgetError>())?;
    m.add("AmbiguousError", m.py().get_type::<AmbiguousError>())?;
    m.add_class::<Configuration>()?;
    m.add_class::<Hypergraph>()?;
    m.add_class::<Bundle>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(rainbow_depth, m)?)?;
    m.add_function(wrap_pyfunction!(deepest_point, m)?)?;
    m.add_function(wrap_pyfunction!(find_disjoint_rainbow_simplices, m)?)?;
    m.add_function(wrap_pyfunction!(is_separated_family, m)?)?;
    m.add_function(wrap_pyfunction!(trim, m)?)?;
    m.add_function(wrap_pyfunction!(run_pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
