use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use rainbow_core::config::{generate, ColoredConfiguration, Format, GeneratorSpec, PointDistribution};
use rainbow_core::depth::{deepest_point, DepthStrategy};
use rainbow_core::error::{Error, Result};
use rainbow_core::geometry::Point;
use rainbow_core::hypergraph::{
    density_value, extract_dense_exact, extract_dense_local, sample_property_ii, verify_property_ii,
    PartiteHypergraph, SubsetTuple,
};
use rainbow_core::pipeline::{
    build_hypergraph, input_hash, run_pipeline, verify_certificate, ExtractionMode, PipelineParams,
    ResultBundle, Verdict,
};
use rainbow_core::rational::{parse_rational, Rational};
use rainbow_core::separation::trim_to_separated;
use rainbow_core::svg::render_svg;
use rainbow_core::tverberg::{find_disjoint_rainbow_simplices, verify_tverberg};

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Find a point inside every rainbow simplex of large color subsets")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input file (configuration, hypergraph or trimming state).
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Rational such as `1/4`, or `theoretical` for `2^-(d 2^d)`.
    #[arg(long, global = true, default_value = "1/4")]
    epsilon: String,

    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,

    #[arg(long, global = true, default_value_t = 2)]
    dim: usize,

    /// Cap on tuples visited by exact extraction.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_exact: u64,

    /// SVG rendering of the result (run only).
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Exact,
    Sampling,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random configuration in general position.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "uniform-box")]
        distribution: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Validate a configuration.
    Check,
    /// Deepest point by rainbow depth.
    Depth {
        #[arg(long, value_enum, default_value_t = Strategy::Exact)]
        strategy: Strategy,
    },
    /// Pairwise disjoint rainbow simplices with a common interior point.
    Tverberg {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Dense sub-tuple of a hypergraph.
    Densify,
    /// Trim sets around a point until they form a separated family.
    Separate,
    /// Full pipeline; writes a JSON report.
    Run {
        #[arg(long, default_value_t = 8)]
        max_retries: usize,
        /// Directory for the intermediate hypergraph and trimming state.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
    /// Re-check a report against its configuration.
    Verify {
        #[arg(long)]
        report: PathBuf,
    },
}

/// Points to trim around.
#[derive(Serialize, Deserialize)]
struct TrimState {
    #[serde(rename = "O")]
    o: Point,
    sets: Vec<Vec<Point>>,
}

struct Outcome {
    body: String,
    code: u8,
}

impl Outcome {
    fn ok(value: serde_json::Value) -> Self {
        Outcome {
            body: pretty(&value),
            code: 0,
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))
}

fn input_path(cli: &Cli) -> Result<&Path> {
    cli.input.as_deref().ok_or_else(|| Error::input("--input is required"))
}

fn load_config(path: &Path) -> Result<ColoredConfiguration> {
    let bytes = read(path)?;
    let json = bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{');
    ColoredConfiguration::load(&bytes, if json { Format::Json } else { Format::Plain })
}

fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_slice(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn epsilon(cli: &Cli) -> Result<Rational> {
    if cli.epsilon == "theoretical" {
        return Ok(rainbow_core::depth::theoretical_constants(cli.dim, 1)?.epsilon);
    }
    parse_rational(&cli.epsilon)
}

fn property_report(h: &PartiteHypergraph, t: &SubsetTuple, eps: &Rational, seed: u64) -> Result<serde_json::Value> {
    let (mode, result) = match verify_property_ii(h, t, eps) {
        Ok(r) => ("exhaustive", r),
        Err(Error::Budget(_)) => ("sampled", sample_property_ii(h, t, eps, 10_000, seed)?),
        Err(e) => return Err(e),
    };
    Ok(json!({ "mode": mode, "result": result }))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gen { n, distribution, format } => {
            let spec = GeneratorSpec::new(cli.seed, *n, cli.dim).with_distribution(distribution.parse::<PointDistribution>()?);
            let cfg = generate(&spec)?;
            let bytes = cfg.save(format.parse::<Format>()?);
            Ok(Outcome {
                body: String::from_utf8(bytes).expect("utf-8"),
                code: 0,
            })
        }
        Command::Check => {
            let cfg = load_config(input_path(cli)?)?;
            Ok(Outcome::ok(json!({
                "valid": true,
                "dimension": cfg.dimension(),
                "n": cfg.n(),
                "colors": cfg.num_colors(),
                "input_hash": input_hash(&cfg),
            })))
        }
        Command::Depth { strategy } => {
            let cfg = load_config(input_path(cli)?)?;
            let strategy = match strategy {
                Strategy::Exact => DepthStrategy::ExactArrangement,
                Strategy::Sampling => DepthStrategy::sampling(cli.seed),
            };
            let r = deepest_point(&cfg, &strategy)?;
            Ok(Outcome::ok(json!({
                "witness": r.witness,
                "depth": r.depth,
                "candidates_examined": r.candidates_examined,
            })))
        }
        Command::Tverberg { k } => {
            let cfg = load_config(input_path(cli)?)?;
            match find_disjoint_rainbow_simplices(cfg.colors(), *k)? {
                Some(cert) => {
                    verify_tverberg(cfg.colors(), &cert)?;
                    Ok(Outcome::ok(json!({ "found": true, "certificate": cert })))
                }
                None => Ok(Outcome {
                    body: pretty(&json!({ "found": false })),
                    code: 1,
                }),
            }
        }
        Command::Densify => {
            let h: PartiteHypergraph = load_json(input_path(cli)?)?;
            let eps = epsilon(cli)?;
            let t = match cli.mode {
                Mode::Exact => extract_dense_exact(&h, &eps)?,
                Mode::Local => extract_dense_local(&h, &eps, cli.seed)?,
            };
            let value = density_value(&h, &t, &eps)?;
            Ok(Outcome::ok(json!({
                "subsets": t.subsets,
                "density": value,
                "property_ii": property_report(&h, &t, &eps, cli.seed)?,
            })))
        }
        Command::Separate => {
            let state: TrimState = load_json(input_path(cli)?)?;
            let trimmed = trim_to_separated(&state.sets, &state.o)?;
            Ok(Outcome::ok(json!({
                "kept": trimmed.kept,
                "Q": trimmed.points(&state.sets),
                "trace": trimmed.trace,
            })))
        }
        Command::Run { max_retries, dump_dir } => {
            let cfg = load_config(input_path(cli)?)?;
            let params = PipelineParams {
                epsilon: epsilon(cli)?,
                mode: match cli.mode {
                    Mode::Exact => ExtractionMode::Exact,
                    Mode::Local => ExtractionMode::Local,
                },
                max_exact: cli.max_exact,
                max_retries: *max_retries,
                seed: cli.seed,
                ..PipelineParams::default()
            };
            let bundle = run_pipeline(&cfg, &params)?;
            if let Some(dir) = dump_dir {
                fs::create_dir_all(dir)?;
                let h = build_hypergraph(&cfg, &bundle.o)?;
                fs::write(dir.join("hypergraph.json"), pretty(&h))?;
                let sets = bundle
                    .stats
                    .extracted
                    .iter()
                    .enumerate()
                    .map(|(c, idx)| idx.iter().map(|&i| cfg.point(c, i).clone()).collect())
                    .collect();
                fs::write(dir.join("state.json"), pretty(&TrimState { o: bundle.o.clone(), sets }))?;
            }
            if let Some(path) = &cli.svg {
                fs::write(path, render_svg(&cfg, &bundle)?)?;
            }
            Ok(Outcome {
                body: bundle.to_json(),
                code: if bundle.verified { 0 } else { 1 },
            })
        }
        Command::Verify { report } => {
            let cfg = load_config(input_path(cli)?)?;
            let text = String::from_utf8(read(report)?).map_err(|e| Error::Parse(e.to_string()))?;
            let bundle = ResultBundle::from_json(&text)?;
            let hash_matches = bundle.input_hash == input_hash(&cfg);
            match verify_certificate(&cfg, &bundle.o, &bundle.q)? {
                Verdict::Ok => Ok(Outcome::ok(json!({ "verified": true, "input_hash_matches": hash_matches }))),
                Verdict::Counterexample(t) => {
                    let points: Vec<&Point> = t.iter().enumerate().map(|(c, &i)| &bundle.q[c][i]).collect();
                    Ok(Outcome {
                        body: pretty(&json!({
                            "verified": false,
                            "input_hash_matches": hash_matches,
                            "counterexample": { "positions": t, "points": points },
                        })),
                        code: 1,
                    })
                }
            }
        }
    }
}

fn error_json(e: &Error) -> serde_json::Value {
    let stage = match e {
        Error::Stage { stage, .. } => Some(*stage),
        _ => None,
    };
    let mut v = json!({
        "error": e.kind_name(),
        "message": e.to_string(),
        "exit_code": e.exit_code(),
    });
    if let Some(stage) = stage {
        v["stage"] = json!(stage);
    }
    if let Error::TrimExhausted { trace } = e.root() {
        v["trace"] = json!(trace);
    }
    v
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &outcome.body),
                None => {
                    print!("{}", outcome.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("{}", error_json(&Error::Io(e)));
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
