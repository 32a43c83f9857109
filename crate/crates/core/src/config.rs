//! Colored configurations: validation, JSON / plain text formats, and a
//! seeded generator.

use std::collections::HashSet;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationKind};
use crate::geometry::{general_position_check, orientation_hom, GeneralPosition, Homogeneous, Point, Sign};
use crate::rational::Rational;

/// `d+1` pairwise disjoint color classes of `n` points each, in general
/// position. Global index of point `i` of color `c` is `c * n + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredConfiguration {
    dimension: usize,
    colors: Vec<Vec<Point>>,
}

#[derive(Serialize, Deserialize)]
struct ConfigFile {
    dimension: usize,
    colors: Vec<Vec<Point>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Plain,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "plain" | "txt" => Ok(Format::Plain),
            other => Err(Error::input(format!("unknown format {other:?}"))),
        }
    }
}

impl ColoredConfiguration {
    /// Validates every invariant, including general position of the union.
    pub fn new(dimension: usize, colors: Vec<Vec<Point>>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::validation(ValidationKind::Dimension, "dimension must be at least 1"));
        }
        if colors.len() != dimension + 1 {
            return Err(Error::validation(
                ValidationKind::ColorCount,
                format!("expected {} colors in dimension {dimension}, got {}", dimension + 1, colors.len()),
            ));
        }
        let n = colors[0].len();
        if n == 0 || colors.iter().any(Vec::is_empty) {
            return Err(Error::validation(ValidationKind::Empty, "every color class needs at least one point"));
        }
        if let Some((c, class)) = colors.iter().enumerate().find(|(_, class)| class.len() != n) {
            return Err(Error::validation(
                ValidationKind::SizeMismatch,
                format!("color 0 has {n} points but color {c} has {}", class.len()),
            ));
        }
        for (c, class) in colors.iter().enumerate() {
            if let Some((i, p)) = class.iter().enumerate().find(|(_, p)| p.dim() != dimension) {
                return Err(Error::validation(
                    ValidationKind::Dimension,
                    format!("point {i} of color {c} is {p} with dimension {}", p.dim()),
                ));
            }
        }
        let mut seen: HashSet<&Point> = HashSet::new();
        for (c, class) in colors.iter().enumerate() {
            for (i, p) in class.iter().enumerate() {
                if !seen.insert(p) {
                    return Err(Error::validation(
                        ValidationKind::Duplicate,
                        format!("duplicate point {p} (color {c}, index {i})"),
                    ));
                }
            }
        }
        let all: Vec<&Point> = colors.iter().flatten().collect();
        if let GeneralPosition::Violation(tuple) = general_position_check(&all, dimension) {
            return Err(Error::validation(
                ValidationKind::GeneralPosition,
                format!("points {tuple:?} are affinely dependent"),
            ));
        }
        Ok(ColoredConfiguration { dimension, colors })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Points per color.
    pub fn n(&self) -> usize {
        self.colors[0].len()
    }

    pub fn num_colors(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[Vec<Point>] {
        &self.colors
    }

    pub fn color(&self, c: usize) -> &[Point] {
        &self.colors[c]
    }

    pub fn point(&self, color: usize, index: usize) -> &Point {
        &self.colors[color][index]
    }

    pub fn all_points(&self) -> Vec<&Point> {
        self.colors.iter().flatten().collect()
    }

    /// Finds `(color, index)` of a point, if present.
    pub fn locate(&self, p: &Point) -> Option<(usize, usize)> {
        self.colors
            .iter()
            .enumerate()
            .find_map(|(c, class)| class.iter().position(|q| q == p).map(|i| (c, i)))
    }

    pub fn load(bytes: &[u8], format: Format) -> Result<Self> {
        let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("not utf-8: {e}")))?;
        match format {
            Format::Json => {
                let file: ConfigFile =
                    serde_json::from_str(text).map_err(|e| Error::Parse(format!("configuration json: {e}")))?;
                ColoredConfiguration::new(file.dimension, file.colors)
            }
            Format::Plain => Self::parse_plain(text),
        }
    }

    fn parse_plain(text: &str) -> Result<Self> {
        let mut rows: Vec<(usize, Point)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let color: usize = fields
                .next()
                .unwrap()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad color index", lineno + 1)))?;
            let coords: Vec<&str> = fields.collect();
            if coords.is_empty() {
                return Err(Error::Parse(format!("line {}: missing coordinates", lineno + 1)));
            }
            let p = Point::parse(&coords).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            rows.push((color, p));
        }
        let Some((_, first)) = rows.first() else {
            return Err(Error::validation(ValidationKind::Empty, "no points"));
        };
        let dimension = first.dim();
        let mut colors = vec![Vec::new(); dimension + 1];
        for (c, p) in rows {
            if c > dimension {
                return Err(Error::validation(
                    ValidationKind::ColorCount,
                    format!("color index {c} out of range for dimension {dimension}"),
                ));
            }
            colors[c].push(p);
        }
        ColoredConfiguration::new(dimension, colors)
    }

    pub fn save(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Json => {
                let file = ConfigFile {
                    dimension: self.dimension,
                    colors: self.colors.clone(),
                };
                let mut s = serde_json::to_string_pretty(&file).expect("configuration serializes");
                s.push('\n');
                s.into_bytes()
            }
            Format::Plain => {
                let mut s = String::new();
                for (c, class) in self.colors.iter().enumerate() {
                    for p in class {
                        s.push_str(&c.to_string());
                        for x in p.to_strings() {
                            s.push(' ');
                            s.push_str(&x);
                        }
                        s.push('\n');
                    }
                }
                s.into_bytes()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointDistribution {
    UniformBox,
    Gaussian,
    MomentCurvePerturbed,
}

impl FromStr for PointDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-box" | "uniform" => Ok(PointDistribution::UniformBox),
            "gaussian" => Ok(PointDistribution::Gaussian),
            "moment-curve-perturbed" | "moment" => Ok(PointDistribution::MomentCurvePerturbed),
            other => Err(Error::input(format!("unknown distribution {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub distribution: PointDistribution,
    /// Coordinates are multiples of `1/jitter`.
    pub jitter: u64,
}

impl GeneratorSpec {
    pub fn new(seed: u64, n: usize, d: usize) -> Self {
        GeneratorSpec {
            seed,
            n,
            d,
            distribution: PointDistribution::UniformBox,
            jitter: 16,
        }
    }

    pub fn with_distribution(mut self, distribution: PointDistribution) -> Self {
        self.distribution = distribution;
        self
    }
}

const BOX_HALF_WIDTH: i64 = 100;
const RETRIES_PER_POINT: usize = 1000;

/// Deterministic for a fixed spec; the result always validates.
pub fn generate(spec: &GeneratorSpec) -> Result<ColoredConfiguration> {
    if spec.n == 0 || spec.d == 0 {
        return Err(Error::input("generator needs n >= 1 and d >= 1"));
    }
    if spec.jitter == 0 {
        return Err(Error::input("jitter denominator must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let total = spec.n * (spec.d + 1);
    let mut points: Vec<Point> = Vec::with_capacity(total);
    let mut hom: Vec<Homogeneous> = Vec::with_capacity(total);
    let mut seen: HashSet<Point> = HashSet::new();
    while points.len() < total {
        let mut accepted = false;
        for _ in 0..RETRIES_PER_POINT {
            let candidate = sample_point(spec, &mut rng);
            if seen.contains(&candidate) {
                continue;
            }
            let h = candidate.homogeneous();
            if keeps_general_position(&hom, &h, spec.d) {
                seen.insert(candidate.clone());
                points.push(candidate);
                hom.push(h);
                accepted = true;
                break;
            }
        }
        if !accepted {
            return Err(Error::input(format!(
                "generator could not place point {} in general position after {RETRIES_PER_POINT} tries",
                points.len()
            )));
        }
    }
    let colors: Vec<Vec<Point>> = points.chunks(spec.n).map(<[Point]>::to_vec).collect();
    ColoredConfiguration::new(spec.d, colors)
}

fn keeps_general_position(existing: &[Homogeneous], candidate: &Homogeneous, d: usize) -> bool {
    use itertools::Itertools;
    if existing.len() < d {
        return true;
    }
    (0..existing.len()).combinations(d).all(|subset| {
        let mut rows: Vec<&Homogeneous> = subset.iter().map(|&i| &existing[i]).collect();
        rows.push(candidate);
        orientation_hom(&rows) != Sign::Zero
    })
}

fn lattice(value: i64, jitter: u64) -> Rational {
    Rational::new(BigInt::from(value), BigInt::from(jitter))
}

fn sample_point(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Point {
    let j = spec.jitter as i64;
    match spec.distribution {
        PointDistribution::UniformBox => Point::new(
            (0..spec.d)
                .map(|_| {
                    let k = rng.random_range(-BOX_HALF_WIDTH..BOX_HALF_WIDTH);
                    let f = rng.random_range(0..j);
                    lattice(k * j + f, spec.jitter)
                })
                .collect(),
        ),
        PointDistribution::Gaussian => {
            let normal = Normal::new(0.0, BOX_HALF_WIDTH as f64 / 3.0).expect("valid sigma");
            Point::new(
                (0..spec.d)
                    .map(|_| {
                        let x: f64 = normal.sample(rng);
                        lattice((x * j as f64).round() as i64, spec.jitter)
                    })
                    .collect(),
            )
        }
        PointDistribution::MomentCurvePerturbed => {
            let span = ((spec.d + 1) * spec.n) as i64 + 2;
            let t = rng.random_range(-span..=span);
            let mut power = 1i64;
            Point::new(
                (0..spec.d)
                    .map(|_| {
                        power = power.saturating_mul(t);
                        let wiggle = rng.random_range(-j / 2..=j / 2);
                        lattice(power.saturating_mul(j) + wiggle, spec.jitter)
                    })
                    .collect(),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_json() -> &'static str {
        r#"{"dimension": 2, "colors": [[["0","0"]], [["1","0"]], [["0","1"]]]}"#
    }

    #[test]
    fn loads_triangle() {
        let cfg = ColoredConfiguration::load(triangle_json().as_bytes(), Format::Json).unwrap();
        assert_eq!(cfg.dimension(), 2);
        assert_eq!(cfg.n(), 1);
        assert_eq!(cfg.point(2, 0), &Point::from_ints(&[0, 1]));
    }

    #[test]
    fn rejects_duplicates_across_colors() {
        let json = r#"{"dimension": 2, "colors": [[["0","0"]], [["0/1","0.0"]], [["0","1"]]]}"#;
        let err = ColoredConfiguration::load(json.as_bytes(), Format::Json).unwrap_err();
        assert!(matches!(err, Error::Validation { kind: ValidationKind::Duplicate, .. }), "{err}");
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn rejects_size_mismatch() {
        let json = r#"{"dimension": 2, "colors": [[["0","0"],["5","1"]], [["1","0"],["2","7"],["3","3"]], [["0","1"],["9","4"]]]}"#;
        let err = ColoredConfiguration::load(json.as_bytes(), Format::Json).unwrap_err();
        assert!(matches!(err, Error::Validation { kind: ValidationKind::SizeMismatch, .. }), "{err}");
    }

    #[test]
    fn rejects_collinear_and_empty() {
        let json = r#"{"dimension": 2, "colors": [[["0","0"]], [["1","0"]], [["2","0"]]]}"#;
        let err = ColoredConfiguration::load(json.as_bytes(), Format::Json).unwrap_err();
        assert!(matches!(err, Error::Validation { kind: ValidationKind::GeneralPosition, .. }));
        let err = ColoredConfiguration::new(2, vec![vec![], vec![], vec![]]).unwrap_err();
        assert!(matches!(err, Error::Validation { kind: ValidationKind::Empty, .. }));
        let err = ColoredConfiguration::new(2, vec![vec![Point::from_ints(&[0, 0])]]).unwrap_err();
        assert!(matches!(err, Error::Validation { kind: ValidationKind::ColorCount, .. }));
    }

    #[test]
    fn malformed_json_is_parse_error() {
        let err = ColoredConfiguration::load(b"{\"dimension\": 2, \"colors\": [", Format::Json).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        let err = ColoredConfiguration::load(br#"{"dimension": 2, "colors": [[["x","0"]]]}"#, Format::Json)
            .unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn plain_format_reads_comments_and_decimals() {
        let text = "# triangle\n0 0 0\n1 1 0\n2 0.5 1/3\n";
        let cfg = ColoredConfiguration::load(text.as_bytes(), Format::Plain).unwrap();
        assert_eq!(cfg.point(2, 0).to_strings(), vec!["1/2", "1/3"]);
        let back = ColoredConfiguration::load(&cfg.save(Format::Plain), Format::Plain).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn thirds_serialize_as_fractions() {
        let cfg = ColoredConfiguration::load(
            br#"{"dimension": 2, "colors": [[["1/3","0"]], [["1","0"]], [["0","1"]]]}"#,
            Format::Json,
        )
        .unwrap();
        let text = String::from_utf8(cfg.save(Format::Json)).unwrap();
        assert!(text.contains("\"1/3\""));
        assert!(!text.contains("0.333"));
    }

    #[test]
    fn generator_is_deterministic_and_valid() {
        for dist in [
            PointDistribution::UniformBox,
            PointDistribution::Gaussian,
            PointDistribution::MomentCurvePerturbed,
        ] {
            let spec = GeneratorSpec::new(7, 4, 2).with_distribution(dist);
            let a = generate(&spec).unwrap();
            let b = generate(&spec).unwrap();
            assert_eq!(a.save(Format::Json), b.save(Format::Json));
            assert_eq!(a.n(), 4);
            assert!(general_position_check(&a.all_points(), 2).is_ok());
        }
    }

    #[test]
    fn generator_single_point_per_color_is_triangle() {
        let cfg = generate(&GeneratorSpec::new(3, 1, 2)).unwrap();
        let pts = cfg.all_points();
        assert_eq!(pts.len(), 3);
        assert_ne!(crate::geometry::orientation(&pts).unwrap(), Sign::Zero);
    }

    #[test]
    fn generator_rejects_zero_sizes() {
        assert!(generate(&GeneratorSpec::new(1, 0, 2)).is_err());
        assert!(generate(&GeneratorSpec::new(1, 3, 0)).is_err());
    }
}
