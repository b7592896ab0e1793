//! Run configuration: a JSON document, with command-line flags layered on top.

use std::fs;
use std::path::{Path, PathBuf};

use barypoly::analysis::random_sorted_seed;
use barypoly::{PointSet, WeightTuple};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_MAX_STEPS: usize = 200;

/// Every field is optional so a file can pin some values and leave the rest
/// to flags or defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub p: Option<usize>,
    pub dim: Option<usize>,
    pub weights: Option<Vec<f64>>,
    pub points: Option<Vec<Vec<f64>>>,
    pub max_steps: Option<usize>,
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overridden_by(self, other: RunConfig) -> RunConfig {
        RunConfig {
            p: other.p.or(self.p),
            dim: other.dim.or(self.dim),
            weights: other.weights.or(self.weights),
            points: other.points.or(self.points),
            max_steps: other.max_steps.or(self.max_steps),
            seed: other.seed.or(self.seed),
            output_dir: other.output_dir.or(self.output_dir),
        }
    }

    /// Order implied by whichever of `p`, `weights` and `points` are present,
    /// which must agree.
    pub fn order(&self) -> Result<Option<usize>, CliError> {
        let mut p = self.p;
        for (what, len) in [
            ("weights", self.weights.as_ref().map(Vec::len)),
            ("points", self.points.as_ref().map(Vec::len)),
        ] {
            match (p, len) {
                (Some(a), Some(b)) if a != b => {
                    return Err(CliError::Usage(format!("{what} has {b} entries but p = {a}")));
                }
                (None, Some(b)) => p = Some(b),
                _ => {}
            }
        }
        Ok(p)
    }

    pub fn steps(&self) -> usize {
        self.max_steps.unwrap_or(DEFAULT_MAX_STEPS)
    }

    /// Explicit weights, else a random sorted seed drawn from `seed`.
    pub fn weight_tuple(&self) -> Result<WeightTuple, CliError> {
        if let Some(t) = &self.weights {
            self.order()?;
            return Ok(WeightTuple::new(t.clone())?);
        }
        match (self.order()?, self.seed) {
            (Some(p), Some(seed)) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok(random_sorted_seed(&mut rng, p).to_weights())
            }
            (None, Some(_)) => Err(CliError::Usage("a random seed needs --p".into())),
            _ => Err(CliError::Usage(
                "no weights given: pass --weights, --seed with --p, or a config file".into(),
            )),
        }
    }

    /// Explicit points, else the regular p-gon on the unit circle.
    pub fn point_set(&self, p: usize) -> Result<PointSet, CliError> {
        let a = match &self.points {
            Some(points) => PointSet::new(points.clone())?,
            None => {
                if let Some(d) = self.dim.filter(|&d| d != 2) {
                    return Err(CliError::Usage(format!(
                        "the default regular polygon lives in dimension 2, not {d}; supply points"
                    )));
                }
                PointSet::regular_polygon(p)?
            }
        };
        if a.p() != p {
            return Err(CliError::Usage(format!("{} points given for p = {p}", a.p())));
        }
        if let Some(d) = self.dim.filter(|&d| d != a.dim()) {
            return Err(CliError::Usage(format!(
                "points have dimension {} but dim = {d}",
                a.dim()
            )));
        }
        Ok(a)
    }

    /// `path` placed under `output_dir` when it is relative.
    pub fn output_path(&self, path: &Path) -> PathBuf {
        match &self.output_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }
}

/// Reads a point family from JSON (`[[x, y], ...]`) or from CSV with one
/// point per row; a non-numeric first row is taken as a header.
pub fn read_points(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let parse_err = |message: String| CliError::Parse {
        path: path.to_path_buf(),
        message,
    };
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        return serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| parse_err(e.to_string()))?;
        let row: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match row {
            Ok(row) => points.push(row),
            Err(_) if i == 0 => continue,
            Err(e) => return Err(parse_err(format!("row {}: {e}", i + 1))),
        }
    }
    Ok(points)
}
