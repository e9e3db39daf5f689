//! On-disk layout and text formats of a results directory.
//!
//! ```text
//! manifest.toml
//! summary.csv
//! trials/<ALGO>__<problem>.csv
//! traces/<ALGO>__<problem>/trial_<k>.csv
//! comparisons/<A>_vs_<B>.csv
//! engineering.csv
//! curves/<problem>__<ALGO>.csv
//! ```
//!
//! Every table starts with `#` lines naming what it holds.

use std::fs;
use std::path::{Path, PathBuf};

use bbsca_core::{AlgorithmId, ProblemId};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const MANIFEST: &str = "manifest.toml";
pub const SUMMARY: &str = "summary.csv";
pub const ENGINEERING: &str = "engineering.csv";
pub const SEED_POLICY: &str = "trial k uses seed base_seed + k";

/// Shortest round-trip text for a float, switching to exponent form for very
/// small or large magnitudes.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".to_string()
    } else if !x.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

pub fn trials_path(dir: &Path, algorithm: AlgorithmId, problem: ProblemId) -> PathBuf {
    dir.join("trials").join(format!("{algorithm}__{problem}.csv"))
}

pub fn trace_dir(dir: &Path, algorithm: AlgorithmId, problem: ProblemId) -> PathBuf {
    dir.join("traces").join(format!("{algorithm}__{problem}"))
}

pub fn trace_path(dir: &Path, algorithm: AlgorithmId, problem: ProblemId, trial: usize) -> PathBuf {
    trace_dir(dir, algorithm, problem).join(format!("trial_{trial:03}.csv"))
}

pub fn comparison_path(dir: &Path, a: AlgorithmId, b: AlgorithmId) -> PathBuf {
    dir.join("comparisons").join(format!("{a}_vs_{b}.csv"))
}

pub fn curve_path(dir: &Path, problem: ProblemId, algorithm: AlgorithmId) -> PathBuf {
    dir.join("curves").join(format!("{problem}__{algorithm}.csv"))
}

/// Writes a CSV table preceded by `# key: value` lines.
pub fn write_table(
    path: &Path,
    meta: &[(&str, String)],
    header: &[String],
    rows: &[Vec<String>],
) -> Result<()> {
    let mut text = String::new();
    for (key, value) in meta {
        text.push_str(&format!("# {key}: {value}\n"));
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).map_err(|e| CliError::csv(path, e))?;
    for row in rows {
        writer.write_record(row).map_err(|e| CliError::csv(path, e))?;
    }
    let body = writer
        .into_inner()
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    text.push_str(&String::from_utf8(body).expect("csv output is UTF-8"));
    write_file(path, &text)
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Reads a table written by [`write_table`], skipping its `#` lines.
pub fn read_table<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::csv(path, e))?;
    reader
        .deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(|e| CliError::csv(path, e))
}

/// One line of a per-cell trial table.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub evals_used: u64,
    pub best_fitness: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct TracePoint {
    pub eval_count: u64,
    pub best_fitness: f64,
}

/// Run provenance: the resolved configuration plus every cell and its seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool_version: String,
    pub algorithms: Vec<String>,
    pub problems: Vec<String>,
    pub trials: usize,
    pub population: usize,
    pub base_seed: u64,
    pub seed_policy: String,
    pub eq5_mode: String,
    pub r2_mode: String,
    pub wilcoxon: String,
    pub integer_gear: bool,
    pub bridge_mode: String,
    pub laplace: ManifestLaplace,
    pub penalty: ManifestPenalty,
    pub cells: Vec<ManifestCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestLaplace {
    pub location: f64,
    pub scale: f64,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestPenalty {
    pub coefficient: f64,
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestCell {
    pub algorithm: String,
    pub problem: String,
    pub dim: usize,
    pub budget: u64,
    pub seeds: Vec<u64>,
    pub trials_file: String,
}

impl Manifest {
    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST);
        let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        toml::from_str(&text).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
    }

    pub fn algorithm_ids(&self) -> Result<Vec<AlgorithmId>> {
        self.algorithms.iter().map(|s| Ok(s.parse()?)).collect()
    }

    pub fn problem_ids(&self) -> Result<Vec<ProblemId>> {
        self.problems.iter().map(|s| Ok(s.parse()?)).collect()
    }

    pub fn cell(&self, algorithm: AlgorithmId, problem: ProblemId) -> Option<&ManifestCell> {
        let (a, p) = (algorithm.to_string(), problem.to_string());
        self.cells.iter().find(|c| c.algorithm == a && c.problem == p)
    }
}
