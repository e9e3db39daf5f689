//! Experiment configuration: an optional TOML file merged with flag overrides.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use bbsca_core::{
    AlgorithmId, BenchmarkId, BridgeConstraint, EngineeringId, GammaMode, LaplaceParams,
    OptimizerConfig, PenaltyPolicy, ProblemId, ProblemOptions, R2Range, WilcoxonMode,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const DEFAULT_TRIALS: usize = 30;
pub const DEFAULT_BUDGET: u64 = 30_000;
/// Budget for engineering problems when none is given explicitly.
pub const DEFAULT_ENGINEERING_BUDGET: u64 = 1_000;
pub const DEFAULT_POPULATION: usize = 50;
pub const DEFAULT_SEED: u64 = 1;

/// Raw settings as they appear in a config file or on the command line.
/// Every field is optional; [`ConfigFile::merge`] layers flags over a file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub algorithms: Option<Vec<String>>,
    pub problems: Option<Vec<String>>,
    pub trials: Option<usize>,
    pub budget: Option<u64>,
    pub pop: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub eq5_mode: Option<String>,
    pub r2_mode: Option<String>,
    pub wilcoxon: Option<String>,
    pub penalty_coeff: Option<f64>,
    pub penalty_exponent: Option<f64>,
    pub integer_gear: Option<bool>,
    pub bridge_mode: Option<String>,
    pub laplace: Option<LaplaceFile>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaplaceFile {
    pub location: Option<f64>,
    pub scale: Option<f64>,
    pub gamma_min: Option<f64>,
    pub gamma_max: Option<f64>,
    pub exponent: Option<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    /// Fields set in `overrides` win.
    pub fn merge(self, overrides: ConfigFile) -> ConfigFile {
        let laplace = match (self.laplace, overrides.laplace) {
            (Some(base), Some(top)) => Some(LaplaceFile {
                location: top.location.or(base.location),
                scale: top.scale.or(base.scale),
                gamma_min: top.gamma_min.or(base.gamma_min),
                gamma_max: top.gamma_max.or(base.gamma_max),
                exponent: top.exponent.or(base.exponent),
            }),
            (base, top) => top.or(base),
        };
        ConfigFile {
            algorithms: overrides.algorithms.or(self.algorithms),
            problems: overrides.problems.or(self.problems),
            trials: overrides.trials.or(self.trials),
            budget: overrides.budget.or(self.budget),
            pop: overrides.pop.or(self.pop),
            seed: overrides.seed.or(self.seed),
            out: overrides.out.or(self.out),
            eq5_mode: overrides.eq5_mode.or(self.eq5_mode),
            r2_mode: overrides.r2_mode.or(self.r2_mode),
            wilcoxon: overrides.wilcoxon.or(self.wilcoxon),
            penalty_coeff: overrides.penalty_coeff.or(self.penalty_coeff),
            penalty_exponent: overrides.penalty_exponent.or(self.penalty_exponent),
            integer_gear: overrides.integer_gear.or(self.integer_gear),
            bridge_mode: overrides.bridge_mode.or(self.bridge_mode),
            laplace,
        }
    }

    pub fn resolve(self) -> Result<ExperimentConfig> {
        let algorithms = match self.algorithms {
            Some(items) => parse_algorithms(&items)?,
            None => AlgorithmId::ALL.to_vec(),
        };
        let problems = parse_problems(&self.problems.unwrap_or_default())?;
        let defaults = LaplaceParams::default();
        let lf = self.laplace.unwrap_or_default();
        let penalty_defaults = PenaltyPolicy::default();
        let config = ExperimentConfig {
            algorithms,
            problems,
            trials: self.trials.unwrap_or(DEFAULT_TRIALS),
            budget: self.budget,
            population: self.pop.unwrap_or(DEFAULT_POPULATION),
            base_seed: self.seed.unwrap_or(DEFAULT_SEED),
            laplace: LaplaceParams {
                location: lf.location.unwrap_or(defaults.location),
                scale: lf.scale.unwrap_or(defaults.scale),
                gamma_min: lf.gamma_min.unwrap_or(defaults.gamma_min),
                gamma_max: lf.gamma_max.unwrap_or(defaults.gamma_max),
                exponent: lf.exponent.unwrap_or(defaults.exponent),
            },
            penalty: PenaltyPolicy {
                coefficient: self.penalty_coeff.unwrap_or(penalty_defaults.coefficient),
                exponent: self.penalty_exponent.unwrap_or(penalty_defaults.exponent),
            },
            gamma_mode: parse_opt(self.eq5_mode)?,
            r2_range: parse_opt(self.r2_mode)?,
            wilcoxon: parse_opt(self.wilcoxon)?,
            integer_gear: self.integer_gear.unwrap_or(false),
            bridge_constraint: parse_opt(self.bridge_mode)?,
            out: self.out.unwrap_or_else(|| PathBuf::from("results")),
        };
        config.validate()?;
        Ok(config)
    }
}

fn parse_opt<T>(value: Option<String>) -> Result<T>
where
    T: FromStr<Err = bbsca_core::Error> + Default,
{
    value.map_or(Ok(T::default()), |s| s.parse().map_err(CliError::from))
}

fn split_items(items: &[String]) -> impl Iterator<Item = &str> {
    items
        .iter()
        .flat_map(|s| s.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
}

pub fn parse_algorithms(items: &[String]) -> Result<Vec<AlgorithmId>> {
    let mut out = Vec::new();
    for item in split_items(items) {
        let alg: AlgorithmId = item.parse()?;
        if !out.contains(&alg) {
            out.push(alg);
        }
    }
    Ok(out)
}

/// Accepts ids, ranges such as `F1..F13`, and the groups `benchmarks`,
/// `engineering` and `all`.
pub fn parse_problems(items: &[String]) -> Result<Vec<ProblemId>> {
    let mut out = Vec::new();
    let mut push = |p: ProblemId| {
        if !out.contains(&p) {
            out.push(p);
        }
    };
    for item in split_items(items) {
        match item.to_ascii_lowercase().as_str() {
            "all" => ProblemId::all().into_iter().for_each(&mut push),
            "benchmarks" => BenchmarkId::all().map(ProblemId::Benchmark).for_each(&mut push),
            "engineering" => EngineeringId::ALL
                .into_iter()
                .map(ProblemId::Engineering)
                .for_each(&mut push),
            _ => {
                if let Some((lo, hi)) = item.split_once("..") {
                    let lo: BenchmarkId = lo.parse()?;
                    let hi: BenchmarkId = hi.parse()?;
                    if lo > hi {
                        return Err(CliError::Validation(format!("empty problem range `{item}`")));
                    }
                    (lo.number()..=hi.number())
                        .map(|n| ProblemId::Benchmark(BenchmarkId::new(n).expect("in range")))
                        .for_each(&mut push);
                } else {
                    push(item.parse()?);
                }
            }
        }
    }
    Ok(out)
}

/// A validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algorithms: Vec<AlgorithmId>,
    pub problems: Vec<ProblemId>,
    pub trials: usize,
    /// Explicit budget for every problem; `None` selects per-kind defaults.
    pub budget: Option<u64>,
    pub population: usize,
    pub base_seed: u64,
    pub laplace: LaplaceParams<f64>,
    pub penalty: PenaltyPolicy,
    pub gamma_mode: GammaMode,
    pub r2_range: R2Range,
    pub wilcoxon: WilcoxonMode,
    pub integer_gear: bool,
    pub bridge_constraint: BridgeConstraint,
    pub out: PathBuf,
}

impl ExperimentConfig {
    /// Defaults for everything except the run matrix and output directory.
    pub fn new(algorithms: Vec<AlgorithmId>, problems: Vec<ProblemId>, out: impl Into<PathBuf>) -> Self {
        Self {
            algorithms,
            problems,
            trials: DEFAULT_TRIALS,
            budget: None,
            population: DEFAULT_POPULATION,
            base_seed: DEFAULT_SEED,
            laplace: LaplaceParams::default(),
            penalty: PenaltyPolicy::default(),
            gamma_mode: GammaMode::default(),
            r2_range: R2Range::default(),
            wilcoxon: WilcoxonMode::default(),
            integer_gear: false,
            bridge_constraint: BridgeConstraint::default(),
            out: out.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(CliError::Validation("no algorithms selected".into()));
        }
        if self.problems.is_empty() {
            return Err(CliError::Validation("no problems selected".into()));
        }
        if self.trials == 0 {
            return Err(CliError::Validation("trials must be at least 1".into()));
        }
        self.penalty.validate()?;
        for &problem in &self.problems {
            self.optimizer_config(problem).validate()?;
        }
        Ok(())
    }

    pub fn budget_for(&self, problem: ProblemId) -> u64 {
        self.budget.unwrap_or(if problem.is_engineering() {
            DEFAULT_ENGINEERING_BUDGET
        } else {
            DEFAULT_BUDGET
        })
    }

    pub fn optimizer_config(&self, problem: ProblemId) -> OptimizerConfig<f64> {
        let mut config = OptimizerConfig::new(self.population, self.budget_for(problem));
        config.laplace = self.laplace;
        config.gamma_mode = self.gamma_mode;
        config.r2_range = self.r2_range;
        config
    }

    pub fn problem_options(&self) -> ProblemOptions {
        ProblemOptions {
            penalty: self.penalty,
            integer_gear: self.integer_gear,
            bridge_constraint: self.bridge_constraint,
        }
    }
}
