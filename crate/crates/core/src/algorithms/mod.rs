//! The four optimizers behind one contract, plus seeded multi-trial runs.
//!
//! Budgets count raw objective evaluations. The initial population costs `n`
//! evaluations; BBO, LX-BBO and SCA spend `n` per iteration afterwards while
//! LX-BBSCA spends `2n` (an SCA pass followed by a migration pass), and the
//! iteration horizon used by the `r1` and blending schedules is
//! `(budget - n) / evals_per_iteration`.

use std::fmt;
use std::str::FromStr;

use crate::operators::{GammaMode, LaplaceParams, R2Range};
use crate::{Error, Objective, Real, Result, RngStream, RunResult};

mod bbo;
mod evaluator;
mod sca;
mod trials;

pub use bbo::{run_bbo, run_lxbbo};
pub use sca::{run_lxbbsca, run_sca};
pub use trials::{run_trials, TrialSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmId {
    Bbo,
    LxBbo,
    Sca,
    LxBbsca,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 4] = [Self::Bbo, Self::LxBbo, Self::Sca, Self::LxBbsca];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Bbo => "BBO",
            Self::LxBbo => "LXBBO",
            Self::Sca => "SCA",
            Self::LxBbsca => "LXBBSCA",
        }
    }

    /// Objective evaluations consumed by one iteration with population `n`.
    pub fn evals_per_iteration(self, n: usize) -> u64 {
        match self {
            Self::LxBbsca => 2 * n as u64,
            _ => n as u64,
        }
    }

    pub fn run<F: Real, P: Objective<F> + ?Sized>(
        self,
        problem: &P,
        config: &OptimizerConfig<F>,
        rng: &mut RngStream,
    ) -> Result<RunResult<F>> {
        match self {
            Self::Bbo => run_bbo(problem, config, rng),
            Self::LxBbo => run_lxbbo(problem, config, rng),
            Self::Sca => run_sca(problem, config, rng),
            Self::LxBbsca => run_lxbbsca(problem, config, rng),
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .collect::<String>()
            .to_ascii_uppercase();
        match key.as_str() {
            "BBO" => Ok(Self::Bbo),
            "LXBBO" => Ok(Self::LxBbo),
            "SCA" => Ok(Self::Sca),
            "LXBBSCA" => Ok(Self::LxBbsca),
            _ => Err(Error::UnknownId(s.to_string())),
        }
    }
}

/// What the LX-BBSCA migration pass writes when its coin flip fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReplaceMode {
    /// Copy the coordinate from a habitat chosen by emigration rate.
    #[default]
    Emigrant,
    /// Resample the coordinate uniformly inside its bounds.
    UniformReset,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig<F> {
    pub population_size: usize,
    pub eval_budget: u64,
    pub elitism_count: usize,
    /// Per-coordinate uniform-reset probability in BBO and LX-BBO.
    pub mutation_rate: F,
    pub laplace: LaplaceParams<F>,
    /// Maximum immigration rate `I`.
    pub immigration_max: F,
    /// Maximum emigration rate `E`.
    pub emigration_max: F,
    pub gamma_mode: GammaMode,
    pub r2_range: R2Range,
    /// Starting amplitude of the sine-cosine `r1` schedule.
    pub r1_start: F,
    pub hybrid_replace: ReplaceMode,
    /// Per-coordinate probability of the LX-BBSCA replacement step.
    pub hybrid_replace_rate: F,
}

impl<F: Real> OptimizerConfig<F> {
    pub fn new(population_size: usize, eval_budget: u64) -> Self {
        Self {
            population_size,
            eval_budget,
            elitism_count: 2,
            mutation_rate: F::lit(0.01),
            laplace: LaplaceParams::default(),
            immigration_max: F::one(),
            emigration_max: F::one(),
            gamma_mode: GammaMode::Progress,
            r2_range: R2Range::TwoPi,
            r1_start: F::lit(2.0),
            hybrid_replace: ReplaceMode::Emigrant,
            hybrid_replace_rate: F::lit(0.5),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.population_size;
        if n < 2 {
            return Err(Error::config(format!("population size must be at least 2, got {n}")));
        }
        if self.eval_budget < n as u64 {
            return Err(Error::config(format!(
                "evaluation budget {} is smaller than the population {n}",
                self.eval_budget
            )));
        }
        if self.elitism_count >= n {
            return Err(Error::config(format!(
                "elitism count {} must be below the population size {n}",
                self.elitism_count
            )));
        }
        let unit = |v: F| v >= F::zero() && v <= F::one();
        if !unit(self.mutation_rate) || !unit(self.hybrid_replace_rate) {
            return Err(Error::config("mutation and replacement rates must lie in [0, 1]"));
        }
        if !(self.r1_start >= F::zero()) {
            return Err(Error::config("r1 start must be non-negative"));
        }
        self.laplace.validate()?;
        if !(self.immigration_max > F::zero() && self.immigration_max <= F::one())
            || !(self.emigration_max > F::zero() && self.emigration_max <= F::one())
        {
            return Err(Error::config("maximum migration rates must lie in (0, 1]"));
        }
        Ok(())
    }

    /// Iteration horizon after the initial population has been evaluated.
    pub fn iterations(&self, algorithm: AlgorithmId) -> usize {
        let n = self.population_size as u64;
        (self.eval_budget.saturating_sub(n) / algorithm.evals_per_iteration(self.population_size)) as usize
    }
}

#[cfg(test)]
mod tests;
