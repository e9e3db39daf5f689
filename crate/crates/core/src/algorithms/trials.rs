use rayon::prelude::*;

use super::{AlgorithmId, OptimizerConfig};
use crate::stats::summarize;
use crate::{Error, Objective, Real, Result, RngStream, RunResult, TrialSummary};

/// Independent seeded runs of one algorithm on one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSet<F> {
    pub algorithm: AlgorithmId,
    pub base_seed: u64,
    pub summary: TrialSummary<F>,
    /// Ordered by trial index.
    pub runs: Vec<RunResult<F>>,
}

impl<F: Real> TrialSet<F> {
    pub fn final_fitness(&self) -> Vec<F> {
        self.runs.iter().map(RunResult::best_fitness).collect()
    }
}

/// Runs `n_trials` trials in parallel; trial `k` is seeded with
/// `base_seed + k`, so the result does not depend on scheduling.
pub fn run_trials<F: Real, P: Objective<F> + ?Sized>(
    problem: &P,
    algorithm: AlgorithmId,
    config: &OptimizerConfig<F>,
    n_trials: usize,
    base_seed: u64,
) -> Result<TrialSet<F>> {
    if n_trials == 0 {
        return Err(Error::config("at least one trial is required"));
    }
    config.validate()?;
    let runs = (0..n_trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = RngStream::for_trial(base_seed, k);
            algorithm.run(problem, config, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    let finals: Vec<F> = runs.iter().map(RunResult::best_fitness).collect();
    Ok(TrialSet {
        algorithm,
        base_seed,
        summary: summarize(&finals)?,
        runs,
    })
}
