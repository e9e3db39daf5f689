//! The `run` command: every (algorithm, problem) cell, then reports.

use std::collections::BTreeMap;
use std::fs;

use bbsca_core::problems::EngineeringProblem;
use bbsca_core::stats::summarize;
use bbsca_core::{run_trials, AlgorithmId, ProblemId, RunResult, TrialSet};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::output::{
    self, fmt_num, trace_path, trials_path, write_file, write_table, Manifest, ManifestCell,
    ManifestLaplace, ManifestPenalty, SEED_POLICY,
};
use crate::report::{comparison_rows, engineering_rows, write_comparison, write_engineering};

/// Results of one cell, keyed in the order the config lists them.
pub type CellResults = BTreeMap<(usize, usize), TrialSet<f64>>;

/// What a finished experiment produced.
#[derive(Debug)]
pub struct ExperimentOutcome {
    pub config: ExperimentConfig,
    pub cells: CellResults,
}

impl ExperimentOutcome {
    pub fn trial_set(&self, algorithm: AlgorithmId, problem: ProblemId) -> Option<&TrialSet<f64>> {
        let a = self.config.algorithms.iter().position(|&x| x == algorithm)?;
        let p = self.config.problems.iter().position(|&x| x == problem)?;
        self.cells.get(&(a, p))
    }
}

/// Runs the full matrix and writes the results directory.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    config.validate()?;
    let dir = &config.out;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    for sub in ["trials", "traces", "comparisons", "curves"] {
        let path = dir.join(sub);
        if path.exists() {
            fs::remove_dir_all(&path).map_err(|e| CliError::io(&path, e))?;
        }
    }
    let stale = dir.join(output::ENGINEERING);
    if stale.exists() {
        fs::remove_file(&stale).map_err(|e| CliError::io(&stale, e))?;
    }

    let options = config.problem_options();
    let mut cells = CellResults::new();
    for (pi, &problem) in config.problems.iter().enumerate() {
        let objective = problem.instantiate::<f64>(&options)?;
        let optimizer = config.optimizer_config(problem);
        for (ai, &algorithm) in config.algorithms.iter().enumerate() {
            let set = run_trials(
                objective.as_ref(),
                algorithm,
                &optimizer,
                config.trials,
                config.base_seed,
            )
            .map_err(|e| CliError::Runtime(format!("{algorithm} on {problem}: {e}")))?;
            write_cell(config, problem, &set)?;
            cells.insert((ai, pi), set);
        }
    }

    let outcome = ExperimentOutcome { config: config.clone(), cells };
    write_summary(&outcome)?;
    for (i, &a) in config.algorithms.iter().enumerate() {
        for &b in &config.algorithms[i + 1..] {
            if config.trials < 2 {
                break;
            }
            let rows = comparison_rows(a, b, &config.problems, config.wilcoxon, |alg, problem| {
                Ok(outcome.trial_set(alg, problem).map(TrialSet::final_fitness))
            })?;
            write_comparison(dir, a, b, config.wilcoxon, &rows)?;
        }
    }
    let engineering: Vec<_> = config
        .problems
        .iter()
        .filter_map(|p| match p {
            ProblemId::Engineering(id) => Some(*id),
            ProblemId::Benchmark(_) => None,
        })
        .collect();
    if !engineering.is_empty() {
        let mut rows = Vec::new();
        for id in engineering {
            let problem = EngineeringProblem::<f64>::new(id)
                .with_penalty(config.penalty)?
                .with_integer_gear(config.integer_gear)
                .with_bridge_constraint(config.bridge_constraint);
            let runs: Vec<(AlgorithmId, &RunResult<f64>)> = config
                .algorithms
                .iter()
                .filter_map(|&alg| {
                    let set = outcome.trial_set(alg, ProblemId::Engineering(id))?;
                    best_run(set).map(|run| (alg, run))
                })
                .collect();
            rows.extend(engineering_rows(&problem, &runs)?);
        }
        write_engineering(dir, config, &rows)?;
    }
    write_manifest(&outcome)?;
    Ok(outcome)
}

/// Lowest final fitness; the earliest trial wins ties.
pub fn best_run(set: &TrialSet<f64>) -> Option<&RunResult<f64>> {
    set.runs.iter().reduce(|best, run| {
        if run.best_fitness() < best.best_fitness() {
            run
        } else {
            best
        }
    })
}

fn cell_meta(config: &ExperimentConfig, algorithm: AlgorithmId, problem: ProblemId) -> Vec<(&'static str, String)> {
    vec![
        ("algorithm", algorithm.to_string()),
        ("problem", problem.to_string()),
        ("seed_policy", format!("{SEED_POLICY}, base_seed = {}", config.base_seed)),
        ("budget", config.budget_for(problem).to_string()),
        ("population", config.population.to_string()),
    ]
}

fn write_cell(config: &ExperimentConfig, problem: ProblemId, set: &TrialSet<f64>) -> Result<()> {
    let dir = &config.out;
    let algorithm = set.algorithm;
    let dim = set.runs.first().map_or(0, |r| r.best.position.len());
    let mut header: Vec<String> = ["trial", "seed", "evals_used", "best_fitness"]
        .map(String::from)
        .to_vec();
    header.extend((1..=dim).map(|i| format!("x{i}")));
    let rows: Vec<Vec<String>> = set
        .runs
        .iter()
        .enumerate()
        .map(|(k, run)| {
            let mut row = vec![
                k.to_string(),
                run.seed.to_string(),
                run.evals_used.to_string(),
                fmt_num(run.best_fitness()),
            ];
            row.extend(run.best.position.iter().map(|&x| fmt_num(x)));
            row
        })
        .collect();
    let meta = cell_meta(config, algorithm, problem);
    write_table(&trials_path(dir, algorithm, problem), &meta, &header, &rows)?;

    let trace_header = ["eval_count", "best_fitness"].map(String::from);
    for (k, run) in set.runs.iter().enumerate() {
        let mut meta = meta.clone();
        meta.push(("trial", k.to_string()));
        meta.push(("seed", run.seed.to_string()));
        let rows: Vec<Vec<String>> = run
            .trace
            .points()
            .iter()
            .map(|&(e, f)| vec![e.to_string(), fmt_num(f)])
            .collect();
        write_table(&trace_path(dir, algorithm, problem, k), &meta, &trace_header, &rows)?;
    }
    Ok(())
}

fn write_summary(outcome: &ExperimentOutcome) -> Result<()> {
    let config = &outcome.config;
    let header = ["algorithm", "problem", "Min", "Max", "Std", "Average", "Median"].map(String::from);
    let mut rows = Vec::new();
    for (ai, &algorithm) in config.algorithms.iter().enumerate() {
        for (pi, &problem) in config.problems.iter().enumerate() {
            let s = summarize(&outcome.cells[&(ai, pi)].final_fitness())?;
            rows.push(vec![
                algorithm.to_string(),
                problem.to_string(),
                fmt_num(s.min),
                fmt_num(s.max),
                fmt_num(s.std),
                fmt_num(s.average),
                fmt_num(s.median),
            ]);
        }
    }
    let meta = vec![
        ("content", "final best fitness over trials".to_string()),
        ("algorithms", join(&config.algorithms)),
        ("problems", join(&config.problems)),
        ("trials", config.trials.to_string()),
        ("seed_policy", format!("{SEED_POLICY}, base_seed = {}", config.base_seed)),
        ("budget", budget_note(config)),
    ];
    write_table(&config.out.join(output::SUMMARY), &meta, &header, &rows)
}

pub(crate) fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub(crate) fn budget_note(config: &ExperimentConfig) -> String {
    match config.budget {
        Some(b) => b.to_string(),
        None => format!(
            "{} (benchmarks), {} (engineering)",
            crate::config::DEFAULT_BUDGET,
            crate::config::DEFAULT_ENGINEERING_BUDGET
        ),
    }
}

fn write_manifest(outcome: &ExperimentOutcome) -> Result<()> {
    let config = &outcome.config;
    let mut cells = Vec::new();
    for (pi, &problem) in config.problems.iter().enumerate() {
        for (ai, &algorithm) in config.algorithms.iter().enumerate() {
            let set = &outcome.cells[&(ai, pi)];
            cells.push(ManifestCell {
                algorithm: algorithm.to_string(),
                problem: problem.to_string(),
                dim: set.runs[0].best.position.len(),
                budget: config.budget_for(problem),
                seeds: set.runs.iter().map(|r| r.seed).collect(),
                trials_file: format!("trials/{algorithm}__{problem}.csv"),
            });
        }
    }
    let manifest = Manifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        algorithms: config.algorithms.iter().map(ToString::to_string).collect(),
        problems: config.problems.iter().map(ToString::to_string).collect(),
        trials: config.trials,
        population: config.population,
        base_seed: config.base_seed,
        seed_policy: SEED_POLICY.to_string(),
        eq5_mode: config.gamma_mode.to_string(),
        r2_mode: config.r2_range.to_string(),
        wilcoxon: config.wilcoxon.to_string(),
        integer_gear: config.integer_gear,
        bridge_mode: config.bridge_constraint.to_string(),
        laplace: ManifestLaplace {
            location: config.laplace.location,
            scale: config.laplace.scale,
            gamma_min: config.laplace.gamma_min,
            gamma_max: config.laplace.gamma_max,
            exponent: config.laplace.exponent,
        },
        penalty: ManifestPenalty {
            coefficient: config.penalty.coefficient,
            exponent: config.penalty.exponent,
        },
        cells,
    };
    let text = toml::to_string(&manifest)
        .map_err(|e| CliError::Runtime(format!("manifest: {e}")))?;
    write_file(&config.out.join(output::MANIFEST), &text)
}
