//! Pairwise comparison, engineering and convergence-curve reports.

use std::path::{Path, PathBuf};

use bbsca_core::problems::{EngineeringProblem, ReferenceSolution};
use bbsca_core::stats::{paired_t_test, wilcoxon_test};
use bbsca_core::{
    AlgorithmId, ConvergenceTrace, ProblemId, RunResult, TTestResult, WilcoxonMode,
    WilcoxonResult,
};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::experiment::{budget_note, join};
use crate::output::{
    self, comparison_path, curve_path, fmt_num, fmt_opt, read_table, trace_path, trials_path,
    write_table, Manifest, TracePoint, TrialRecord, SEED_POLICY,
};

/// Source label for bundled published rows.
pub const PUBLISHED: &str = "published reference";
pub const THIS_RUN: &str = "this run";

/// Default number of checkpoints on a convergence curve.
pub const DEFAULT_CHECKPOINTS: usize = 101;

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub problem: ProblemId,
    pub t_test: TTestResult,
    pub wilcoxon: WilcoxonResult,
}

/// Paired tests of `a` against `b` on each problem; `lookup` supplies the
/// per-trial final fitness of a cell.
pub fn comparison_rows<L>(
    a: AlgorithmId,
    b: AlgorithmId,
    problems: &[ProblemId],
    mode: WilcoxonMode,
    lookup: L,
) -> Result<Vec<ComparisonRow>>
where
    L: Fn(AlgorithmId, ProblemId) -> Result<Option<Vec<f64>>>,
{
    let fetch = |alg: AlgorithmId, problem: ProblemId| {
        lookup(alg, problem)?.ok_or_else(|| {
            CliError::Runtime(format!("no trial records for ({alg}, {problem})"))
        })
    };
    problems
        .iter()
        .map(|&problem| {
            let xa = fetch(a, problem)?;
            let xb = fetch(b, problem)?;
            if xa.len() != xb.len() || xa.len() < 2 {
                return Err(CliError::Validation(format!(
                    "{problem}: paired comparison needs equal trial counts of at least 2, got {} and {}",
                    xa.len(),
                    xb.len()
                )));
            }
            Ok(ComparisonRow {
                problem,
                t_test: paired_t_test(&xa, &xb)?,
                wilcoxon: wilcoxon_test(&xa, &xb, mode)?,
            })
        })
        .collect()
}

pub fn write_comparison(
    dir: &Path,
    a: AlgorithmId,
    b: AlgorithmId,
    mode: WilcoxonMode,
    rows: &[ComparisonRow],
) -> Result<PathBuf> {
    let header = [
        "problem", "mean_diff", "std_diff", "std_error", "ci_low", "ci_high", "t", "df", "p",
        "conclusion", "wilcoxon_mode", "wilcoxon_statistic", "z", "wilcoxon_p", "sign",
    ]
    .map(String::from);
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let t = &r.t_test;
            let w = &r.wilcoxon;
            vec![
                r.problem.to_string(),
                fmt_num(t.mean_diff),
                fmt_num(t.std_diff),
                fmt_num(t.std_error),
                fmt_num(t.ci_low),
                fmt_num(t.ci_high),
                fmt_num(t.t),
                fmt_num(t.df),
                fmt_num(t.p),
                t.label.to_string(),
                w.mode.to_string(),
                fmt_num(w.statistic),
                fmt_num(w.z),
                fmt_num(w.p),
                w.sign.to_string(),
            ]
        })
        .collect();
    let meta = vec![
        ("comparison", format!("{a} vs {b}, differences {a} - {b} of final best fitness")),
        ("conclusion", "a+ for p <= 0.001, a for p <= 0.05, b otherwise".to_string()),
        ("sign", format!("+ when {a} is significantly smaller at the 5% level")),
        ("wilcoxon", mode.to_string()),
    ];
    let path = comparison_path(dir, a, b);
    write_table(&path, &meta, &header, &body)?;
    Ok(path)
}

/// Recomputes the comparison of two algorithms from a results directory.
pub fn compare_report(
    dir: &Path,
    a: AlgorithmId,
    b: AlgorithmId,
    problems: Option<&[ProblemId]>,
    mode: Option<WilcoxonMode>,
) -> Result<PathBuf> {
    let manifest = Manifest::load(dir)?;
    let problems = match problems {
        Some(p) => p.to_vec(),
        None => manifest.problem_ids()?,
    };
    let mode = match mode {
        Some(m) => m,
        None => manifest.wilcoxon.parse()?,
    };
    let rows = comparison_rows(a, b, &problems, mode, |alg, problem| {
        let path = trials_path(dir, alg, problem);
        if !path.exists() {
            return Ok(None);
        }
        let records: Vec<TrialRecord> = read_table(&path)?;
        Ok(Some(records.iter().map(|r| r.best_fitness).collect()))
    })?;
    write_comparison(dir, a, b, mode, &rows)
}

/// One line of the engineering report.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineeringRow {
    pub problem: String,
    pub source: &'static str,
    pub technique: String,
    pub x: Vec<f64>,
    /// Raw objective evaluated here.
    pub objective: f64,
    pub penalized_objective: f64,
    pub reported_objective: Option<f64>,
    pub reliability: Option<f64>,
    pub reported_reliability: Option<f64>,
    pub feasible: bool,
    pub budget: Option<u64>,
}

impl EngineeringRow {
    pub fn objective_delta(&self) -> Option<f64> {
        self.reported_objective.map(|r| self.objective - r)
    }

    pub fn reliability_delta(&self) -> Option<f64> {
        Some(self.reliability? - self.reported_reliability?)
    }
}

fn evaluate_row(
    problem: &EngineeringProblem<f64>,
    source: &'static str,
    technique: String,
    x: &[f64],
) -> Result<EngineeringRow> {
    let decoded = problem.decode(x);
    let feasible = problem.space().contains(&decoded) && problem.is_feasible(&decoded)?;
    Ok(EngineeringRow {
        problem: problem.id().to_string(),
        source,
        technique,
        objective: problem.raw_objective(&decoded)?,
        penalized_objective: problem.penalized_objective(&decoded)?,
        reliability: problem.reliability(&decoded)?,
        x: decoded,
        reported_objective: None,
        reported_reliability: None,
        feasible,
        budget: None,
    })
}

/// Best run of each algorithm followed by the published rows, all evaluated
/// with this build's formulas.
pub fn engineering_rows(
    problem: &EngineeringProblem<f64>,
    runs: &[(AlgorithmId, &RunResult<f64>)],
) -> Result<Vec<EngineeringRow>> {
    let mut rows = Vec::new();
    for (alg, run) in runs {
        let mut row = evaluate_row(problem, THIS_RUN, alg.to_string(), &run.best.position)?;
        row.budget = Some(run.evals_used);
        rows.push(row);
    }
    for reference in problem.reference_solutions() {
        rows.push(published_row(problem, &reference)?);
    }
    Ok(rows)
}

pub fn published_row(
    problem: &EngineeringProblem<f64>,
    reference: &ReferenceSolution,
) -> Result<EngineeringRow> {
    let mut row = evaluate_row(problem, PUBLISHED, reference.technique.clone(), &reference.x)?;
    row.reported_objective = Some(reference.objective);
    row.reported_reliability = reference.reliability;
    row.budget = reference.budget;
    Ok(row)
}

pub fn write_engineering(dir: &Path, config: &ExperimentConfig, rows: &[EngineeringRow]) -> Result<PathBuf> {
    let mut header: Vec<String> = ["problem", "source", "technique"].map(String::from).to_vec();
    header.extend((1..=5).map(|i| format!("x{i}")));
    header.extend(
        [
            "objective",
            "penalized_objective",
            "reported_objective",
            "objective_delta",
            "reliability",
            "reported_reliability",
            "reliability_delta",
            "feasible",
            "evaluations",
        ]
        .map(String::from),
    );
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut line = vec![r.problem.clone(), r.source.to_string(), r.technique.clone()];
            line.extend((0..5).map(|i| fmt_opt(r.x.get(i).copied())));
            line.extend([
                fmt_num(r.objective),
                fmt_num(r.penalized_objective),
                fmt_opt(r.reported_objective),
                fmt_opt(r.objective_delta()),
                fmt_opt(r.reliability),
                fmt_opt(r.reported_reliability),
                fmt_opt(r.reliability_delta()),
                r.feasible.to_string(),
                r.budget.map(|b| b.to_string()).unwrap_or_default(),
            ]);
            line
        })
        .collect();
    let meta = vec![
        ("content", format!("best of {} trials per algorithm, then published reference rows re-evaluated", config.trials)),
        ("algorithms", join(&config.algorithms)),
        ("seed_policy", format!("{SEED_POLICY}, base_seed = {}", config.base_seed)),
        ("budget", budget_note(config)),
        ("deltas", "objective_delta = objective - reported_objective; same for reliability".to_string()),
        ("penalty", format!("coefficient {} exponent {}", fmt_num(config.penalty.coefficient), fmt_num(config.penalty.exponent))),
        ("integer_gear", config.integer_gear.to_string()),
        ("bridge_mode", config.bridge_constraint.to_string()),
    ];
    let path = dir.join(output::ENGINEERING);
    write_table(&path, &meta, &header, &body)?;
    Ok(path)
}

/// Evenly spaced evaluation counts covering `[population, budget]`.
pub fn checkpoint_grid(population: u64, budget: u64, points: usize) -> Vec<u64> {
    if budget <= population || points < 2 {
        return vec![budget.max(population)];
    }
    let span = (budget - population) as f64;
    let mut grid: Vec<u64> = (0..points)
        .map(|i| population + (span * i as f64 / (points - 1) as f64).round() as u64)
        .collect();
    grid.dedup();
    grid
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Writes the median-of-trials best-so-far curve of each algorithm on
/// `problem`, returning the files written.
pub fn export_traces(dir: &Path, problem: ProblemId, checkpoints: usize) -> Result<Vec<PathBuf>> {
    let manifest = Manifest::load(dir)?;
    let mut written = Vec::new();
    for algorithm in manifest.algorithm_ids()? {
        let cell = manifest.cell(algorithm, problem).ok_or_else(|| {
            CliError::Runtime(format!("no trial records for ({algorithm}, {problem})"))
        })?;
        let mut traces = Vec::with_capacity(cell.seeds.len());
        for trial in 0..cell.seeds.len() {
            let path = trace_path(dir, algorithm, problem, trial);
            if !path.exists() {
                return Err(CliError::Runtime(format!(
                    "missing trace {} for ({algorithm}, {problem})",
                    path.display()
                )));
            }
            let mut trace = ConvergenceTrace::new();
            for point in read_table::<TracePoint>(&path)? {
                trace
                    .record(point.eval_count, point.best_fitness)
                    .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
            }
            traces.push(trace);
        }
        let grid = checkpoint_grid(manifest.population as u64, cell.budget, checkpoints);
        let rows: Vec<Vec<String>> = grid
            .iter()
            .map(|&e| {
                let mut values: Vec<f64> =
                    traces.iter().map(|t| t.best_at(e).unwrap_or(f64::INFINITY)).collect();
                vec![e.to_string(), fmt_num(median(&mut values))]
            })
            .collect();
        let meta = vec![
            ("algorithm", algorithm.to_string()),
            ("problem", problem.to_string()),
            ("content", format!("median over {} trials of best-so-far fitness", traces.len())),
            ("seed_policy", format!("{SEED_POLICY}, base_seed = {}", manifest.base_seed)),
            ("budget", cell.budget.to_string()),
        ];
        let path = curve_path(dir, problem, algorithm);
        write_table(&path, &meta, &["eval_count", "fitness"].map(String::from), &rows)?;
        written.push(path);
    }
    Ok(written)
}
