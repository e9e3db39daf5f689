//! Acceptance suite: one `[PASS]` / `[FAIL]` line per criterion.
//! Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bbsca_cli::config::DEFAULT_BUDGET;
use bbsca_cli::output::read_table;
use bbsca_cli::{compare_report, export_traces, run_experiment, ExperimentConfig};
use bbsca_core::operators::{
    blend_gamma, blend_offspring, laplace_beta, laplace_crossover, migration_rates, r1_schedule,
    sca_step, LaplaceParams, ScaControls,
};
use bbsca_core::problems::{
    bridge_cost, capsule_cost, gear_train_brute_force, EngineeringProblem,
};
use bbsca_core::stats::{significance_label, student_t_two_sided, wilcoxon_test};
use bbsca_core::{
    run_trials, AlgorithmId, Benchmark, BenchmarkId, BridgeConstraint, EngineeringId, GammaMode,
    OptimizerConfig, ProblemId, RngStream, SignificanceLabel, WilcoxonMode,
};
use serde::Deserialize;

const TRIALS: usize = 30;
const POP: usize = 50;
const SEED: u64 = 1;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn operators() -> Outcome {
    let p = |a: f64, b: f64| LaplaceParams { location: a, scale: b, ..LaplaceParams::default() };
    let mut failures = Vec::new();
    fn check(failures: &mut Vec<String>, name: &str, got: f64, want: f64) {
        if !close(got, want, 1e-9) {
            failures.push(format!("{name}: {got} != {want}"));
        }
    }

    check(&mut failures, "beta(1)", laplace_beta(1.0, &p(0.0, 0.5)).unwrap(), 0.0);
    check(&mut failures, "beta(0.5)", laplace_beta(0.5, &p(0.0, 0.5)).unwrap(), -0.5 * 0.5f64.ln());
    check(&mut failures, "beta(0.9)", laplace_beta(0.9, &p(1.0, 1.0)).unwrap(), 1.0 + 0.9f64.ln());

    let (y1, y2) = laplace_crossover(&[3.0], &[3.0], &[0.7]).unwrap();
    check(&mut failures, "lx equal y1", y1[0], 3.0);
    check(&mut failures, "lx equal y2", y2[0], 3.0);
    let (y1, y2) = laplace_crossover(&[2.0], &[1.0], &[0.5]).unwrap();
    check(&mut failures, "lx y1", y1[0], 2.5);
    check(&mut failures, "lx y2", y2[0], 1.5);
    let (y1, y2) = laplace_crossover(&[0.0], &[4.0], &[-0.25]).unwrap();
    check(&mut failures, "lx neg y1", y1[0], 1.0);
    check(&mut failures, "lx neg y2", y2[0], 5.0);

    let g = |gmin: f64, gmax: f64, k: f64| LaplaceParams {
        gamma_min: gmin,
        gamma_max: gmax,
        exponent: k,
        ..LaplaceParams::default()
    };
    check(&mut failures, "gamma t=0", blend_gamma(0, 100, &g(0.0, 1.0, 1.0), GammaMode::Progress), 0.0);
    check(&mut failures, "gamma t=T", blend_gamma(100, 100, &g(0.0, 1.0, 2.0), GammaMode::Progress), 1.0);
    check(&mut failures, "gamma literal", blend_gamma(7, 100, &g(0.2, 0.8, 2.0), GammaMode::Literal), 0.56);

    check(&mut failures, "blend 1", blend_offspring(&[2.0], &[4.0], 1.0).unwrap()[0], 2.0);
    check(&mut failures, "blend 0", blend_offspring(&[2.0], &[4.0], 0.0).unwrap()[0], 4.0);
    check(&mut failures, "blend 0.25", blend_offspring(&[2.0], &[4.0], 0.25).unwrap()[0], 3.5);

    let r2 = migration_rates::<f64>(2, 1.0, 1.0).unwrap();
    check(&mut failures, "lambda n=2 best", r2.immigration[0], 0.0);
    check(&mut failures, "lambda n=2 worst", r2.immigration[1], 1.0);
    check(&mut failures, "mu n=2 best", r2.emigration[0], 1.0);
    check(&mut failures, "mu n=2 worst", r2.emigration[1], 0.0);
    let r5 = migration_rates::<f64>(5, 1.0, 1.0).unwrap();
    check(&mut failures, "lambda n=5 rank 3", r5.immigration[2], 0.5);
    check(&mut failures, "mu n=5 rank 3", r5.emigration[2], 0.5);
    let r10 = migration_rates::<f64>(10, 1.0, 1.0).unwrap();
    if !r10.immigration.windows(2).all(|w| w[0] < w[1]) {
        failures.push("lambda not increasing".into());
    }
    for (l, m) in r10.immigration.iter().zip(&r10.emigration) {
        if !close(l + m, 1.0, 1e-12) {
            failures.push("lambda + mu != 1".into());
        }
    }

    check(&mut failures, "r1 t=0", r1_schedule(0, 10, 2.0).unwrap(), 2.0);
    check(&mut failures, "r1 t=T", r1_schedule(10, 10, 2.0).unwrap(), 0.0);
    check(&mut failures, "r1 t=5", r1_schedule(5, 10, 2.0).unwrap(), 1.0);

    let c = |r1: f64, r2: f64, r3: f64, r4: f64| ScaControls { r1, r2, r3, r4 };
    check(&mut failures, "sca x=gbest", sca_step(&[1.5], &[1.5], &[c(1.7, 0.4, 1.0, 0.2)]).unwrap()[0], 1.5);
    check(&mut failures, "sca sine", sca_step(&[0.0], &[1.0], &[c(1.0, std::f64::consts::FRAC_PI_2, 1.0, 0.3)]).unwrap()[0], 1.0);
    check(&mut failures, "sca cosine", sca_step(&[0.0], &[1.0], &[c(1.0, 0.0, 2.0, 0.9)]).unwrap()[0], 2.0);

    let mut rng = RngStream::new(2024);
    let draws = 100_000;
    let params = p(0.0, 1.0);
    let mut betas: Vec<f64> = (0..draws)
        .map(|_| laplace_beta(rng.uniform_open_zero(), &params).unwrap())
        .collect();
    let positive = betas.iter().filter(|&&b| b > 0.0).count() as f64 / draws as f64;
    betas.sort_by(f64::total_cmp);
    let median = betas[draws / 2];
    if (positive - 0.5).abs() > 0.01 {
        failures.push(format!("beta sign split {positive}"));
    }
    if median.abs() > 0.05 {
        failures.push(format!("beta median {median}"));
    }

    let mut worst_mid: f64 = 0.0;
    let mut worst_identity: f64 = 0.0;
    for _ in 0..10_000 {
        let x1: f64 = rng.uniform_in(-100.0, 100.0);
        let x2 = rng.uniform_in(-100.0, 100.0);
        let beta = rng.uniform_in(-3.0, 3.0);
        let (y1, y2) = laplace_crossover(&[x1], &[x2], &[beta]).unwrap();
        let lhs = (y1[0] + y2[0]) / 2.0;
        let rhs = (x1 + x2) / 2.0 + beta * (x1 - x2);
        worst_mid = worst_mid.max((lhs - rhs).abs() / rhs.abs().max(1.0));
        let frozen = sca_step(&[x1], &[x2], &[c(0.0, beta, 1.0, 0.5)]).unwrap();
        worst_identity = worst_identity.max((frozen[0] - x1).abs());
    }
    if worst_mid > 1e-12 {
        failures.push(format!("midpoint identity error {worst_mid:e}"));
    }
    if worst_identity != 0.0 {
        failures.push("r1 = 0 is not the identity".into());
    }

    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("all examples within 1e-9; beta positive share {positive:.4}, median {median:.4}")
        } else {
            failures.join("; ")
        },
    )
}

fn benchmarks() -> Outcome {
    let mut worst = (String::new(), 0.0f64);
    for id in BenchmarkId::all() {
        let b = Benchmark::<f64>::new(id);
        let x = b.x_star().unwrap().to_vec();
        let err = (b.evaluate_deterministic(&x).unwrap() - b.f_min()).abs();
        if err > worst.1 {
            worst = (id.to_string(), err);
        }
    }
    let mut rng = RngStream::new(8);
    let mut symmetry: f64 = 0.0;
    let mut additivity: f64 = 0.0;
    for _ in 0..1_000 {
        let x: Vec<f64> = (0..10).map(|_| rng.uniform_in(-5.0, 5.0)).collect();
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        for n in [1u8, 7, 9, 10, 11] {
            let b = Benchmark::<f64>::with_dim(BenchmarkId::new(n).unwrap(), 10).unwrap();
            let (a, c) = (b.evaluate_deterministic(&x).unwrap(), b.evaluate_deterministic(&neg).unwrap());
            symmetry = symmetry.max((a - c).abs() / a.abs().max(1.0));
        }
        let sphere = |v: &[f64]| {
            Benchmark::<f64>::with_dim(BenchmarkId::new(1).unwrap(), v.len())
                .unwrap()
                .evaluate_deterministic(v)
                .unwrap()
        };
        let whole = sphere(&x);
        additivity = additivity.max((whole - sphere(&x[..4]) - sphere(&x[4..])).abs() / whole.max(1.0));
    }
    let pass = worst.1 <= 1e-6 && symmetry <= 1e-12 && additivity <= 1e-12;
    outcome(
        pass,
        format!(
            "max |f(x*) - f_min| = {:e} ({}), symmetry error {symmetry:e}, additivity error {additivity:e}",
            worst.1, worst.0
        ),
    )
}

fn ordering() -> Outcome {
    let config = OptimizerConfig::new(POP, DEFAULT_BUDGET);
    let mut wins = Vec::new();
    let mut losses = Vec::new();
    for n in 1..=13u8 {
        let id = BenchmarkId::new(n).unwrap();
        let problem = Benchmark::<f64>::new(id);
        let median = |alg: AlgorithmId| {
            run_trials(&problem, alg, &config, TRIALS, SEED).unwrap().summary.median
        };
        let hybrid = median(AlgorithmId::LxBbsca);
        let bbo = median(AlgorithmId::Bbo);
        let lxbbo = median(AlgorithmId::LxBbo);
        if hybrid < bbo && hybrid < lxbbo {
            wins.push(id.to_string());
        } else {
            losses.push(format!("{id} ({hybrid:.4e} vs BBO {bbo:.4e}, LX-BBO {lxbbo:.4e})"));
        }
    }
    outcome(
        wins.len() >= 10,
        format!("LX-BBSCA median strictly best on {}/13; not on: {}", wins.len(), losses.join(", ")),
    )
}

fn gear_train() -> Outcome {
    let config = OptimizerConfig::new(POP, DEFAULT_BUDGET);
    let continuous = EngineeringProblem::<f64>::new(EngineeringId::GearTrain);
    let cont = run_trials(&continuous, AlgorithmId::LxBbsca, &config, TRIALS, SEED).unwrap();
    let cont_best = cont.summary.min;

    let started = Instant::now();
    let (argmin, oracle) = gear_train_brute_force();
    let oracle_time = started.elapsed();

    let integer = EngineeringProblem::<f64>::new(EngineeringId::GearTrain).with_integer_gear(true);
    let int = run_trials(&integer, AlgorithmId::LxBbsca, &config, TRIALS, SEED).unwrap();
    let within = int.final_fitness().iter().filter(|&&f| f <= 10.0 * oracle).count();
    let share = within as f64 / TRIALS as f64;

    let pass = cont_best <= 1e-9 && oracle_time < Duration::from_secs(60) && share >= 0.8;
    outcome(
        pass,
        format!(
            "continuous best {cont_best:.3e}; oracle {oracle:.6e} at {argmin:?} in {:.2}s; integer mode within 10x in {within}/{TRIALS} seeds (median {:.3e})",
            oracle_time.as_secs_f64(),
            int.summary.median
        ),
    )
}

fn bridge() -> Outcome {
    let at_half: f64 = bridge_cost(&[0.5; 5]);
    let exact = 5.0 * 0.0006f64.exp();
    let rounded = (at_half * 1000.0).round() / 1000.0;
    let problem = EngineeringProblem::<f64>::new(EngineeringId::BridgeNetwork)
        .with_bridge_constraint(BridgeConstraint::LiteralBox);
    let config = OptimizerConfig::new(POP, bbsca_cli::config::DEFAULT_ENGINEERING_BUDGET);
    let set = run_trials(&problem, AlgorithmId::LxBbsca, &config, TRIALS, SEED).unwrap();
    let best = set.summary.min;
    let pass = close(at_half, exact, 1e-12) && rounded == 5.003 && best <= 5.01;
    outcome(
        pass,
        format!("cost(0.5^5) = {at_half:.10} (reference 5.003); LX-BBSCA best {best:.7} over {TRIALS} trials, literal box"),
    )
}

#[derive(Deserialize)]
struct EngineeringLine {
    source: String,
    technique: String,
    objective: f64,
    reported_objective: Option<f64>,
    objective_delta: Option<f64>,
}

fn capsule(scratch: &Path) -> Outcome {
    let cost: f64 = capsule_cost(&[0.5; 4]);
    let oracle = 1100.0 * 0.5f64.powf(0.6);
    let mut config = ExperimentConfig::new(
        vec![AlgorithmId::LxBbsca],
        vec![ProblemId::Engineering(EngineeringId::SpaceCapsule)],
        scratch.join("capsule"),
    );
    config.trials = 5;
    if let Err(e) = run_experiment(&config) {
        return outcome(false, format!("report run failed: {e}"));
    }
    let lines: Vec<EngineeringLine> = match read_table(&config.out.join("engineering.csv")) {
        Ok(lines) => lines,
        Err(e) => return outcome(false, format!("report unreadable: {e}")),
    };
    let recorded = lines.iter().find(|l| {
        l.source == "published reference" && l.technique == "LX-BBO" && l.reported_objective == Some(725.08)
    });
    let delta_ok = recorded.is_some_and(|l| {
        close(l.objective, oracle, 1e-6) && l.objective_delta.is_some_and(|d| close(d, oracle - 725.08, 1e-9))
    });
    outcome(
        close(cost, oracle, 1e-6) && delta_ok,
        format!(
            "cost(0.5^4) = {cost:.6} vs 1100*0.5^0.6 = {oracle:.6}; report delta vs 725.08 = {}",
            recorded
                .and_then(|l| l.objective_delta)
                .map_or("missing".to_string(), |d| format!("{d:+.6}"))
        ),
    )
}

fn statistics() -> Outcome {
    let labels = [
        (0.0, SignificanceLabel::VerySignificant),
        (0.009, SignificanceLabel::Significant),
        (0.693, SignificanceLabel::NotSignificant),
    ];
    let labels_ok = labels.iter().all(|&(p, want)| significance_label(p) == want);
    let a: Vec<f64> = (0..30).map(|i| i as f64).collect();
    let b: Vec<f64> = (0..30).map(|i| i as f64 + 1.0 + i as f64 * 0.37).collect();
    let w = wilcoxon_test(&a, &b, WilcoxonMode::SignedRank).unwrap();
    let p = student_t_two_sided(2.045, 29.0);
    let p3 = format!("{p:.2e}");
    let pass = labels_ok && close(w.z, -4.782, 1e-3) && p3 == "5.00e-2";
    outcome(
        pass,
        format!(
            "labels F1/F14/F21 = {}/{}/{}; saturated z = {:.6}; p(|t| = 2.045, df 29) = {p:.6}",
            significance_label(0.0),
            significance_label(0.009),
            significance_label(0.693),
            w.z
        ),
    )
}

fn snapshot(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut files = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                files.insert(path.strip_prefix(dir).unwrap().to_path_buf(), fs::read(&path).unwrap());
            }
        }
    }
    files
}

fn timed_run(budget: u64) -> f64 {
    let problem = Benchmark::<f64>::new(BenchmarkId::new(1).unwrap());
    let config = OptimizerConfig::new(POP, budget);
    (0..3)
        .map(|_| {
            let started = Instant::now();
            run_trials(&problem, AlgorithmId::LxBbsca, &config, 4, SEED).unwrap();
            started.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

fn determinism_and_scaling(scratch: &Path) -> Outcome {
    let problems = vec![
        ProblemId::Benchmark(BenchmarkId::new(1).unwrap()),
        ProblemId::Benchmark(BenchmarkId::new(7).unwrap()),
        ProblemId::Engineering(EngineeringId::GearTrain),
        ProblemId::Engineering(EngineeringId::BridgeNetwork),
    ];
    let mut snapshots = Vec::new();
    for run in ["first", "second"] {
        let mut config = ExperimentConfig::new(AlgorithmId::ALL.to_vec(), problems.clone(), scratch.join(run));
        config.trials = 5;
        config.budget = Some(2_000);
        run_experiment(&config).unwrap();
        compare_report(&config.out, AlgorithmId::LxBbsca, AlgorithmId::Sca, None, None).unwrap();
        for &p in &problems {
            export_traces(&config.out, p, 51).unwrap();
        }
        snapshots.push(snapshot(&config.out));
    }
    let identical = snapshots[0] == snapshots[1];

    let base = timed_run(20_000);
    let doubled = timed_run(40_000);
    let ratio = doubled / base;
    outcome(
        identical && (1.0..=3.0).contains(&ratio),
        format!(
            "{} files byte-identical: {identical}; time {base:.3}s -> {doubled:.3}s for doubled budget, ratio {ratio:.2}",
            snapshots[0].len()
        ),
    )
}

fn main() -> ExitCode {
    let scratch = std::env::temp_dir().join(format!("bbsca-acceptance-{}", std::process::id()));
    fs::create_dir_all(&scratch).unwrap();
    type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("operators", Box::new(operators)),
        ("benchmark fidelity", Box::new(benchmarks)),
        ("F1-F13 ordering", Box::new(ordering)),
        ("gear train", Box::new(gear_train)),
        ("bridge network", Box::new(bridge)),
        ("space capsule", Box::new(|| capsule(&scratch))),
        ("statistics", Box::new(statistics)),
        ("determinism and scaling", Box::new(|| determinism_and_scaling(&scratch))),
    ];
    let limits = [10.0, 10.0, 600.0, f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::INFINITY];
    let mut failed = 0;
    for (i, ((name, check), limit)) in criteria.iter().zip(limits).enumerate() {
        let started = Instant::now();
        let mut result = check();
        let secs = started.elapsed().as_secs_f64();
        if secs > limit {
            result.pass = false;
            result.detail.push_str(&format!("; exceeded {limit}s"));
        }
        let tag = if result.pass { "PASS" } else { "FAIL" };
        if !result.pass {
            failed += 1;
        }
        println!("[{tag}] {} {name} ({secs:.1}s): {}", i + 1, result.detail);
    }
    let _ = fs::remove_dir_all(&scratch);
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
