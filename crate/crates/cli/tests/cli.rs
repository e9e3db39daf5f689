use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bbsca_cli::config::{parse_problems, ConfigFile};
use bbsca_cli::output::{read_table, Manifest};
use serde::Deserialize;
use tempfile::TempDir;

fn bbsca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bbsca"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn small_run(dir: &Path, extra: &[&str]) -> Output {
    let out = dir.to_str().unwrap();
    let mut args = vec![
        "run", "--algorithms", "LXBBSCA,BBO", "--problems", "F1,gear-train", "--trials", "4",
        "--budget", "600", "--pop", "10", "--out", out,
    ];
    args.extend_from_slice(extra);
    bbsca(&args)
}

#[derive(Debug, Deserialize)]
struct ComparisonLine {
    problem: String,
    p: f64,
    conclusion: String,
    wilcoxon_p: f64,
    sign: String,
}

#[derive(Debug, Deserialize)]
struct CurveLine {
    eval_count: u64,
    fitness: f64,
}

#[test]
fn list_shows_registry() {
    let out = bbsca(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for needle in ["LXBBSCA", "F23", "Shekel 10", "bridge-network", "[-5, 10] x [0, 15]"] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

#[test]
fn run_writes_self_describing_tables() {
    let tmp = TempDir::new().unwrap();
    let out = small_run(tmp.path(), &[]);
    assert!(out.status.success(), "{}", stderr(&out));
    let dir = tmp.path();

    let summary = fs::read_to_string(dir.join("summary.csv")).unwrap();
    assert!(summary.lines().any(|l| l == "algorithm,problem,Min,Max,Std,Average,Median"));
    assert!(summary.contains("# seed_policy: trial k uses seed base_seed + k"));
    assert_eq!(summary.lines().filter(|l| !l.starts_with('#')).count(), 1 + 4);

    let trials = fs::read_to_string(dir.join("trials/LXBBSCA__F1.csv")).unwrap();
    for key in ["# algorithm: LXBBSCA", "# problem: F1", "# budget: 600", "# seed_policy"] {
        assert!(trials.contains(key), "{key}");
    }
    let trace = fs::read_to_string(dir.join("traces/BBO__gear-train/trial_003.csv")).unwrap();
    assert!(trace.contains("# seed: 4"));

    let engineering = fs::read_to_string(dir.join("engineering.csv")).unwrap();
    assert!(engineering.contains("published reference,CS,16,43,19,49"));
    assert!(engineering.contains("this run,LXBBSCA"));

    let manifest = Manifest::load(dir).unwrap();
    assert_eq!(manifest.trials, 4);
    assert_eq!(manifest.cells.len(), 4);
    assert_eq!(manifest.cells[0].seeds, vec![1, 2, 3, 4]);

    let rows: Vec<ComparisonLine> = read_table(&dir.join("comparisons/LXBBSCA_vs_BBO.csv")).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1].problem, "gear-train");
}

#[test]
fn reruns_are_byte_identical() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    assert!(small_run(a.path(), &["--seed", "9"]).status.success());
    assert!(small_run(b.path(), &["--seed", "9"]).status.success());
    for file in ["summary.csv", "manifest.toml", "engineering.csv", "trials/BBO__F1.csv", "traces/LXBBSCA__F1/trial_002.csv"] {
        assert_eq!(
            fs::read(a.path().join(file)).unwrap(),
            fs::read(b.path().join(file)).unwrap(),
            "{file}"
        );
    }
}

#[test]
fn compare_with_itself_is_not_significant() {
    let tmp = TempDir::new().unwrap();
    assert!(small_run(tmp.path(), &[]).status.success());
    let dir = tmp.path().to_str().unwrap();
    let out = bbsca(&["compare", "--results", dir, "--a", "BBO", "--b", "BBO"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows: Vec<ComparisonLine> = read_table(&tmp.path().join("comparisons/BBO_vs_BBO.csv")).unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert_eq!(row.p, 1.0);
        assert_eq!(row.conclusion, "b");
        assert_eq!(row.wilcoxon_p, 1.0);
        assert_eq!(row.sign, "-");
    }
    let out = bbsca(&["compare", "--results", dir, "--a", "LXBBSCA", "--b", "BBO", "--problems", "F1", "--wilcoxon", "rank-sum"]);
    assert!(out.status.success());
    let text = fs::read_to_string(tmp.path().join("comparisons/LXBBSCA_vs_BBO.csv")).unwrap();
    assert!(text.contains("# wilcoxon: rank-sum"));
    assert_eq!(text.lines().filter(|l| l.starts_with("F1,")).count(), 1);
}

#[test]
fn compare_names_missing_records() {
    let tmp = TempDir::new().unwrap();
    assert!(small_run(tmp.path(), &[]).status.success());
    let dir = tmp.path().to_str().unwrap();
    let out = bbsca(&["compare", "--results", dir, "--a", "SCA", "--b", "BBO"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("(SCA, F1)"), "{}", stderr(&out));
}

#[test]
fn traces_are_monotone_on_grid() {
    let tmp = TempDir::new().unwrap();
    assert!(small_run(tmp.path(), &[]).status.success());
    let dir = tmp.path().to_str().unwrap();
    let out = bbsca(&["traces", "--results", dir, "--problem", "gear-train", "--checkpoints", "20"]);
    assert!(out.status.success(), "{}", stderr(&out));
    for alg in ["LXBBSCA", "BBO"] {
        let path = tmp.path().join(format!("curves/gear-train__{alg}.csv"));
        let curve: Vec<CurveLine> = read_table(&path).unwrap();
        assert_eq!(curve.first().unwrap().eval_count, 10);
        assert_eq!(curve.last().unwrap().eval_count, 600);
        assert_eq!(curve.len(), 20);
        assert!(curve.windows(2).all(|w| w[1].fitness <= w[0].fitness));
    }
}

#[test]
fn validation_errors_exit_one() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let out = bbsca(&["run", "--out", dir]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no problems"));

    let out = bbsca(&["run", "--problems", "F1,F42", "--out", dir]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("F42"));

    let out = bbsca(&["run", "--problems", "F1", "--algorithms", "PSO", "--out", dir]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("PSO"));

    let out = bbsca(&["run", "--problems", "F1", "--pop", "1", "--out", dir]);
    assert_eq!(out.status.code(), Some(1));

    let out = bbsca(&["run", "--problems", "F1", "--eq5-mode", "sideways", "--out", dir]);
    assert_eq!(out.status.code(), Some(1));

    let out = bbsca(&["run", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!tmp.path().join("summary.csv").exists());
}

#[test]
fn unwritable_output_exits_two() {
    let tmp = TempDir::new().unwrap();
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = bbsca(&[
        "run", "--problems", "F16", "--algorithms", "SCA", "--trials", "2", "--budget", "100",
        "--pop", "10", "--out", blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let tmp = TempDir::new().unwrap();
    let config = tmp.path().join("exp.toml");
    let out_dir = tmp.path().join("res");
    fs::write(
        &config,
        format!(
            "algorithms = [\"SCA\"]\nproblems = [\"space-capsule\"]\ntrials = 3\npop = 8\nseed = 40\nout = {:?}\ninteger_gear = true\n[laplace]\nscale = 0.25\n",
            out_dir.to_str().unwrap()
        ),
    )
    .unwrap();
    let out = bbsca(&["run", "--config", config.to_str().unwrap(), "--trials", "2", "--penalty-coeff", "1000"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let manifest = Manifest::load(&out_dir).unwrap();
    assert_eq!(manifest.trials, 2);
    assert_eq!(manifest.population, 8);
    assert_eq!(manifest.base_seed, 40);
    assert_eq!(manifest.laplace.scale, 0.25);
    assert_eq!(manifest.penalty.coefficient, 1000.0);
    assert!(manifest.integer_gear);
    assert_eq!(manifest.cells[0].budget, 1_000);
    assert_eq!(manifest.cells[0].seeds, vec![40, 41]);

    fs::write(&config, "trails = 3\n").unwrap();
    let out = bbsca(&["run", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn merge_prefers_overrides() {
    let base = ConfigFile { trials: Some(5), pop: Some(20), ..ConfigFile::default() };
    let top = ConfigFile { trials: Some(7), ..ConfigFile::default() };
    let merged = base.merge(top);
    assert_eq!(merged.trials, Some(7));
    assert_eq!(merged.pop, Some(20));
}

#[test]
fn problem_lists_expand() {
    let items = |s: &str| vec![s.to_string()];
    assert_eq!(parse_problems(&items("F1..F13")).unwrap().len(), 13);
    assert_eq!(parse_problems(&items("benchmarks,engineering")).unwrap().len(), 28);
    assert_eq!(parse_problems(&items("F2,F2,f2")).unwrap().len(), 1);
    assert!(parse_problems(&items("F5..F3")).is_err());
    let resolved = ConfigFile {
        problems: Some(items("gear-train,F1")),
        ..ConfigFile::default()
    }
    .resolve()
    .unwrap();
    assert_eq!(resolved.budget_for(resolved.problems[0]), 1_000);
    assert_eq!(resolved.budget_for(resolved.problems[1]), 30_000);
    assert_eq!(resolved.algorithms.len(), 4);
}
