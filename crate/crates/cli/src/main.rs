use std::path::PathBuf;
use std::process::ExitCode;

use bbsca_cli::config::{parse_problems, ConfigFile};
use bbsca_cli::report::DEFAULT_CHECKPOINTS;
use bbsca_cli::{compare_report, export_traces, list_registry, run_experiment, CliError};
use bbsca_core::{AlgorithmId, ProblemId, WilcoxonMode};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bbsca", version, about = "Run and compare BBO, LX-BBO, SCA and LX-BBSCA")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List algorithms and problems.
    List,
    /// Run an experiment matrix and write a results directory.
    Run(RunArgs),
    /// Pairwise t-test and Wilcoxon report from a results directory.
    Compare(CompareArgs),
    /// Median convergence curves for one problem from a results directory.
    Traces(TracesArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML file with the same keys as the flags (underscores for dashes).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated algorithm ids (default: all four).
    #[arg(long, value_delimiter = ',')]
    algorithms: Option<Vec<String>>,
    /// Problem ids, ranges like F1..F13, or benchmarks / engineering / all.
    #[arg(long, value_delimiter = ',')]
    problems: Option<Vec<String>>,
    #[arg(long)]
    trials: Option<usize>,
    /// Objective evaluations per run [default: 30000, 1000 for engineering problems].
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    pop: Option<usize>,
    /// Base seed; trial k uses seed + k.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// progress | literal
    #[arg(long)]
    eq5_mode: Option<String>,
    /// two-pi | strict
    #[arg(long)]
    r2_mode: Option<String>,
    /// signed-rank | rank-sum
    #[arg(long)]
    wilcoxon: Option<String>,
    #[arg(long)]
    penalty_coeff: Option<f64>,
    #[arg(long)]
    penalty_exponent: Option<f64>,
    /// Round gear teeth counts to integers.
    #[arg(long)]
    integer_gear: bool,
    /// literal | reliability
    #[arg(long)]
    bridge_mode: Option<String>,
}

#[derive(Args)]
struct CompareArgs {
    /// Results directory written by `run`.
    #[arg(long)]
    results: PathBuf,
    /// Algorithm whose smaller fitness earns a `+`.
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long, value_delimiter = ',')]
    problems: Option<Vec<String>>,
    #[arg(long)]
    wilcoxon: Option<String>,
}

#[derive(Args)]
struct TracesArgs {
    #[arg(long)]
    results: PathBuf,
    #[arg(long)]
    problem: String,
    #[arg(long, default_value_t = DEFAULT_CHECKPOINTS)]
    checkpoints: usize,
}

fn run(args: RunArgs) -> Result<(), CliError> {
    let base = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let flags = ConfigFile {
        algorithms: args.algorithms,
        problems: args.problems,
        trials: args.trials,
        budget: args.budget,
        pop: args.pop,
        seed: args.seed,
        out: args.out,
        eq5_mode: args.eq5_mode,
        r2_mode: args.r2_mode,
        wilcoxon: args.wilcoxon,
        penalty_coeff: args.penalty_coeff,
        penalty_exponent: args.penalty_exponent,
        integer_gear: args.integer_gear.then_some(true),
        bridge_mode: args.bridge_mode,
        laplace: None,
    };
    let config = base.merge(flags).resolve()?;
    let outcome = run_experiment(&config)?;
    for (ai, alg) in config.algorithms.iter().enumerate() {
        for (pi, problem) in config.problems.iter().enumerate() {
            let s = &outcome.cells[&(ai, pi)].summary;
            println!("{alg:<8} {problem:<15} median {:e}  min {:e}", s.median, s.min);
        }
    }
    println!("results written to {}", config.out.display());
    Ok(())
}

fn compare(args: CompareArgs) -> Result<(), CliError> {
    let a: AlgorithmId = args.a.parse()?;
    let b: AlgorithmId = args.b.parse()?;
    let problems = args.problems.as_deref().map(parse_problems).transpose()?;
    let mode = args.wilcoxon.map(|m| m.parse::<WilcoxonMode>()).transpose()?;
    let path = compare_report(&args.results, a, b, problems.as_deref(), mode)?;
    println!("{}", path.display());
    Ok(())
}

fn traces(args: TracesArgs) -> Result<(), CliError> {
    let problem: ProblemId = args.problem.parse()?;
    for path in export_traces(&args.results, problem, args.checkpoints)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::List => {
            print!("{}", list_registry());
            Ok(())
        }
        Command::Run(args) => run(args),
        Command::Compare(args) => compare(args),
        Command::Traces(args) => traces(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
