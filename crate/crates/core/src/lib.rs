//! Population-based continuous optimizers built around biogeography-based
//! optimization (BBO), its Laplace-crossover migration variant (LX-BBO), the
//! sine cosine algorithm (SCA) and the LX-BBSCA ensemble that chains an SCA
//! pass with Laplace migration every iteration.
//!
//! The crate also ships the 23 classic benchmark functions, five constrained
//! engineering design problems with penalty handling, and the descriptive and
//! inferential statistics used to compare optimizers across seeded trials.
//!
//! All numerical code is generic over [`Real`] (implemented for `f32` and
//! `f64`); the `*64` aliases at the crate root fix the scalar to `f64`.
//!
//! ```
//! use bbsca_core::{AlgorithmId, Benchmark, BenchmarkId, OptimizerConfig, RngStream};
//!
//! let sphere = Benchmark::<f64>::with_dim(BenchmarkId::new(1).unwrap(), 5).unwrap();
//! let config = OptimizerConfig::new(20, 2_000);
//! let mut rng = RngStream::new(7);
//! let run = AlgorithmId::LxBbsca.run(&sphere, &config, &mut rng).unwrap();
//! assert!(run.best_fitness() < 1.0);
//! assert!(run.evals_used <= 2_000);
//! ```

pub mod algorithms;
pub mod benchmarks;
pub mod catalog;
pub mod domain;
mod error;
pub mod objective;
pub mod operators;
pub mod problems;
mod real;
pub mod rng;
pub mod stats;

pub use algorithms::{run_trials, AlgorithmId, OptimizerConfig, ReplaceMode, TrialSet};
pub use benchmarks::{Benchmark, BenchmarkId};
pub use catalog::{ProblemId, ProblemOptions};
pub use domain::{
    clamp_to_bounds, random_population, update_trace, Candidate, ConvergenceTrace, Population,
    RunResult, SearchSpace,
};
pub use error::{Error, Result};
pub use objective::{FnObjective, Objective};
pub use operators::{GammaMode, LaplaceParams, MigrationRates, R2Range, ScaControls};
pub use problems::{BridgeConstraint, EngineeringId, EngineeringProblem, PenaltyPolicy};
pub use real::Real;
pub use rng::RngStream;
pub use stats::{SignificanceLabel, TTestResult, TrialSummary, WilcoxonMode, WilcoxonResult};

pub type SearchSpace64 = SearchSpace<f64>;
pub type Candidate64 = Candidate<f64>;
pub type Population64 = Population<f64>;
pub type ConvergenceTrace64 = ConvergenceTrace<f64>;
pub type RunResult64 = RunResult<f64>;
pub type OptimizerConfig64 = OptimizerConfig<f64>;
pub type LaplaceParams64 = LaplaceParams<f64>;
pub type Benchmark64 = Benchmark<f64>;
pub type EngineeringProblem64 = EngineeringProblem<f64>;
pub type TrialSummary64 = TrialSummary<f64>;
pub type TrialSet64 = TrialSet<f64>;

pub type SearchSpace32 = SearchSpace<f32>;
pub type Candidate32 = Candidate<f32>;
pub type OptimizerConfig32 = OptimizerConfig<f32>;
pub type Benchmark32 = Benchmark<f32>;
