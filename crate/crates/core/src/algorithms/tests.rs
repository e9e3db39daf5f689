use std::sync::atomic::{AtomicU64, Ordering};

use super::*;
use crate::{Benchmark, BenchmarkId, FnObjective, SearchSpace};

struct Counting<P> {
    inner: P,
    calls: AtomicU64,
}

impl<F: Real, P: Objective<F>> Objective<F> for Counting<P> {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn space(&self) -> &SearchSpace<F> {
        self.inner.space()
    }

    fn evaluate(&self, x: &[F], rng: &mut RngStream) -> F {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.evaluate(x, rng)
    }
}

fn sphere(dim: usize) -> Benchmark<f64> {
    Benchmark::with_dim(BenchmarkId::new(1).unwrap(), dim).unwrap()
}

#[test]
fn runs_are_deterministic_per_seed() {
    let f = sphere(5);
    let config = OptimizerConfig::new(10, 600);
    for alg in AlgorithmId::ALL {
        let a = alg.run(&f, &config, &mut RngStream::new(42)).unwrap();
        let b = alg.run(&f, &config, &mut RngStream::new(42)).unwrap();
        let c = alg.run(&f, &config, &mut RngStream::new(43)).unwrap();
        assert_eq!(a, b, "{alg}");
        assert_ne!(a.best, c.best, "{alg}");
    }
}

#[test]
fn evaluation_count_matches_budget() {
    for budget in [10u64, 57, 500, 1001] {
        for alg in AlgorithmId::ALL {
            let counting = Counting { inner: sphere(3), calls: AtomicU64::new(0) };
            let config = OptimizerConfig::new(10, budget);
            let run = alg.run(&counting, &config, &mut RngStream::new(1)).unwrap();
            let calls = counting.calls.load(Ordering::Relaxed);
            assert_eq!(run.evals_used, calls, "{alg} budget {budget}");
            assert!(calls <= budget);
            let n = 10;
            let per = alg.evals_per_iteration(n);
            assert_eq!(calls, n as u64 + (budget - n as u64) / per * per, "{alg} budget {budget}");
            assert_eq!(run.trace.last().unwrap().0, run.evals_used);
        }
    }
}

#[test]
fn trace_is_monotone_and_ends_at_best() {
    let f = Benchmark::<f64>::with_dim(BenchmarkId::new(9).unwrap(), 10).unwrap();
    let config = OptimizerConfig::new(20, 3_000);
    for alg in AlgorithmId::ALL {
        let run = alg.run(&f, &config, &mut RngStream::new(9)).unwrap();
        let pts = run.trace.points();
        assert!(pts.windows(2).all(|w| w[0].0 < w[1].0 && w[1].1 <= w[0].1), "{alg}");
        assert_eq!(pts.last().unwrap().1, run.best_fitness());
        assert_eq!(pts[0].0, 1);
        assert!(f.space().contains(&run.best.position));
    }
}

#[test]
fn constant_objective_gives_flat_trace() {
    let space = SearchSpace::uniform(4, -1.0, 1.0).unwrap();
    let flat = FnObjective::new("flat", space, |_: &[f64]| 3.5);
    let config = OptimizerConfig::new(8, 200);
    for alg in AlgorithmId::ALL {
        let run = alg.run(&flat, &config, &mut RngStream::new(0)).unwrap();
        assert_eq!(run.best_fitness(), 3.5);
        assert!(run.trace.points().iter().all(|p| p.1 == 3.5));
        assert_eq!(run.trace.points().len(), 2, "{alg}");
    }
}

#[test]
fn sca_with_zero_amplitude_never_moves() {
    let f = sphere(4);
    let mut config = OptimizerConfig::new(10, 1_000);
    config.r1_start = 0.0;
    let run = AlgorithmId::Sca.run(&f, &config, &mut RngStream::new(5)).unwrap();
    // Only the initial population can contribute improvements.
    assert!(run.trace.points().iter().all(|p| p.0 <= 10 || p.0 == 1_000));
}

#[test]
fn sca_solves_small_sphere() {
    let f = sphere(2);
    let config = OptimizerConfig::new(20, 2_000);
    let hits = (0..30)
        .filter(|&s| {
            let run = AlgorithmId::Sca.run(&f, &config, &mut RngStream::new(s)).unwrap();
            run.best_fitness() < 1e-1
        })
        .count();
    assert!(hits >= 27, "{hits}/30");
}

#[test]
fn every_algorithm_improves_on_random_search_start() {
    let f = sphere(10);
    let config = OptimizerConfig::new(30, 6_000);
    for alg in AlgorithmId::ALL {
        let mut gains = Vec::new();
        for s in 0..11 {
            let run = alg.run(&f, &config, &mut RngStream::new(s)).unwrap();
            let initial = run.trace.points()[0].1;
            gains.push(run.best_fitness() / initial);
        }
        gains.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(gains[5] < 0.5, "{alg}: median ratio {}", gains[5]);
    }
}

#[test]
fn hybrid_beats_parents_on_sphere() {
    let f = sphere(30);
    let config = OptimizerConfig::new(50, 30_000);
    let median = |alg: AlgorithmId| {
        let set = run_trials(&f, alg, &config, 9, 100).unwrap();
        set.summary.median
    };
    let hybrid = median(AlgorithmId::LxBbsca);
    assert!(hybrid < median(AlgorithmId::Bbo));
    assert!(hybrid < median(AlgorithmId::LxBbo));
}

#[test]
fn population_of_two_in_one_dimension() {
    let space = SearchSpace::uniform(1, -10.0, 10.0).unwrap();
    let f = FnObjective::new("abs", space, |x: &[f64]| x[0].abs());
    let mut config = OptimizerConfig::new(2, 100);
    config.elitism_count = 1;
    for alg in AlgorithmId::ALL {
        let run = alg.run(&f, &config, &mut RngStream::new(3)).unwrap();
        assert!(run.best_fitness().is_finite());
        assert!(run.best.position[0].abs() <= 10.0);
    }
}

#[test]
fn single_precision_run() {
    let f = Benchmark::<f32>::with_dim(BenchmarkId::new(1).unwrap(), 5).unwrap();
    let config = OptimizerConfig::<f32>::new(20, 2_000);
    let run = AlgorithmId::LxBbsca.run(&f, &config, &mut RngStream::new(1)).unwrap();
    assert!(run.best_fitness() < 1.0);
}

#[test]
fn nan_objective_treated_as_worst() {
    let space = SearchSpace::uniform(2, -1.0, 1.0).unwrap();
    let f = FnObjective::new("half-nan", space, |x: &[f64]| if x[0] > 0.0 { f64::NAN } else { x[1] * x[1] });
    let config = OptimizerConfig::new(10, 500);
    for alg in AlgorithmId::ALL {
        let run = alg.run(&f, &config, &mut RngStream::new(2)).unwrap();
        assert!(run.best_fitness().is_finite(), "{alg}");
    }
}

#[test]
fn config_validation() {
    let mut c = OptimizerConfig::<f64>::new(1, 100);
    assert!(c.validate().is_err());
    c.population_size = 10;
    c.eval_budget = 5;
    assert!(matches!(c.validate(), Err(Error::Config(_))));
    c.eval_budget = 100;
    c.elitism_count = 10;
    assert!(c.validate().is_err());
    c.elitism_count = 2;
    c.mutation_rate = 1.5;
    assert!(c.validate().is_err());
    c.mutation_rate = 0.01;
    assert!(c.validate().is_ok());
    assert_eq!(c.iterations(AlgorithmId::LxBbsca), 4);
    assert_eq!(c.iterations(AlgorithmId::Bbo), 9);
}

#[test]
fn algorithm_ids_parse() {
    assert_eq!("lx-bbsca".parse::<AlgorithmId>().unwrap(), AlgorithmId::LxBbsca);
    assert_eq!("LX_BBO".parse::<AlgorithmId>().unwrap(), AlgorithmId::LxBbo);
    assert!("PSO".parse::<AlgorithmId>().is_err());
    for alg in AlgorithmId::ALL {
        assert_eq!(alg.to_string().parse::<AlgorithmId>().unwrap(), alg);
    }
}

#[test]
fn trials_are_seeded_by_index() {
    let f = sphere(3);
    let config = OptimizerConfig::new(10, 300);
    let set = run_trials(&f, AlgorithmId::Bbo, &config, 4, 77).unwrap();
    assert_eq!(set.runs.len(), 4);
    for (k, run) in set.runs.iter().enumerate() {
        assert_eq!(run.seed, 77 + k as u64);
        let solo = AlgorithmId::Bbo.run(&f, &config, &mut RngStream::for_trial(77, k)).unwrap();
        assert_eq!(&solo, run);
    }
    assert!(run_trials(&f, AlgorithmId::Bbo, &config, 0, 0).is_err());
    let again = run_trials(&f, AlgorithmId::Bbo, &config, 4, 77).unwrap();
    assert_eq!(set, again);
}
