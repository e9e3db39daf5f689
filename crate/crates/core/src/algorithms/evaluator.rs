use crate::domain::compare_fitness;
use crate::{
    random_population, AlgorithmId, Candidate, ConvergenceTrace, Objective, Population, Real,
    Result, RngStream, RunResult,
};

/// Budget-checked objective access shared by the optimizers.
///
/// Counts every objective call, keeps the best candidate seen and records the
/// best-so-far trace at each improvement. NaN objective values are treated as
/// `+inf`.
pub(crate) struct Evaluator<'a, F: Real, P: Objective<F> + ?Sized> {
    problem: &'a P,
    budget: u64,
    used: u64,
    trace: ConvergenceTrace<F>,
    best: Option<Candidate<F>>,
}

impl<'a, F: Real, P: Objective<F> + ?Sized> Evaluator<'a, F, P> {
    pub fn new(problem: &'a P, budget: u64) -> Self {
        Self {
            problem,
            budget,
            used: 0,
            trace: ConvergenceTrace::new(),
            best: None,
        }
    }

    pub fn space(&self) -> &'a crate::SearchSpace<F> {
        self.problem.space()
    }

    /// Evaluates `x`, or returns `None` once the budget is spent.
    pub fn evaluate(&mut self, x: &[F], rng: &mut RngStream) -> Option<F> {
        if self.used >= self.budget {
            return None;
        }
        let raw = self.problem.evaluate(x, rng);
        let f = if raw.is_nan() { F::infinity() } else { raw };
        self.used += 1;
        let improved = self
            .best
            .as_ref()
            .map_or(true, |b| compare_fitness(Some(f), b.fitness).is_lt());
        if improved {
            self.best = Some(Candidate::evaluated(x.to_vec(), f));
            self.trace
                .record(self.used, f)
                .expect("evaluation counter increases");
        }
        Some(f)
    }

    /// Samples and evaluates the initial population, sorted best first.
    pub fn initial_population(&mut self, n: usize, rng: &mut RngStream) -> Result<Population<F>> {
        let mut pop = random_population(self.space(), n, rng)?;
        for member in &mut pop.members {
            member.fitness = self.evaluate(&member.position, rng);
        }
        pop.sort_best_first();
        Ok(pop)
    }

    pub fn finish(mut self, algorithm: AlgorithmId, seed: u64) -> RunResult<F> {
        let best = self.best.expect("at least one evaluation");
        if let Some((last, _)) = self.trace.last() {
            if last < self.used {
                self.trace
                    .record(self.used, best.fitness_or_inf())
                    .expect("evaluation counter increases");
            }
        }
        RunResult {
            algorithm,
            problem: self.problem.name(),
            seed,
            best,
            trace: self.trace,
            evals_used: self.used,
        }
    }
}
