//! Domain types shared by every optimizer: the feasible box, candidates,
//! populations and best-so-far bookkeeping.

use std::cmp::Ordering;

use crate::error::check_len;
use crate::{AlgorithmId, Error, Real, Result, RngStream};

/// Axis-aligned feasible box.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace<F> {
    lower: Vec<F>,
    upper: Vec<F>,
}

impl<F: Real> SearchSpace<F> {
    pub fn new(lower: Vec<F>, upper: Vec<F>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::config("search space needs at least one dimension"));
        }
        check_len(lower.len(), upper.len())?;
        if let Some(i) = (0..lower.len()).find(|&i| !(lower[i] < upper[i])) {
            return Err(Error::config(format!(
                "bound {i}: lower {} is not below upper {}",
                lower[i], upper[i]
            )));
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lo, hi]` in every dimension.
    pub fn uniform(dim: usize, lo: F, hi: F) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[F] {
        &self.lower
    }

    pub fn upper(&self) -> &[F] {
        &self.upper
    }

    pub fn contains(&self, x: &[F]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| v >= lo && v <= hi)
    }

    /// Projects `x` onto the box in place. Panics on length mismatch.
    pub fn clamp_in_place(&self, x: &mut [F]) {
        assert_eq!(x.len(), self.dim(), "position length must match the space");
        for ((v, &lo), &hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            // NaN coordinates are sent to the lower bound.
            *v = if *v >= lo {
                if *v > hi {
                    hi
                } else {
                    *v
                }
            } else {
                lo
            };
        }
    }

    /// Uniform sample of coordinate `i`.
    pub fn sample_coordinate(&self, i: usize, rng: &mut RngStream) -> F {
        rng.uniform_in(self.lower[i], self.upper[i])
    }

    pub fn sample(&self, rng: &mut RngStream) -> Vec<F> {
        (0..self.dim()).map(|i| self.sample_coordinate(i, rng)).collect()
    }
}

/// Projects `position` onto `space`: interior coordinates are kept, the rest
/// snap to the nearer bound.
pub fn clamp_to_bounds<F: Real>(position: &[F], space: &SearchSpace<F>) -> Result<Vec<F>> {
    check_len(space.dim(), position.len())?;
    let mut out = position.to_vec();
    space.clamp_in_place(&mut out);
    Ok(out)
}

/// A position with its fitness, which stays `None` until evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<F> {
    pub position: Vec<F>,
    pub fitness: Option<F>,
}

impl<F: Real> Candidate<F> {
    pub fn new(position: Vec<F>) -> Self {
        Self {
            position,
            fitness: None,
        }
    }

    pub fn evaluated(position: Vec<F>, fitness: F) -> Self {
        Self {
            position,
            fitness: Some(fitness),
        }
    }

    pub fn is_evaluated(&self) -> bool {
        self.fitness.is_some()
    }

    /// Fitness, or `+inf` when unset.
    pub fn fitness_or_inf(&self) -> F {
        self.fitness.unwrap_or_else(F::infinity)
    }
}

/// Minimization order; unset fitness sorts last.
pub(crate) fn compare_fitness<F: Real>(a: Option<F>, b: Option<F>) -> Ordering {
    match (a, b) {
        (Some(x), Some(y)) => x.partial_cmp(&y).unwrap_or(Ordering::Equal),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population<F> {
    pub members: Vec<Candidate<F>>,
}

impl<F: Real> Population<F> {
    pub fn new(members: Vec<Candidate<F>>) -> Self {
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Stable sort, best (lowest fitness) first.
    pub fn sort_best_first(&mut self) {
        self.members
            .sort_by(|a, b| compare_fitness(a.fitness, b.fitness));
    }

    pub fn is_sorted_best_first(&self) -> bool {
        self.members
            .windows(2)
            .all(|w| compare_fitness(w[0].fitness, w[1].fitness) != Ordering::Greater)
    }

    /// Lowest-fitness evaluated member.
    pub fn best(&self) -> Option<&Candidate<F>> {
        self.members
            .iter()
            .filter(|c| c.is_evaluated())
            .min_by(|a, b| compare_fitness(a.fitness, b.fitness))
    }
}

/// `n` unevaluated candidates drawn uniformly from `space`.
pub fn random_population<F: Real>(
    space: &SearchSpace<F>,
    n: usize,
    rng: &mut RngStream,
) -> Result<Population<F>> {
    if n < 2 {
        return Err(Error::config(format!(
            "population needs at least two members, got {n}"
        )));
    }
    Ok(Population::new(
        (0..n).map(|_| Candidate::new(space.sample(rng))).collect(),
    ))
}

/// Best-so-far fitness indexed by objective-evaluation count.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceTrace<F> {
    points: Vec<(u64, F)>,
}

impl<F: Real> ConvergenceTrace<F> {
    pub fn new() -> Self {
        Self { points: Vec::new() }
    }

    pub fn points(&self) -> &[(u64, F)] {
        &self.points
    }

    pub fn last(&self) -> Option<(u64, F)> {
        self.points.last().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Appends `(eval_count, min(fitness, best so far))`.
    pub fn record(&mut self, eval_count: u64, fitness: F) -> Result<()> {
        let best = match self.points.last() {
            Some(&(last, _)) if eval_count <= last => {
                return Err(Error::NonMonotoneTrace {
                    last,
                    found: eval_count,
                })
            }
            Some(&(_, prev)) if !(fitness < prev) => prev,
            _ => fitness,
        };
        self.points.push((eval_count, best));
        Ok(())
    }

    /// Best-so-far value after `eval_count` evaluations, if any point has
    /// been recorded by then.
    pub fn best_at(&self, eval_count: u64) -> Option<F> {
        let idx = self.points.partition_point(|&(e, _)| e <= eval_count);
        (idx > 0).then(|| self.points[idx - 1].1)
    }
}

/// Functional form of [`ConvergenceTrace::record`].
pub fn update_trace<F: Real>(
    mut trace: ConvergenceTrace<F>,
    eval_count: u64,
    fitness: F,
) -> Result<ConvergenceTrace<F>> {
    trace.record(eval_count, fitness)?;
    Ok(trace)
}

/// Outcome of one seeded optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult<F> {
    pub algorithm: AlgorithmId,
    pub problem: String,
    pub seed: u64,
    pub best: Candidate<F>,
    pub trace: ConvergenceTrace<F>,
    pub evals_used: u64,
}

impl<F: Real> RunResult<F> {
    pub fn best_fitness(&self) -> F {
        self.best.fitness_or_inf()
    }
}
