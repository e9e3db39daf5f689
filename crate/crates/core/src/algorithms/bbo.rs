use super::evaluator::Evaluator;
use super::{AlgorithmId, OptimizerConfig};
use crate::operators::{
    blend, blend_gamma, elitism_replace, laplace_pair, migration_rates, roulette_select,
    sample_beta, MigrationRates,
};
use crate::{Candidate, Objective, Population, Real, Result, RngStream, RunResult};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Migration {
    /// Copy the coordinate from the emigrating habitat.
    Copy,
    /// Laplace crossover with the emigrating habitat, blended by gamma.
    Laplace,
}

/// Classical biogeography-based optimization.
///
/// Each generation ranks the habitats, lets every coordinate of habitat `k`
/// immigrate with probability `lambda_k` from a donor chosen in proportion to
/// the emigration rates, resets coordinates uniformly with probability
/// `mutation_rate`, and restores the saved elites over the worst members.
pub fn run_bbo<F: Real, P: Objective<F> + ?Sized>(
    problem: &P,
    config: &OptimizerConfig<F>,
    rng: &mut RngStream,
) -> Result<RunResult<F>> {
    run_migration(problem, config, rng, AlgorithmId::Bbo, Migration::Copy)
}

/// Laplacian BBO: immigration blends the two Laplace-crossover children of
/// the habitat and its donor instead of copying; a coordinate that does not
/// immigrate instead receives a random coordinate from a donor.
pub fn run_lxbbo<F: Real, P: Objective<F> + ?Sized>(
    problem: &P,
    config: &OptimizerConfig<F>,
    rng: &mut RngStream,
) -> Result<RunResult<F>> {
    run_migration(problem, config, rng, AlgorithmId::LxBbo, Migration::Laplace)
}

fn run_migration<F: Real, P: Objective<F> + ?Sized>(
    problem: &P,
    config: &OptimizerConfig<F>,
    rng: &mut RngStream,
    algorithm: AlgorithmId,
    migration: Migration,
) -> Result<RunResult<F>> {
    config.validate()?;
    let n = config.population_size;
    let seed = rng.seed();
    let mut eval = Evaluator::new(problem, config.eval_budget);
    let space = eval.space();
    let dim = space.dim();
    let mut pop = eval.initial_population(n, rng)?;
    let rates = migration_rates(n, config.immigration_max, config.emigration_max)?;
    let horizon = config.iterations(algorithm);

    'generations: for t in 0..horizon {
        let elites: Vec<Candidate<F>> = pop.members[..config.elitism_count].to_vec();
        let old: Vec<Vec<F>> = pop.members.iter().map(|c| c.position.clone()).collect();
        let gamma = blend_gamma(t, horizon, &config.laplace, config.gamma_mode);
        let mut next = Vec::with_capacity(n);

        for (k, current) in old.iter().enumerate() {
            let mut z = current.clone();
            for s in 0..dim {
                if rng.chance(rates.immigration[k]) {
                    let j = donor(&rates, k, rng);
                    z[s] = match migration {
                        Migration::Copy => old[j][s],
                        Migration::Laplace => {
                            let beta = sample_beta(&config.laplace, rng);
                            let (y1, y2) = laplace_pair(current[s], old[j][s], beta);
                            blend(y1, y2, gamma)
                        }
                    };
                } else if migration == Migration::Laplace {
                    let j = donor(&rates, k, rng);
                    let r = rng.index(dim);
                    z[r] = old[j][r];
                }
                if rng.chance(config.mutation_rate) {
                    z[s] = space.sample_coordinate(s, rng);
                }
            }
            space.clamp_in_place(&mut z);
            let Some(f) = eval.evaluate(&z, rng) else {
                break 'generations;
            };
            next.push(Candidate::evaluated(z, f));
        }

        pop = Population::new(next);
        elitism_replace(&mut pop, &elites)?;
    }

    Ok(eval.finish(algorithm, seed))
}

fn donor<F: Real>(rates: &MigrationRates<F>, k: usize, rng: &mut RngStream) -> usize {
    roulette_select(&rates.emigration, Some(k), rng)
}
