use super::evaluator::Evaluator;
use super::{AlgorithmId, OptimizerConfig, ReplaceMode};
use crate::operators::{
    blend, blend_gamma, elitism_replace, laplace_pair, migration_rates, r1_schedule,
    roulette_select, sample_beta, sca_coordinate, ScaControls,
};
use crate::{Candidate, Objective, Population, Real, Result, RngStream, RunResult, SearchSpace};

/// Sine cosine algorithm with greedy acceptance: each solution moves around
/// the best-so-far point and keeps the move only when it improves.
pub fn run_sca<F: Real, P: Objective<F> + ?Sized>(
    problem: &P,
    config: &OptimizerConfig<F>,
    rng: &mut RngStream,
) -> Result<RunResult<F>> {
    config.validate()?;
    let seed = rng.seed();
    let mut eval = Evaluator::new(problem, config.eval_budget);
    let mut pop = eval.initial_population(config.population_size, rng)?;
    let mut gbest = pop.members[0].clone();
    let horizon = config.iterations(AlgorithmId::Sca);

    for t in 0..horizon {
        let r1 = r1_schedule(t, horizon, config.r1_start)?;
        if !sca_pass(&mut eval, &mut pop, &mut gbest, r1, config, rng) {
            break;
        }
    }
    Ok(eval.finish(AlgorithmId::Sca, seed))
}

/// The LX-BBSCA ensemble.
///
/// Every iteration runs a full sine-cosine pass, then a Laplace migration
/// pass in which each coordinate of habitat `k` is blended with a donor with
/// probability `lambda_k` and then, with probability `hybrid_replace_rate`,
/// replaced according to [`ReplaceMode`]. Both passes accept a habitat's new
/// position only if it improves, and elites are re-inserted at the end.
pub fn run_lxbbsca<F: Real, P: Objective<F> + ?Sized>(
    problem: &P,
    config: &OptimizerConfig<F>,
    rng: &mut RngStream,
) -> Result<RunResult<F>> {
    config.validate()?;
    let n = config.population_size;
    let seed = rng.seed();
    let mut eval = Evaluator::new(problem, config.eval_budget);
    let space = eval.space();
    let dim = space.dim();
    let mut pop = eval.initial_population(n, rng)?;
    let mut gbest = pop.members[0].clone();
    let rates = migration_rates(n, config.immigration_max, config.emigration_max)?;
    let horizon = config.iterations(AlgorithmId::LxBbsca);

    'iterations: for t in 0..horizon {
        let r1 = r1_schedule(t, horizon, config.r1_start)?;
        if !sca_pass(&mut eval, &mut pop, &mut gbest, r1, config, rng) {
            break;
        }

        pop.sort_best_first();
        let elites: Vec<Candidate<F>> = pop.members[..config.elitism_count].to_vec();
        let old: Vec<Vec<F>> = pop.members.iter().map(|c| c.position.clone()).collect();
        let gamma = blend_gamma(t, horizon, &config.laplace, config.gamma_mode);

        for k in 0..n {
            let mut z = old[k].clone();
            for s in 0..dim {
                if rng.chance(rates.immigration[k]) {
                    let j = roulette_select(&rates.emigration, Some(k), rng);
                    let beta = sample_beta(&config.laplace, rng);
                    let (y1, y2) = laplace_pair(old[k][s], old[j][s], beta);
                    z[s] = blend(y1, y2, gamma);
                }
                if rng.chance(config.hybrid_replace_rate) {
                    z[s] = match config.hybrid_replace {
                        ReplaceMode::Emigrant => {
                            old[roulette_select(&rates.emigration, Some(k), rng)][s]
                        }
                        ReplaceMode::UniformReset => space.sample_coordinate(s, rng),
                    };
                }
            }
            space.clamp_in_place(&mut z);
            let Some(f) = eval.evaluate(&z, rng) else {
                break 'iterations;
            };
            accept(&mut pop.members[k], &mut gbest, z, f);
        }

        elitism_replace(&mut pop, &elites)?;
    }

    Ok(eval.finish(AlgorithmId::LxBbsca, seed))
}

/// One sine-cosine sweep over the population. Returns `false` if the budget
/// ran out part-way.
fn sca_pass<F: Real, P: Objective<F> + ?Sized>(
    eval: &mut Evaluator<'_, F, P>,
    pop: &mut Population<F>,
    gbest: &mut Candidate<F>,
    r1: F,
    config: &OptimizerConfig<F>,
    rng: &mut RngStream,
) -> bool {
    let space: &SearchSpace<F> = eval.space();
    for i in 0..pop.len() {
        let mut x: Vec<F> = pop.members[i]
            .position
            .iter()
            .zip(&gbest.position)
            .map(|(&xi, &gi)| {
                let c = ScaControls::sample(r1, config.r2_range, rng);
                sca_coordinate(xi, gi, &c)
            })
            .collect();
        space.clamp_in_place(&mut x);
        let Some(f) = eval.evaluate(&x, rng) else {
            return false;
        };
        accept(&mut pop.members[i], gbest, x, f);
    }
    true
}

fn accept<F: Real>(member: &mut Candidate<F>, gbest: &mut Candidate<F>, x: Vec<F>, f: F) {
    if f < member.fitness_or_inf() {
        if f < gbest.fitness_or_inf() {
            *gbest = Candidate::evaluated(x.clone(), f);
        }
        *member = Candidate::evaluated(x, f);
    }
}
