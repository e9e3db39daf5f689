//! Variation operators: Laplace spread sampling and crossover, offspring
//! blending, rank-based migration rates, the sine-cosine position update and
//! two-member elitism.
//!
//! Everything here is a pure function of its arguments; randomness enters only
//! through explicit draws or an [`RngStream`] argument.

use std::fmt;
use std::str::FromStr;

use crate::domain::compare_fitness;
use crate::error::check_len;
use crate::{Candidate, Error, Population, Real, Result, RngStream};

/// Laplace spread distribution plus the offspring blending schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceParams<F> {
    /// Location `a`.
    pub location: F,
    /// Scale `b`, strictly positive.
    pub scale: F,
    pub gamma_min: F,
    pub gamma_max: F,
    /// Exponent `k` of the blending schedule.
    pub exponent: F,
}

impl<F: Real> Default for LaplaceParams<F> {
    fn default() -> Self {
        Self {
            location: F::zero(),
            scale: F::lit(0.5),
            gamma_min: F::zero(),
            gamma_max: F::one(),
            exponent: F::lit(2.0),
        }
    }
}

impl<F: Real> LaplaceParams<F> {
    pub fn validate(&self) -> Result<()> {
        if !(self.scale > F::zero()) {
            return Err(Error::config(format!(
                "Laplace scale must be positive, got {}",
                self.scale
            )));
        }
        let (lo, hi) = (self.gamma_min, self.gamma_max);
        if !(F::zero() <= lo && lo <= hi && hi <= F::one()) {
            return Err(Error::config(format!(
                "need 0 <= gamma_min <= gamma_max <= 1, got {lo} and {hi}"
            )));
        }
        if !self.location.is_finite() || !self.exponent.is_finite() {
            return Err(Error::config("Laplace location and exponent must be finite"));
        }
        Ok(())
    }
}

/// Laplace spread factor for a uniform draw `u` in `(0, 1]`:
/// `a - b ln u` when `u <= 1/2`, `a + b ln u` otherwise.
pub fn laplace_beta<F: Real>(u: F, params: &LaplaceParams<F>) -> Result<F> {
    if !(u > F::zero() && u <= F::one()) {
        return Err(Error::invalid(format!("u must lie in (0, 1], got {u}")));
    }
    let log_u = u.ln();
    Ok(if u <= F::lit(0.5) {
        params.location - params.scale * log_u
    } else {
        params.location + params.scale * log_u
    })
}

/// Draws a spread factor from `rng`.
pub fn sample_beta<F: Real>(params: &LaplaceParams<F>, rng: &mut RngStream) -> F {
    let u = F::lit(rng.uniform_open_zero());
    // u can round to 0 only for f32 with a vanishing draw; fall back to 1.
    let u = if u > F::zero() { u } else { F::one() };
    laplace_beta(u, params).expect("u drawn from (0, 1]")
}

/// Scalar Laplace crossover: returns `(x1 + b (x1 - x2), x2 + b (x1 - x2))`.
#[inline]
pub fn laplace_pair<F: Real>(x1: F, x2: F, beta: F) -> (F, F) {
    let spread = beta * (x1 - x2);
    (x1 + spread, x2 + spread)
}

/// Laplace crossover applied coordinate-wise with one spread factor per
/// coordinate.
pub fn laplace_crossover<F: Real>(x1: &[F], x2: &[F], beta: &[F]) -> Result<(Vec<F>, Vec<F>)> {
    check_len(x1.len(), x2.len())?;
    check_len(x1.len(), beta.len())?;
    Ok(x1
        .iter()
        .zip(x2)
        .zip(beta)
        .map(|((&a, &b), &s)| laplace_pair(a, b, s))
        .unzip())
}

/// How the blending weight evolves with the generation counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaMode {
    /// `gamma_min + (gamma_max - gamma_min) * (t / T)^k`.
    #[default]
    Progress,
    /// `gamma_min + (gamma_max - gamma_min)^k`, constant over the run.
    Literal,
}

impl fmt::Display for GammaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Progress => "progress",
            Self::Literal => "literal",
        })
    }
}

impl FromStr for GammaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "progress" => Ok(Self::Progress),
            "literal" => Ok(Self::Literal),
            _ => Err(Error::invalid(format!("unknown gamma mode `{s}`"))),
        }
    }
}

/// Blending weight for generation `t` of `t_max`.
pub fn blend_gamma<F: Real>(t: usize, t_max: usize, params: &LaplaceParams<F>, mode: GammaMode) -> F {
    let span = params.gamma_max - params.gamma_min;
    match mode {
        GammaMode::Progress => {
            let progress = if t_max == 0 {
                F::one()
            } else {
                (F::from_count(t.min(t_max)) / F::from_count(t_max)).min(F::one())
            };
            params.gamma_min + span * progress.powf(params.exponent)
        }
        GammaMode::Literal => params.gamma_min + span.powf(params.exponent),
    }
}

#[inline]
pub fn blend<F: Real>(y1: F, y2: F, gamma: F) -> F {
    gamma * y1 + (F::one() - gamma) * y2
}

/// Convex combination `gamma * y1 + (1 - gamma) * y2`.
pub fn blend_offspring<F: Real>(y1: &[F], y2: &[F], gamma: F) -> Result<Vec<F>> {
    check_len(y1.len(), y2.len())?;
    Ok(y1.iter().zip(y2).map(|(&a, &b)| blend(a, b, gamma)).collect())
}

/// Per-rank immigration (`lambda`) and emigration (`mu`) probabilities.
/// Index 0 is the best-ranked habitat.
#[derive(Debug, Clone, PartialEq)]
pub struct MigrationRates<F> {
    pub immigration: Vec<F>,
    pub emigration: Vec<F>,
}

/// Linear migration model: for rank `r` (1 = best) of `n`,
/// `mu = E (n - r) / (n - 1)` and `lambda = I (r - 1) / (n - 1)`.
pub fn migration_rates<F: Real>(n: usize, immigration_max: F, emigration_max: F) -> Result<MigrationRates<F>> {
    if n < 2 {
        return Err(Error::config(format!("migration needs at least two habitats, got {n}")));
    }
    if !(immigration_max > F::zero() && emigration_max > F::zero()) {
        return Err(Error::config("maximum migration rates must be positive"));
    }
    let denom = F::from_count(n - 1);
    let immigration = (0..n)
        .map(|k| immigration_max * F::from_count(k) / denom)
        .collect();
    let emigration = (0..n)
        .map(|k| emigration_max * F::from_count(n - 1 - k) / denom)
        .collect();
    Ok(MigrationRates {
        immigration,
        emigration,
    })
}

/// Roulette-wheel index selection proportional to `weights`, never returning
/// `exclude`. Falls back to a uniform pick among the other indices when they
/// all carry zero weight.
pub fn roulette_select<F: Real>(weights: &[F], exclude: Option<usize>, rng: &mut RngStream) -> usize {
    let n = weights.len();
    debug_assert!(n >= 2 || exclude.is_none());
    let eligible = |k: usize| Some(k) != exclude;
    let total: F = (0..n).filter(|&k| eligible(k)).map(|k| weights[k]).sum();
    if total > F::zero() {
        let target = F::lit(rng.uniform()) * total;
        let mut acc = F::zero();
        let mut last = None;
        for k in (0..n).filter(|&k| eligible(k)) {
            if weights[k] > F::zero() {
                acc = acc + weights[k];
                last = Some(k);
                if target < acc {
                    return k;
                }
            }
        }
        if let Some(k) = last {
            return k;
        }
    }
    let others = if exclude.is_some() { n - 1 } else { n };
    let pick = rng.index(others);
    match exclude {
        Some(e) if pick >= e => pick + 1,
        _ => pick,
    }
}

/// Support of the `r2` draw in the sine-cosine update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum R2Range {
    /// `[0, 2 pi]`, a full period of sine and cosine.
    #[default]
    TwoPi,
    /// `[0, 2]`.
    Strict,
}

impl fmt::Display for R2Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::TwoPi => "two-pi",
            Self::Strict => "strict",
        })
    }
}

impl FromStr for R2Range {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "two-pi" | "2pi" | "twopi" => Ok(Self::TwoPi),
            "strict" | "two" => Ok(Self::Strict),
            _ => Err(Error::invalid(format!("unknown r2 range `{s}`"))),
        }
    }
}

/// Random controls of one coordinate of the sine-cosine update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaControls<F> {
    pub r1: F,
    pub r2: F,
    pub r3: F,
    pub r4: F,
}

impl<F: Real> ScaControls<F> {
    /// Draws `r2`, `r3` in `[0, 2)` and `r4` in `[0, 1)` for amplitude `r1`.
    pub fn sample(r1: F, range: R2Range, rng: &mut RngStream) -> Self {
        let r2_max = match range {
            R2Range::TwoPi => F::TAU(),
            R2Range::Strict => F::lit(2.0),
        };
        Self {
            r1,
            r2: r2_max * F::lit(rng.uniform()),
            r3: F::lit(2.0) * F::lit(rng.uniform()),
            r4: F::lit(rng.uniform()),
        }
    }
}

/// Amplitude `a (1 - t / T)`, falling linearly from `a` to 0.
pub fn r1_schedule<F: Real>(t: usize, t_max: usize, a: F) -> Result<F> {
    if t_max == 0 {
        return Err(Error::config("r1 schedule needs at least one iteration"));
    }
    if t > t_max {
        return Err(Error::invalid(format!("iteration {t} exceeds {t_max}")));
    }
    Ok(a * (F::one() - F::from_count(t) / F::from_count(t_max)))
}

/// Sine-cosine update of one coordinate.
#[inline]
pub fn sca_coordinate<F: Real>(x: F, destination: F, c: &ScaControls<F>) -> F {
    let distance = (c.r3 * destination - x).abs();
    let wave = if c.r4 <= F::lit(0.5) { c.r2.sin() } else { c.r2.cos() };
    x + c.r1 * wave * distance
}

/// Moves `x` around the destination point `gbest`: per coordinate,
/// `x + r1 sin(r2) |r3 gbest - x|` if `r4 <= 0.5`, else the cosine form.
/// The result is not clamped.
pub fn sca_step<F: Real>(x: &[F], gbest: &[F], controls: &[ScaControls<F>]) -> Result<Vec<F>> {
    check_len(x.len(), gbest.len())?;
    check_len(x.len(), controls.len())?;
    Ok(x.iter()
        .zip(gbest)
        .zip(controls)
        .map(|((&xi, &gi), c)| sca_coordinate(xi, gi, c))
        .collect())
}

/// Re-inserts saved elites into a population by overwriting its worst
/// members.
///
/// An elite whose position is already present is skipped, and an elite only
/// displaces a member it beats, so the best fitness never regresses and
/// re-applying the same elites is a no-op. The population is left sorted best
/// first.
pub fn elitism_replace<F: Real>(population: &mut Population<F>, elites: &[Candidate<F>]) -> Result<()> {
    if elites.len() > population.len() {
        return Err(Error::config(format!(
            "{} elites do not fit a population of {}",
            elites.len(),
            population.len()
        )));
    }
    population.sort_best_first();
    let mut slot = population.len();
    for elite in elites {
        if population.members.iter().any(|m| m.position == elite.position) {
            continue;
        }
        if slot == 0 {
            break;
        }
        let worst = &population.members[slot - 1];
        if compare_fitness(elite.fitness, worst.fitness).is_lt() {
            population.members[slot - 1] = elite.clone();
            slot -= 1;
        }
    }
    population.sort_best_first();
    Ok(())
}
