//! Seeded random streams.
//!
//! Every trial owns exactly one [`RngStream`]; trial `k` of an experiment with
//! base seed `s` uses seed `s + k` (wrapping), so trials are reproducible one
//! at a time and can run in any order or in parallel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Real;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Stream for trial `trial` of an experiment seeded with `base_seed`.
    pub fn for_trial(base_seed: u64, trial: usize) -> Self {
        Self::new(base_seed.wrapping_add(trial as u64))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Uniform draw in `(0, 1]`, safe to pass to a logarithm.
    #[inline]
    pub fn uniform_open_zero(&mut self) -> f64 {
        1.0 - self.uniform()
    }

    /// Uniform draw in `[lo, hi)`.
    #[inline]
    pub fn uniform_in<F: Real>(&mut self, lo: F, hi: F) -> F {
        lo + (hi - lo) * F::lit(self.uniform())
    }

    /// Uniform index in `0..n`. `n` must be positive.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    /// Bernoulli trial: `true` with probability `p`.
    #[inline]
    pub fn chance<F: Real>(&mut self, p: F) -> bool {
        F::lit(self.uniform()) < p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_seeds_give_identical_streams() {
        let mut a = RngStream::new(42);
        let mut b = RngStream::new(42);
        for _ in 0..1000 {
            assert_eq!(a.uniform().to_bits(), b.uniform().to_bits());
        }
    }

    #[test]
    fn different_trials_diverge() {
        let mut a = RngStream::for_trial(10, 0);
        let mut b = RngStream::for_trial(10, 1);
        assert_eq!(b.seed(), 11);
        let same = (0..64).filter(|_| a.uniform() == b.uniform()).count();
        assert!(same < 2);
    }

    #[test]
    fn draw_ranges() {
        let mut rng = RngStream::new(3);
        for _ in 0..100_000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
            let v = rng.uniform_open_zero();
            assert!(v > 0.0 && v <= 1.0);
            let w = rng.uniform_in(-2.0_f64, 3.0);
            assert!((-2.0..3.0).contains(&w));
            assert!(rng.index(7) < 7);
        }
    }

    #[test]
    fn wrapping_trial_seed() {
        assert_eq!(RngStream::for_trial(u64::MAX, 2).seed(), 1);
    }
}
