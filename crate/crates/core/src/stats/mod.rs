//! Descriptive summaries of trial outcomes and the paired comparison tests
//! (Student's t and Wilcoxon) with their significance labels.

mod special;
mod ttest;
mod wilcoxon;

pub use special::{normal_cdf, regularized_incomplete_beta, student_t_cdf, student_t_quantile, student_t_two_sided};
pub use ttest::{paired_t_test, significance_label, SignificanceLabel, TTestResult};
pub use wilcoxon::{wilcoxon_test, WilcoxonMode, WilcoxonResult, WilcoxonSign};

use crate::{Error, Real, Result};

/// Min, max, sample standard deviation, mean and median of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSummary<F> {
    pub n: usize,
    pub min: F,
    pub max: F,
    pub std: F,
    pub average: F,
    pub median: F,
}

pub fn summarize<F: Real>(samples: &[F]) -> Result<TrialSummary<F>> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let n = samples.len();
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / F::lit(2.0)
    };
    // Sum in sorted order so the result does not depend on input order.
    let average = sorted.iter().copied().sum::<F>() / F::from_count(n);
    let std = if n > 1 {
        let ss: F = sorted.iter().map(|&x| (x - average) * (x - average)).sum();
        (ss / F::from_count(n - 1)).sqrt()
    } else {
        F::zero()
    };
    Ok(TrialSummary {
        n,
        min: sorted[0],
        max: sorted[n - 1],
        std,
        average: average.max(sorted[0]).min(sorted[n - 1]),
        median,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn five_values() {
        let s = summarize(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!((s.min, s.max, s.average, s.median, s.n), (1.0, 5.0, 3.0, 3.0, 5));
        assert_abs_diff_eq!(s.std, 2.5_f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn singleton() {
        let s = summarize(&[4.25]).unwrap();
        assert_eq!((s.min, s.max, s.average, s.median, s.std), (4.25, 4.25, 4.25, 4.25, 0.0));
    }

    #[test]
    fn even_median() {
        assert_eq!(summarize(&[4.0, 1.0, 3.0, 2.0]).unwrap().median, 2.5);
    }

    #[test]
    fn empty_is_an_error() {
        assert_eq!(summarize::<f64>(&[]), Err(Error::EmptySample));
    }

    #[test]
    fn works_for_f32() {
        let s = summarize(&[1.0f32, 2.0, 3.0]).unwrap();
        assert_eq!(s.median, 2.0f32);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn ordering_invariants_and_permutation_invariance(
                mut xs in proptest::collection::vec(-1e6f64..1e6, 1..40),
                seed in any::<u64>(),
            ) {
                let s = summarize(&xs).unwrap();
                prop_assert!(s.min <= s.median && s.median <= s.max);
                prop_assert!(s.min <= s.average && s.average <= s.max);
                prop_assert!(s.std >= 0.0);
                let mut rng = crate::RngStream::new(seed);
                for i in (1..xs.len()).rev() {
                    xs.swap(i, rng.index(i + 1));
                }
                prop_assert_eq!(summarize(&xs).unwrap(), s);
            }
        }
    }
}
