use std::fmt;

use super::special::{student_t_quantile, student_t_two_sided};
use crate::error::check_len;
use crate::{Error, Result};

/// Three-level significance conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignificanceLabel {
    /// `p <= 0.001`, printed `a+`.
    VerySignificant,
    /// `0.001 < p <= 0.05`, printed `a`.
    Significant,
    /// `p > 0.05`, printed `b`.
    NotSignificant,
}

impl SignificanceLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::VerySignificant => "a+",
            Self::Significant => "a",
            Self::NotSignificant => "b",
        }
    }
}

impl fmt::Display for SignificanceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn significance_label(p: f64) -> SignificanceLabel {
    if p > 0.05 {
        SignificanceLabel::NotSignificant
    } else if p > 0.001 {
        SignificanceLabel::Significant
    } else {
        SignificanceLabel::VerySignificant
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTestResult {
    pub n: usize,
    /// Mean of `a - b`.
    pub mean_diff: f64,
    /// Sample standard deviation of `a - b`.
    pub std_diff: f64,
    pub std_error: f64,
    pub t: f64,
    pub df: f64,
    /// 95% confidence interval of the mean difference.
    pub ci_low: f64,
    pub ci_high: f64,
    /// Two-sided p-value.
    pub p: f64,
    pub label: SignificanceLabel,
}

/// Paired two-sided t-test on the differences `a[i] - b[i]`.
///
/// With zero spread in the differences the statistic degenerates: a nonzero
/// mean gives `p = 0`, a zero mean gives `p = 1`.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<TTestResult> {
    check_len(a.len(), b.len())?;
    let n = a.len();
    if n < 2 {
        return Err(Error::invalid("paired t-test needs at least two pairs"));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let nf = n as f64;
    let mean_diff = diffs.iter().sum::<f64>() / nf;
    let ss: f64 = diffs.iter().map(|d| (d - mean_diff) * (d - mean_diff)).sum();
    let std_diff = (ss / (nf - 1.0)).sqrt();
    let std_error = std_diff / nf.sqrt();
    let df = nf - 1.0;

    let (t, p) = if std_error > 0.0 {
        let t = mean_diff / std_error;
        (t, student_t_two_sided(t, df))
    } else if mean_diff != 0.0 {
        (mean_diff.signum() * f64::INFINITY, 0.0)
    } else {
        (0.0, 1.0)
    };
    let half_width = student_t_quantile(0.975, df) * std_error;
    Ok(TTestResult {
        n,
        mean_diff,
        std_diff,
        std_error,
        t,
        df,
        ci_low: mean_diff - half_width,
        ci_high: mean_diff + half_width,
        p,
        label: significance_label(p),
    })
}
