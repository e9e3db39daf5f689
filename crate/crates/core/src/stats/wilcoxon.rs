use std::fmt;
use std::str::FromStr;

use super::special::normal_cdf;
use crate::error::check_len;
use crate::{Error, Result};

/// Samples smaller than this use exact enumeration instead of the normal
/// approximation.
const EXACT_BELOW: usize = 5;
/// Largest pooled size for exact rank-sum enumeration.
const EXACT_RANK_SUM_MAX_POOLED: usize = 100;
const ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WilcoxonMode {
    /// Paired signed-rank test on `a[i] - b[i]`.
    #[default]
    SignedRank,
    /// Two independent samples, Mann-Whitney form.
    RankSum,
}

impl fmt::Display for WilcoxonMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SignedRank => "signed-rank",
            Self::RankSum => "rank-sum",
        })
    }
}

impl FromStr for WilcoxonMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "signed-rank" => Ok(Self::SignedRank),
            "rank-sum" => Ok(Self::RankSum),
            _ => Err(Error::invalid(format!("unknown Wilcoxon mode `{s}`"))),
        }
    }
}

/// `+` when the first sample is significantly smaller (better, for
/// minimization), `-` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WilcoxonSign {
    Plus,
    Minus,
}

impl fmt::Display for WilcoxonSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plus => "+",
            Self::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilcoxonResult {
    pub mode: WilcoxonMode,
    /// Signed-rank: `min(W+, W-)`; rank-sum: rank sum of the first sample.
    pub statistic: f64,
    /// Number of nonzero differences (signed-rank) or pooled size (rank-sum).
    pub n: usize,
    pub z: f64,
    /// Two-sided p-value.
    pub p: f64,
    /// One-sided p-value in the direction of the observed effect.
    pub p_one_sided: f64,
    /// Whether `p` came from exact enumeration.
    pub exact: bool,
    pub sign: WilcoxonSign,
}

pub fn wilcoxon_test(a: &[f64], b: &[f64], mode: WilcoxonMode) -> Result<WilcoxonResult> {
    match mode {
        WilcoxonMode::SignedRank => signed_rank(a, b),
        WilcoxonMode::RankSum => rank_sum(a, b),
    }
}

/// Midranks (1-based) of `values` and the tie term `sum(t^3 - t)`.
fn midranks(values: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        let t = (end - start) as f64;
        ties += t * t * t - t;
        start = end;
    }
    (ranks, ties)
}

fn signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    check_len(a.len(), b.len())?;
    if a.is_empty() {
        return Err(Error::EmptySample);
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|d| *d != 0.0).collect();
    let n = diffs.len();
    if n == 0 {
        return Ok(WilcoxonResult {
            mode: WilcoxonMode::SignedRank,
            statistic: 0.0,
            n: 0,
            z: 0.0,
            p: 1.0,
            p_one_sided: 1.0,
            exact: true,
            sign: WilcoxonSign::Minus,
        });
    }
    let magnitudes: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let (ranks, ties) = midranks(&magnitudes);
    let w_plus: f64 = diffs.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).map(|(_, r)| r).sum();
    let total = (n * (n + 1)) as f64 / 2.0;
    let w_minus = total - w_plus;
    let statistic = w_plus.min(w_minus);

    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - ties / 48.0;
    let z = if var > 0.0 { (statistic - mean) / var.sqrt() } else { 0.0 };

    let (p_one_sided, exact) = if n < EXACT_BELOW {
        (exact_signed_rank_lower_tail(&ranks, statistic), true)
    } else {
        (normal_cdf(z), false)
    };
    let p = (2.0 * p_one_sided).min(1.0);
    let sign = if p < ALPHA && w_plus < w_minus {
        WilcoxonSign::Plus
    } else {
        WilcoxonSign::Minus
    };
    Ok(WilcoxonResult {
        mode: WilcoxonMode::SignedRank,
        statistic,
        n,
        z,
        p,
        p_one_sided,
        exact,
        sign,
    })
}

/// `P(W+ <= w)` over all `2^n` equally likely sign patterns.
fn exact_signed_rank_lower_tail(ranks: &[f64], w: f64) -> f64 {
    let n = ranks.len();
    let patterns = 1u64 << n;
    let hits = (0..patterns)
        .filter(|mask| {
            let s: f64 = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| ranks[i]).sum();
            s <= w + 1e-9
        })
        .count();
    hits as f64 / patterns as f64
}

fn rank_sum(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let (n1, n2) = (a.len(), b.len());
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let total = pooled.len();
    let (ranks, ties) = midranks(&pooled);
    let statistic: f64 = ranks[..n1].iter().sum();

    let (f1, f2, ft) = (n1 as f64, n2 as f64, total as f64);
    let mean = f1 * (ft + 1.0) / 2.0;
    let var = f1 * f2 / 12.0 * ((ft + 1.0) - ties / (ft * (ft - 1.0)).max(1.0));
    let z = if var > 0.0 { (statistic - mean) / var.sqrt() } else { 0.0 };

    let small = n1.min(n2) < EXACT_BELOW && total <= EXACT_RANK_SUM_MAX_POOLED;
    let (p_one_sided, exact) = if small {
        let (lower, upper) = exact_rank_sum_tails(&ranks, n1, statistic);
        (lower.min(upper), true)
    } else {
        (normal_cdf(-z.abs()), false)
    };
    let p = (2.0 * p_one_sided).min(1.0);
    let sign = if p < ALPHA && statistic < mean {
        WilcoxonSign::Plus
    } else {
        WilcoxonSign::Minus
    };
    Ok(WilcoxonResult {
        mode: WilcoxonMode::RankSum,
        statistic,
        n: total,
        z,
        p,
        p_one_sided,
        exact,
        sign,
    })
}

/// `(P(W <= w), P(W >= w))` where `W` is the rank sum of `k` ranks drawn
/// without replacement from `ranks`, every subset equally likely.
fn exact_rank_sum_tails(ranks: &[f64], k: usize, w: f64) -> (f64, f64) {
    // Enumerate the smaller side; the complement's sum is determined.
    let total_sum: f64 = ranks.iter().sum();
    let (choose, target_from) = if k <= ranks.len() - k {
        (k, false)
    } else {
        (ranks.len() - k, true)
    };
    let (mut lower, mut upper, mut count) = (0u64, 0u64, 0u64);
    let mut picked = Vec::with_capacity(choose);
    visit_subsets(ranks, choose, 0, &mut picked, &mut |s| {
        let sum = if target_from { total_sum - s } else { s };
        count += 1;
        if sum <= w + 1e-9 {
            lower += 1;
        }
        if sum >= w - 1e-9 {
            upper += 1;
        }
    });
    (lower as f64 / count as f64, upper as f64 / count as f64)
}

fn visit_subsets(ranks: &[f64], k: usize, from: usize, picked: &mut Vec<f64>, f: &mut impl FnMut(f64)) {
    if picked.len() == k {
        f(picked.iter().sum());
        return;
    }
    let need = k - picked.len();
    for i in from..=ranks.len() - need {
        picked.push(ranks[i]);
        visit_subsets(ranks, k, i + 1, picked, f);
        picked.pop();
    }
}
