use super::dist::Distribution;
use super::TestMethod;
use super::TestResult;
use crate::error::{Error, Result};
use crate::sum;

/// Ranks starting at 1; tied values share the mean of the ranks they span.
pub fn mid_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && xs[order[j]] == xs[order[i]] {
            j += 1;
        }
        // positions i..j hold ranks i+1..=j
        let rank = (i + j + 1) as f64 / 2.0;
        for &idx in &order[i..j] {
            ranks[idx] = rank;
        }
        i = j;
    }
    ranks
}

/// Sum of squared differences between the mid-ranks of `x` and `y`.
pub fn rank_difference_sum_sq(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y, 1)?;
    let (rx, ry) = (mid_ranks(x), mid_ranks(y));
    Ok(sum::sum(rx.iter().zip(&ry).map(|(a, b)| (a - b) * (a - b))))
}

fn check_pair(x: &[f64], y: &[f64], min_n: usize) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < min_n {
        return Err(Error::InsufficientData(format!(
            "need at least {min_n} pairs, got {}",
            x.len()
        )));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("non-finite observation".into()));
    }
    Ok(())
}

fn product_moment(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mx = sum::sum(x.iter().copied()) / n;
    let my = sum::sum(y.iter().copied()) / n;
    let sxy = sum::sum(x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)));
    let sxx = sum::sum(x.iter().map(|a| (a - mx) * (a - mx)));
    let syy = sum::sum(y.iter().map(|b| (b - my) * (b - my)));
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ConstantInput);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Two-sided p for a correlation coefficient via t = r sqrt((n-2)/(1-r^2)).
fn correlation_p(r: f64, n: usize) -> f64 {
    let df = (n - 2) as f64;
    let denom = 1.0 - r * r;
    if denom <= 0.0 {
        return 0.0;
    }
    let t = r * (df / denom).sqrt();
    let p = 2.0
        * Distribution::StudentT { df }
            .sf(t.abs())
            .expect("df is positive");
    p.clamp(0.0, 1.0)
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<TestResult> {
    check_pair(x, y, 3)?;
    let r = product_moment(x, y)?;
    Ok(TestResult {
        method: TestMethod::Pearson,
        statistic: r,
        df1: (x.len() - 2) as f64,
        df2: None,
        p_value: Some(correlation_p(r, x.len())),
    })
}

/// Spearman's rho as the Pearson correlation of mid-rank vectors, with the
/// t approximation for significance.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<TestResult> {
    check_pair(x, y, 3)?;
    let rho = product_moment(&mid_ranks(x), &mid_ranks(y))?;
    Ok(TestResult {
        method: TestMethod::Spearman,
        statistic: rho,
        df1: (x.len() - 2) as f64,
        df2: None,
        p_value: Some(correlation_p(rho, x.len())),
    })
}

/// Largest sample for which [`spearman_exact`] enumerates permutations.
pub const EXACT_SPEARMAN_MAX_N: usize = 8;

/// Spearman's rho with an exact two-sided permutation p-value: the share of
/// all n! rearrangements of the y ranks whose |rho| reaches the observed one.
pub fn spearman_exact(x: &[f64], y: &[f64]) -> Result<TestResult> {
    check_pair(x, y, 3)?;
    if x.len() > EXACT_SPEARMAN_MAX_N {
        return Err(Error::InvalidParameter(format!(
            "exact Spearman supports n <= {EXACT_SPEARMAN_MAX_N}, got {}",
            x.len()
        )));
    }
    let rx = mid_ranks(x);
    let mut ry = mid_ranks(y);
    let observed = product_moment(&rx, &ry)?;
    let threshold = observed.abs() - 1e-12;

    let mut hits = 0u64;
    let mut total = 0u64;
    // Heap's algorithm over the y ranks.
    let n = ry.len();
    let mut c = vec![0usize; n];
    let mut visit = |ry: &[f64]| {
        total += 1;
        if product_moment(&rx, ry).map(f64::abs).unwrap_or(0.0) >= threshold {
            hits += 1;
        }
    };
    visit(&ry);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                ry.swap(0, i);
            } else {
                ry.swap(c[i], i);
            }
            visit(&ry);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(TestResult {
        method: TestMethod::Spearman,
        statistic: observed,
        df1: (n - 2) as f64,
        df2: None,
        p_value: Some(hits as f64 / total as f64),
    })
}
