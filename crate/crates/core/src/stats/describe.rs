use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum;

/// A mean with its standard error; `sem` is absent for a single observation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub sem: Option<f64>,
}

pub fn mean(xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::Empty);
    }
    Ok(sum::sum(xs.iter().copied()) / xs.len() as f64)
}

/// Sample variance (n - 1 denominator). Needs at least two values.
pub fn variance(xs: &[f64]) -> Result<f64> {
    if xs.len() < 2 {
        return Err(Error::InsufficientData(
            "variance needs at least two values".into(),
        ));
    }
    let m = mean(xs)?;
    let ss = sum::sum(xs.iter().map(|x| (x - m) * (x - m)));
    Ok(ss / (xs.len() - 1) as f64)
}

pub fn sd(xs: &[f64]) -> Result<f64> {
    variance(xs).map(f64::sqrt)
}

pub fn mean_sem(xs: &[f64]) -> Result<Estimate> {
    let mean = mean(xs)?;
    let sem = if xs.len() >= 2 {
        Some(sd(xs)? / (xs.len() as f64).sqrt())
    } else {
        None
    };
    Ok(Estimate { mean, sem })
}

/// Quantile of already sorted data by linear interpolation between order
/// statistics, `h = (n - 1) p`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Box-plot ready description of a sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub n: usize,
    pub mean: f64,
    pub sd: Option<f64>,
    pub sem: Option<f64>,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub outliers: Vec<f64>,
}

/// Five-number summary plus mean/sd/sem. Whiskers reach the most extreme
/// observations within 1.5 IQR of the quartiles; anything beyond is an outlier.
pub fn summarize(xs: &[f64]) -> Result<SampleSummary> {
    if xs.is_empty() {
        return Err(Error::Empty);
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("non-finite observation".into()));
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);

    let q1 = quantile_sorted(&sorted, 0.25);
    let median = quantile_sorted(&sorted, 0.5);
    let q3 = quantile_sorted(&sorted, 0.75);
    let iqr = q3 - q1;
    let low_fence = q1 - 1.5 * iqr;
    let high_fence = q3 + 1.5 * iqr;

    let mut inside = sorted
        .iter()
        .copied()
        .filter(|&x| x >= low_fence && x <= high_fence);
    let whisker_low = inside.clone().next().unwrap_or(q1);
    let whisker_high = inside.next_back().unwrap_or(q3);
    let outliers = sorted
        .iter()
        .copied()
        .filter(|&x| x < low_fence || x > high_fence)
        .collect();

    let est = mean_sem(xs)?;
    let sd = if xs.len() >= 2 { Some(sd(xs)?) } else { None };
    Ok(SampleSummary {
        n: xs.len(),
        mean: est.mean,
        sd,
        sem: est.sem,
        median,
        q1,
        q3,
        whisker_low,
        whisker_high,
        outliers,
    })
}
