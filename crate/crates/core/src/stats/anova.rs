use super::correlation::mid_ranks;
use super::describe::{mean, variance};
use super::dist::Distribution;
use super::{TestMethod, TestResult};
use crate::error::{Error, Result};
use crate::sum;

/// Per-group counts, means and variances plus the pooled within-group terms.
#[derive(Debug, Clone)]
pub(crate) struct GroupStats {
    pub n: Vec<f64>,
    pub means: Vec<f64>,
    pub variances: Vec<f64>,
    pub ss_between: f64,
    pub ss_within: f64,
    pub total_n: f64,
}

impl GroupStats {
    pub fn new<S: AsRef<[f64]>>(groups: &[S]) -> Result<Self> {
        if groups.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "need at least two groups, got {}",
                groups.len()
            )));
        }
        for (i, g) in groups.iter().enumerate() {
            let g = g.as_ref();
            if g.len() < 2 {
                return Err(Error::InsufficientData(format!(
                    "group {i} has {} observation(s); need at least two",
                    g.len()
                )));
            }
            if g.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "group {i} has a non-finite observation"
                )));
            }
        }
        let n: Vec<f64> = groups.iter().map(|g| g.as_ref().len() as f64).collect();
        let means = groups
            .iter()
            .map(|g| mean(g.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let variances = groups
            .iter()
            .map(|g| variance(g.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let total_n: f64 = n.iter().sum();
        let grand_mean = sum::sum(groups.iter().flat_map(|g| g.as_ref().iter().copied())) / total_n;
        let ss_between = sum::sum(
            n.iter()
                .zip(&means)
                .map(|(&ni, &m)| ni * (m - grand_mean) * (m - grand_mean)),
        );
        let ss_within = sum::sum(
            groups
                .iter()
                .zip(&means)
                .flat_map(|(g, &m)| g.as_ref().iter().map(move |x| (x - m) * (x - m))),
        );
        Ok(Self {
            n,
            means,
            variances,
            ss_between,
            ss_within,
            total_n,
        })
    }

    pub fn k(&self) -> usize {
        self.n.len()
    }

    pub fn df_within(&self) -> f64 {
        self.total_n - self.k() as f64
    }

    pub fn ms_within(&self) -> f64 {
        self.ss_within / self.df_within()
    }
}

/// Classical one-way ANOVA. When both sums of squares vanish the F ratio is
/// undefined and the p-value is reported as absent.
pub fn one_way_anova<S: AsRef<[f64]>>(groups: &[S]) -> Result<TestResult> {
    let g = GroupStats::new(groups)?;
    let df1 = (g.k() - 1) as f64;
    let df2 = g.df_within();
    let ms_between = g.ss_between / df1;
    let ms_within = g.ms_within();

    let (statistic, p_value) = if ms_within == 0.0 {
        if ms_between == 0.0 {
            (0.0, None)
        } else {
            (f64::INFINITY, Some(0.0))
        }
    } else {
        let f = ms_between / ms_within;
        (f, Some(Distribution::FisherF { df1, df2 }.sf(f)?))
    };
    Ok(TestResult {
        method: TestMethod::Anova,
        statistic,
        df1,
        df2: Some(df2),
        p_value,
    })
}

/// Welch's heteroscedastic one-way ANOVA.
pub fn welch_anova<S: AsRef<[f64]>>(groups: &[S]) -> Result<TestResult> {
    let g = GroupStats::new(groups)?;
    if let Some(i) = g.variances.iter().position(|&v| v <= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "group {i} has zero variance"
        )));
    }
    let k = g.k() as f64;
    let w: Vec<f64> = g.n.iter().zip(&g.variances).map(|(n, v)| n / v).collect();
    let w_sum = sum::sum(w.iter().copied());
    let weighted_mean = sum::sum(w.iter().zip(&g.means).map(|(w, m)| w * m)) / w_sum;
    let between = sum::sum(
        w.iter()
            .zip(&g.means)
            .map(|(w, m)| w * (m - weighted_mean) * (m - weighted_mean)),
    ) / (k - 1.0);
    let lambda = sum::sum(
        w.iter()
            .zip(&g.n)
            .map(|(w, n)| (1.0 - w / w_sum).powi(2) / (n - 1.0)),
    );
    let denom = 1.0 + 2.0 * (k - 2.0) / (k * k - 1.0) * lambda;
    let statistic = between / denom;
    let df1 = k - 1.0;
    let df2 = (k * k - 1.0) / (3.0 * lambda);
    Ok(TestResult {
        method: TestMethod::Welch,
        statistic,
        df1,
        df2: Some(df2),
        p_value: Some(Distribution::FisherF { df1, df2 }.sf(statistic)?),
    })
}

/// Kruskal–Wallis H with tie correction, referred to chi-squared on k - 1 df.
pub fn kruskal_wallis<S: AsRef<[f64]>>(groups: &[S]) -> Result<TestResult> {
    if groups.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least two groups, got {}",
            groups.len()
        )));
    }
    if let Some(i) = groups.iter().position(|g| g.as_ref().is_empty()) {
        return Err(Error::InsufficientData(format!("group {i} is empty")));
    }
    let pooled: Vec<f64> = groups
        .iter()
        .flat_map(|g| g.as_ref().iter().copied())
        .collect();
    if pooled.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("non-finite observation".into()));
    }
    let n = pooled.len() as f64;
    if pooled.len() < 3 {
        return Err(Error::InsufficientData(
            "need at least three observations".into(),
        ));
    }
    let ranks = mid_ranks(&pooled);
    let df1 = (groups.len() - 1) as f64;

    let mut offset = 0;
    let mut weighted = 0.0;
    for g in groups {
        let len = g.as_ref().len();
        let r: f64 = ranks[offset..offset + len].iter().sum();
        weighted += r * r / len as f64;
        offset += len;
    }
    let h = 12.0 / (n * (n + 1.0)) * weighted - 3.0 * (n + 1.0);

    let mut sorted = pooled;
    sorted.sort_by(f64::total_cmp);
    let mut ties = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        ties += t * t * t - t;
        i = j;
    }
    let correction = 1.0 - ties / (n * n * n - n);
    if correction <= 0.0 {
        // every observation identical
        return Ok(TestResult {
            method: TestMethod::KruskalWallis,
            statistic: 0.0,
            df1,
            df2: None,
            p_value: None,
        });
    }
    let statistic = (h / correction).max(0.0);
    Ok(TestResult {
        method: TestMethod::KruskalWallis,
        statistic,
        df1,
        df2: None,
        p_value: Some(Distribution::ChiSquared { df: df1 }.sf(statistic)?),
    })
}
