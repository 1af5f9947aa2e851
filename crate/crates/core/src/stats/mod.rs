//! Descriptive statistics, correlation and group-comparison tests, and the
//! distribution functions behind their p-values.

mod anova;
mod correlation;
mod describe;
pub mod dist;
mod posthoc;
mod ptukey;
mod quadrature;
pub mod special;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use anova::{kruskal_wallis, one_way_anova, welch_anova};
pub use correlation::{
    mid_ranks, pearson, rank_difference_sum_sq, spearman, spearman_exact, EXACT_SPEARMAN_MAX_N,
};
pub use describe::{
    mean, mean_sem, quantile_sorted, sd, summarize, variance, Estimate, SampleSummary,
};
pub use dist::{dist_cdf, Distribution};
pub use posthoc::{homogeneous_subsets, posthoc, PosthocMethod, PosthocResult};
pub use ptukey::{range_cdf, studentized_range_cdf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestMethod {
    Pearson,
    Spearman,
    Anova,
    Welch,
    KruskalWallis,
}

impl fmt::Display for TestMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestMethod::Pearson => "pearson",
            TestMethod::Spearman => "spearman",
            TestMethod::Anova => "anova",
            TestMethod::Welch => "welch",
            TestMethod::KruskalWallis => "kruskal_wallis",
        })
    }
}

/// Outcome of a significance test. `p_value` is absent when the statistic is
/// undefined for the data (for example, every observation identical).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub method: TestMethod,
    pub statistic: f64,
    pub df1: f64,
    pub df2: Option<f64>,
    pub p_value: Option<f64>,
}

/// Significance label in the style of a printed results table.
pub fn significance_label(p: Option<f64>, strict: f64, loose: f64) -> String {
    match p {
        None => "p n/a".to_owned(),
        Some(p) if p < strict => format!("p < {strict}"),
        Some(p) if p < loose => format!("p < {loose}"),
        Some(_) => "n.s.".to_owned(),
    }
}
