//! Pairwise post-hoc comparisons after a one-way layout, with homogeneous
//! subsets in the style of SPSS output.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::anova::GroupStats;
use super::dist::Distribution;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosthocMethod {
    /// Pooled-variance pairwise t tests, p multiplied by the number of pairs.
    Bonferroni,
    /// Tukey–Kramer studentized range test.
    Tukey,
    /// Scheffé's F test restricted to pairwise contrasts.
    Scheffe,
}

impl PosthocMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            PosthocMethod::Bonferroni => "bonferroni",
            PosthocMethod::Tukey => "tukey",
            PosthocMethod::Scheffe => "scheffe",
        }
    }
}

impl fmt::Display for PosthocMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosthocMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bonferroni" => Ok(PosthocMethod::Bonferroni),
            "tukey" => Ok(PosthocMethod::Tukey),
            "scheffe" | "scheffé" => Ok(PosthocMethod::Scheffe),
            other => Err(Error::InvalidParameter(format!(
                "unknown post-hoc method {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosthocResult {
    pub method: PosthocMethod,
    pub alpha: f64,
    pub means: Vec<f64>,
    /// Symmetric matrix of adjusted p-values; the diagonal is 1.
    pub pairwise: Vec<Vec<f64>>,
    /// Group indices per subset, each listed in ascending order of mean.
    pub homogeneous_subsets: Vec<Vec<usize>>,
}

impl PosthocResult {
    pub fn p(&self, i: usize, j: usize) -> f64 {
        self.pairwise[i][j]
    }

    pub fn significant(&self, i: usize, j: usize) -> bool {
        self.pairwise[i][j] < self.alpha
    }
}

#[allow(clippy::needless_range_loop)]
pub fn posthoc<S: AsRef<[f64]>>(
    groups: &[S],
    method: PosthocMethod,
    alpha: f64,
) -> Result<PosthocResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be in (0, 1), got {alpha}"
        )));
    }
    let g = GroupStats::new(groups)?;
    let k = g.k();
    let df = g.df_within();
    let msw = g.ms_within();
    let pairs = (k * (k - 1) / 2) as f64;

    let mut pairwise = vec![vec![1.0; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let diff = (g.means[i] - g.means[j]).abs();
            let inv_n = 1.0 / g.n[i] + 1.0 / g.n[j];
            let p = if msw == 0.0 {
                if diff == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                match method {
                    PosthocMethod::Bonferroni => {
                        let t = diff / (msw * inv_n).sqrt();
                        let raw = 2.0 * Distribution::StudentT { df }.sf(t)?;
                        (raw * pairs).min(1.0)
                    }
                    PosthocMethod::Tukey => {
                        // harmonic mean of the pair's sizes in the standard error
                        let q = diff / (0.5 * msw * inv_n).sqrt();
                        Distribution::StudentizedRange { k: k as u32, df }.sf(q)?
                    }
                    PosthocMethod::Scheffe => {
                        let f = diff * diff / (msw * inv_n * (k - 1) as f64);
                        Distribution::FisherF {
                            df1: (k - 1) as f64,
                            df2: df,
                        }
                        .sf(f)?
                    }
                }
            };
            let p = p.clamp(0.0, 1.0);
            pairwise[i][j] = p;
            pairwise[j][i] = p;
        }
    }
    let homogeneous_subsets = homogeneous_subsets(&g.means, &pairwise, alpha);
    Ok(PosthocResult {
        method,
        alpha,
        means: g.means,
        pairwise,
        homogeneous_subsets,
    })
}

/// Maximal runs of groups, consecutive in mean order, whose members are
/// pairwise non-significant at `alpha`.
pub fn homogeneous_subsets(means: &[f64], pairwise: &[Vec<f64>], alpha: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..means.len()).collect();
    order.sort_by(|&a, &b| means[a].total_cmp(&means[b]).then(a.cmp(&b)));

    let mut subsets = Vec::new();
    let mut last_end: Option<usize> = None;
    for start in 0..order.len() {
        let mut end = start;
        'grow: while end + 1 < order.len() {
            let candidate = order[end + 1];
            for &member in &order[start..=end] {
                if pairwise[member][candidate] < alpha {
                    break 'grow;
                }
            }
            end += 1;
        }
        if last_end.is_none_or(|e| end > e) {
            subsets.push(order[start..=end].to_vec());
            last_end = Some(end);
        }
    }
    subsets
}
