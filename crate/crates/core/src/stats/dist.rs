use serde::{Deserialize, Serialize};

use super::ptukey::studentized_range_cdf;
use super::special::{beta_reg, gamma_p, gamma_q};
use crate::error::{Error, Result};

/// Sampling distributions used for p-values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Distribution {
    StudentT { df: f64 },
    FisherF { df1: f64, df2: f64 },
    ChiSquared { df: f64 },
    StudentizedRange { k: u32, df: f64 },
}

impl Distribution {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && !v.is_nan() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        match *self {
            Distribution::StudentT { df } | Distribution::ChiSquared { df } => positive("df", df),
            Distribution::FisherF { df1, df2 } => {
                positive("df1", df1)?;
                positive("df2", df2)
            }
            Distribution::StudentizedRange { k, df } => {
                if k < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "k must be at least 2, got {k}"
                    )));
                }
                if df.is_nan() || df < 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "df must be at least 1, got {df}"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        self.validate()?;
        if x.is_nan() {
            return Err(Error::InvalidParameter("x is NaN".into()));
        }
        Ok(match *self {
            Distribution::StudentT { df } => {
                let tail = 0.5 * t_two_sided(x, df);
                if x > 0.0 {
                    1.0 - tail
                } else {
                    tail
                }
            }
            Distribution::FisherF { df1, df2 } => {
                if x <= 0.0 {
                    0.0
                } else if x.is_infinite() {
                    1.0
                } else {
                    beta_reg(0.5 * df1, 0.5 * df2, df1 * x / (df1 * x + df2))
                }
            }
            Distribution::ChiSquared { df } => gamma_p(0.5 * df, 0.5 * x.max(0.0)),
            Distribution::StudentizedRange { k, df } => studentized_range_cdf(x, k, df),
        })
    }

    /// Upper tail `1 - cdf(x)`, computed directly where that keeps precision.
    pub fn sf(&self, x: f64) -> Result<f64> {
        self.validate()?;
        if x.is_nan() {
            return Err(Error::InvalidParameter("x is NaN".into()));
        }
        Ok(match *self {
            Distribution::StudentT { df } => {
                let tail = 0.5 * t_two_sided(x, df);
                if x > 0.0 {
                    tail
                } else {
                    1.0 - tail
                }
            }
            Distribution::FisherF { df1, df2 } => {
                if x <= 0.0 {
                    1.0
                } else if x.is_infinite() {
                    0.0
                } else {
                    beta_reg(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * x))
                }
            }
            Distribution::ChiSquared { df } => gamma_q(0.5 * df, 0.5 * x.max(0.0)),
            Distribution::StudentizedRange { k, df } => {
                (1.0 - studentized_range_cdf(x, k, df)).max(0.0)
            }
        })
    }

    /// Inverse CDF by bisection; `p` must lie in (0, 1).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        self.validate()?;
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "probability must be in (0, 1), got {p}"
            )));
        }
        let (mut lo, mut hi) = match self {
            Distribution::StudentT { .. } => (-1.0, 1.0),
            _ => (0.0, 1.0),
        };
        while self.cdf(hi)? < p {
            lo = hi;
            hi *= 2.0;
            if hi > 1e12 {
                return Err(Error::InvalidParameter("quantile out of range".into()));
            }
        }
        while self.cdf(lo)? > p {
            hi = lo;
            lo *= 2.0;
            if lo < -1e12 {
                return Err(Error::InvalidParameter("quantile out of range".into()));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid)? < p {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * hi.abs().max(1.0) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// P(|T| >= |t|) for Student's t.
fn t_two_sided(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    beta_reg(0.5 * df, 0.5, df / (df + t * t))
}

/// CDF of `dist` at `x`.
pub fn dist_cdf(dist: Distribution, x: f64) -> Result<f64> {
    dist.cdf(x)
}
