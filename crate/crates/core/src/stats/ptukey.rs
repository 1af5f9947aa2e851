//! Studentized range distribution.
//!
//! For `k` independent standard normals and an independent `s` with
//! `df * s^2 ~ chi^2(df)`, the CDF of `q = range / s` is
//!
//! ```text
//! P(q; k, df) = ∫_0^∞ f_s(s) W(q s; k) ds
//! W(w; k)     = k ∫ φ(z) [Φ(z + w) - Φ(z)]^(k-1) dz
//! ```
//!
//! Both integrals are evaluated numerically: the inner one on fixed
//! Gauss–Kronrod panels, the outer one adaptively.

use std::sync::OnceLock;

use super::quadrature::{integrate, kronrod_nodes};
use super::special::{ln_gamma, normal_cdf, normal_pdf};

const Z_LIMIT: f64 = 8.5;
const PANEL: f64 = 0.5;

struct InnerNodes {
    z: Vec<f64>,
    // weight * φ(z)
    wphi: Vec<f64>,
    cdf: Vec<f64>,
}

fn inner_nodes() -> &'static InnerNodes {
    static NODES: OnceLock<InnerNodes> = OnceLock::new();
    NODES.get_or_init(|| {
        let panels = (2.0 * Z_LIMIT / PANEL).round() as usize;
        let mut nodes = InnerNodes {
            z: Vec::with_capacity(panels * 15),
            wphi: Vec::with_capacity(panels * 15),
            cdf: Vec::with_capacity(panels * 15),
        };
        for p in 0..panels {
            let a = -Z_LIMIT + p as f64 * PANEL;
            for (z, w) in kronrod_nodes(a, a + PANEL) {
                nodes.z.push(z);
                nodes.wphi.push(w * normal_pdf(z));
                nodes.cdf.push(normal_cdf(z));
            }
        }
        nodes
    })
}

/// CDF of the range of `k` standard normals.
pub fn range_cdf(w: f64, k: u32) -> f64 {
    if w <= 0.0 {
        return 0.0;
    }
    if k == 2 {
        return (2.0 * normal_cdf(w / std::f64::consts::SQRT_2) - 1.0).clamp(0.0, 1.0);
    }
    let nodes = inner_nodes();
    let power = (k - 1) as i32;
    let mut total = 0.0;
    for i in 0..nodes.z.len() {
        let diff = normal_cdf(nodes.z[i] + w) - nodes.cdf[i];
        if diff > 0.0 {
            total += nodes.wphi[i] * diff.powi(power);
        }
    }
    (f64::from(k) * total).clamp(0.0, 1.0)
}

/// CDF of the studentized range statistic with `k` groups and `df` error
/// degrees of freedom. `df = ∞` gives the range distribution itself.
pub fn studentized_range_cdf(q: f64, k: u32, df: f64) -> f64 {
    if q <= 0.0 {
        return 0.0;
    }
    if q.is_infinite() {
        return 1.0;
    }
    if df.is_infinite() {
        return range_cdf(q, k);
    }

    // Density of s = sqrt(chi2(df) / df).
    let half = 0.5 * df;
    let ln_norm = std::f64::consts::LN_2 + half * half.ln() - ln_gamma(half);
    let density = |s: f64| -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        (ln_norm + (df - 1.0) * s.ln() - half * s * s).exp()
    };

    // Integrate over the bulk of df * s^2 ~ chi2(df): mean df, sd sqrt(2 df).
    let spread = 14.0 * (2.0 * df).sqrt();
    let lo = ((df - spread).max(0.0) / df).sqrt();
    let hi = ((df + spread + 60.0) / df).sqrt();

    let integrand = |s: f64| density(s) * range_cdf(q * s, k);
    // Split at the mode so the first bisection lands near the peak.
    let mode = ((df - 1.0).max(0.0) / df).sqrt().clamp(lo, hi);
    let value = if mode > lo && mode < hi {
        integrate(&integrand, lo, mode, 5e-14) + integrate(&integrand, mode, hi, 5e-14)
    } else {
        integrate(&integrand, lo, hi, 1e-13)
    };
    value.clamp(0.0, 1.0)
}
