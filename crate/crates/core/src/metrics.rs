//! Information content of probability distributions.
//!
//! The probability information content (PIC) of a distribution over `N`
//! hypotheses is its Kullback-Leibler divergence from the uniform
//! distribution, normalized by the largest achievable divergence `ln N`:
//!
//! ```text
//! PIC(P) = 1 + Σ p_i ln p_i / ln N = D(P ‖ U) / ln N
//! ```
//!
//! It is 0 for the uniform distribution and 1 when all probability sits on
//! one hypothesis. Terms with `p_i = 0` contribute nothing.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::FrameError;
use crate::transforms::ProbabilityDistribution;

/// PIC value, always within `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PicScore(f64);

impl PicScore {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<PicScore> for f64 {
    fn from(score: PicScore) -> Self {
        score.0
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error(transparent)]
    Frame(#[from] FrameError),

    #[error("divergence undefined: hypothesis {label:?} has p > 0 but q = 0")]
    UnsupportedDivergence { label: String },
}

/// Probability information content. A single-hypothesis frame scores 1.
pub fn pic(p: &ProbabilityDistribution) -> PicScore {
    let n = p.probabilities().len();
    if n <= 1 {
        return PicScore(1.0);
    }
    let neg_entropy: f64 = p.probabilities().iter().map(|&x| x_ln_x(x)).sum();
    let value = 1.0 + neg_entropy / (n as f64).ln();
    PicScore(value.clamp(0.0, 1.0))
}

/// `D(p ‖ q) = Σ p_i ln(p_i / q_i)` in nats.
pub fn kl_divergence(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MetricsError> {
    if p.frame() != q.frame() {
        return Err(FrameError::FrameMismatch.into());
    }
    let mut total = 0.0;
    for ((label, pi), &qi) in p.iter().zip(q.probabilities()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Err(MetricsError::UnsupportedDivergence {
                label: label.to_owned(),
            });
        }
        total += pi * (pi / qi).ln();
    }
    Ok(total.max(0.0))
}

fn x_ln_x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}
