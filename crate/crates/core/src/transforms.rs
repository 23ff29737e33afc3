//! Pignistic probability transforms.
//!
//! Each transform maps a [`MassFunction`] to a point probability over the
//! singletons of its frame. They differ only in how the mass of a compound
//! focal set is shared among the singletons it contains:
//!
//! | transform | share of `m(A)` credited to `x ∈ A`          |
//! |-----------|----------------------------------------------|
//! | BetP      | `1 / |A|`                                    |
//! | PrPl      | `Pl(x) / Σ_{y∈A} Pl(y)`                      |
//! | PrBl      | `m(x) / Σ_{y∈A} m(y)`                        |
//! | PrScP     | `P(x) / Σ_{y∈A} P(y)` with `P` the output    |
//!
//! PraPl is the odd one out: it keeps each singleton's belief and spreads the
//! remaining `1 − ΣBel` proportionally to the singleton plausibilities.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{bit_positions, Frame, MassFunction};

/// Allowed deviation of a distribution's total from one.
pub const DISTRIBUTION_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistributionError {
    #[error("{got} probabilities given for a frame of {expected} hypotheses")]
    LengthMismatch { expected: usize, got: usize },

    #[error("probability {value} for hypothesis {label:?} is not a finite non-negative number")]
    InvalidProbability { label: String, value: f64 },

    #[error("probabilities sum to {sum}, expected 1 within {DISTRIBUTION_SUM_TOLERANCE:e}")]
    SumMismatch { sum: f64 },
}

/// Probability over the singletons of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    frame: Frame,
    probabilities: Vec<f64>,
}

impl ProbabilityDistribution {
    pub fn new(frame: Frame, probabilities: Vec<f64>) -> Result<Self, DistributionError> {
        if probabilities.len() != frame.len() {
            return Err(DistributionError::LengthMismatch {
                expected: frame.len(),
                got: probabilities.len(),
            });
        }
        for (label, &value) in frame.labels().iter().zip(&probabilities) {
            if !(value.is_finite() && value >= 0.0) {
                return Err(DistributionError::InvalidProbability {
                    label: label.clone(),
                    value,
                });
            }
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > DISTRIBUTION_SUM_TOLERANCE {
            return Err(DistributionError::SumMismatch { sum });
        }
        Ok(Self {
            frame,
            probabilities,
        })
    }

    pub fn uniform(frame: Frame) -> Self {
        let n = frame.len();
        Self {
            frame,
            probabilities: vec![1.0 / n as f64; n],
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.frame.position(label).map(|p| self.probabilities[p])
    }

    /// `(label, probability)` pairs in frame order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.frame
            .labels()
            .iter()
            .map(String::as_str)
            .zip(self.probabilities.iter().copied())
    }

    fn from_transform(frame: Frame, probabilities: Vec<f64>) -> Self {
        debug_assert!(
            (probabilities.iter().sum::<f64>() - 1.0).abs() <= DISTRIBUTION_SUM_TOLERANCE,
            "transform output not normalized: {probabilities:?}"
        );
        Self {
            frame,
            probabilities,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransformKind {
    BetP,
    PraPl,
    PrPl,
    PrBl,
    PrScP,
}

impl TransformKind {
    pub const ALL: [TransformKind; 5] = [
        TransformKind::BetP,
        TransformKind::PraPl,
        TransformKind::PrPl,
        TransformKind::PrBl,
        TransformKind::PrScP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::BetP => "BetP",
            TransformKind::PraPl => "PraPl",
            TransformKind::PrPl => "PrPl",
            TransformKind::PrBl => "PrBl",
            TransformKind::PrScP => "PrScP",
        }
    }

    /// Lower-case identifier used on the command line.
    pub fn id(self) -> &'static str {
        match self {
            TransformKind::BetP => "betp",
            TransformKind::PraPl => "prapl",
            TransformKind::PrPl => "prpl",
            TransformKind::PrBl => "prbl",
            TransformKind::PrScP => "prscp",
        }
    }

    pub fn apply(
        self,
        m: &MassFunction,
        config: &SolverConfig,
    ) -> Result<TransformResult, ConvergenceError> {
        Ok(match self {
            TransformKind::BetP => bet_p(m),
            TransformKind::PraPl => pra_pl(m),
            TransformKind::PrPl => pr_pl(m),
            TransformKind::PrBl => pr_bl(m),
            TransformKind::PrScP => return pr_sc_p(m, config),
        })
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown transform {0:?}, expected one of betp, prapl, prpl, prbl, prscp")]
pub struct UnknownTransform(pub String);

impl FromStr for TransformKind {
    type Err = UnknownTransform;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TransformKind::ALL
            .into_iter()
            .find(|k| k.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownTransform(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverConfigError {
    #[error("tolerance must be a positive finite number, got {0}")]
    Tolerance(f64),
    #[error("max_iterations must be at least 1")]
    MaxIterations,
}

/// Stopping rule for the self-consistent iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    tolerance: f64,
    max_iterations: usize,
}

impl SolverConfig {
    pub const DEFAULT_TOLERANCE: f64 = 1e-12;
    pub const DEFAULT_MAX_ITERATIONS: usize = 1000;

    pub fn new(tolerance: f64, max_iterations: usize) -> Result<Self, SolverConfigError> {
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(SolverConfigError::Tolerance(tolerance));
        }
        if max_iterations == 0 {
            return Err(SolverConfigError::MaxIterations);
        }
        Ok(Self {
            tolerance,
            max_iterations,
        })
    }

    /// Max-norm step below which the iteration stops.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tolerance: Self::DEFAULT_TOLERANCE,
            max_iterations: Self::DEFAULT_MAX_ITERATIONS,
        }
    }
}

/// Self-consistent iteration did not settle on a fixed point.
#[derive(Debug, Clone, PartialEq, Error)]
#[error(
    "self-consistent transform did not converge after {iterations} iterations \
     (last step {last_step:e}, residual {residual:e})"
)]
pub struct ConvergenceError {
    pub iterations: usize,
    pub last_step: f64,
    pub residual: f64,
    pub last_iterate: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult {
    pub distribution: ProbabilityDistribution,
    pub method: TransformKind,
    /// Deficit scale `(1 − ΣBel) / ΣPl`, PraPl only.
    pub epsilon: Option<f64>,
    /// Fixed-point iterations performed, PrScP only.
    pub iterations: Option<usize>,
}

impl TransformResult {
    fn plain(method: TransformKind, frame: Frame, probabilities: Vec<f64>) -> Self {
        Self {
            distribution: ProbabilityDistribution::from_transform(frame, probabilities),
            method,
            epsilon: None,
            iterations: None,
        }
    }
}

/// Smets pignistic transform: every focal set's mass is split equally among
/// its singletons.
pub fn bet_p(m: &MassFunction) -> TransformResult {
    let mut out = vec![0.0; m.frame().len()];
    for &(bits, mass) in m.focal_masks() {
        let share = mass / bits.count_ones() as f64;
        for p in bit_positions(bits) {
            out[p] += share;
        }
    }
    TransformResult::plain(TransformKind::BetP, m.frame().clone(), out)
}

/// Belief plus a share of the missing mass proportional to plausibility:
/// `P(x) = Bel(x) + ε·Pl(x)` with `ε = (1 − ΣBel) / ΣPl`.
pub fn pra_pl(m: &MassFunction) -> TransformResult {
    let bel = m.singleton_beliefs();
    let pl = m.singleton_plausibilities();
    // ΣPl ≥ 1 for any normalized mass function.
    let epsilon = ((1.0 - bel.total()) / pl.total()).max(0.0);
    let out = bel
        .values()
        .iter()
        .zip(pl.values())
        .map(|(b, p)| b + epsilon * p)
        .collect();
    TransformResult {
        epsilon: Some(epsilon),
        ..TransformResult::plain(TransformKind::PraPl, m.frame().clone(), out)
    }
}

/// Focal mass split proportionally to singleton plausibilities.
pub fn pr_pl(m: &MassFunction) -> TransformResult {
    let pl = m.singleton_plausibilities();
    let out = proportional_split(m, pl.values());
    TransformResult::plain(TransformKind::PrPl, m.frame().clone(), out)
}

/// Focal mass split proportionally to singleton masses. A focal set none of
/// whose singletons carries mass is split equally.
pub fn pr_bl(m: &MassFunction) -> TransformResult {
    let bel = m.singleton_beliefs();
    let out = proportional_split(m, bel.values());
    TransformResult::plain(TransformKind::PrBl, m.frame().clone(), out)
}

/// Self-consistent transform: a fixed point of `P = split(m, P)`, reached by
/// iterating from the PrBl distribution until the max-norm step drops below
/// the configured tolerance.
///
/// The final iterate must also satisfy the fixed-point equation with a
/// residual below ten times the tolerance.
pub fn pr_sc_p(
    m: &MassFunction,
    config: &SolverConfig,
) -> Result<TransformResult, ConvergenceError> {
    let tolerance = config.tolerance();
    let mut current = proportional_split(m, m.singleton_beliefs().values());
    let mut next = vec![0.0; current.len()];
    let mut last_step = f64::INFINITY;
    for iteration in 1..=config.max_iterations() {
        proportional_split_into(m, &current, &mut next);
        last_step = max_abs_diff(&next, &current);
        std::mem::swap(&mut current, &mut next);
        if last_step < tolerance {
            let residual = fixed_point_residual(m, &current);
            if residual < 10.0 * tolerance {
                return Ok(TransformResult {
                    iterations: Some(iteration),
                    ..TransformResult::plain(TransformKind::PrScP, m.frame().clone(), current)
                });
            }
            return Err(ConvergenceError {
                iterations: iteration,
                last_step,
                residual,
                last_iterate: current,
            });
        }
    }
    let residual = fixed_point_residual(m, &current);
    Err(ConvergenceError {
        iterations: config.max_iterations(),
        last_step,
        residual,
        last_iterate: current,
    })
}

/// Max-norm of `split(m, p) − p`.
pub fn fixed_point_residual(m: &MassFunction, p: &[f64]) -> f64 {
    max_abs_diff(&proportional_split(m, p), p)
}

/// Distributes each focal mass over its singletons proportionally to
/// `weights`, falling back to an equal split when the weights of a focal
/// set sum to zero.
fn proportional_split(m: &MassFunction, weights: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; weights.len()];
    proportional_split_into(m, weights, &mut out);
    out
}

fn proportional_split_into(m: &MassFunction, weights: &[f64], out: &mut [f64]) {
    out.fill(0.0);
    for &(bits, mass) in m.focal_masks() {
        let denominator: f64 = bit_positions(bits).map(|p| weights[p]).sum();
        if denominator > 0.0 {
            for p in bit_positions(bits) {
                out[p] += mass * weights[p] / denominator;
            }
        } else {
            let share = mass / bits.count_ones() as f64;
            for p in bit_positions(bits) {
                out[p] += share;
            }
        }
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
