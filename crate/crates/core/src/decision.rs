//! Risk-threshold decision sets and transform selection by information
//! maturity.
//!
//! The selector compares the total singleton belief and plausibility of the
//! evidence against a [`ThresholdSet`]. Mature evidence (high ΣBel, low ΣPl)
//! gets the most decisive transform; immature evidence falls back to BetP:
//!
//! ```text
//! ΣBel > Bel3 && ΣPl < Pl1  => PrScP
//! ΣBel > Bel2 && ΣPl < Pl2  => PrBl
//! ΣBel > Bel1 && ΣPl < Pl3  => PrPl
//! otherwise                 => BetP
//! ```
//!
//! Rules are tried top-down and the first match wins. PraPl is never chosen
//! by the selector.

use thiserror::Error;

use crate::frame::MassFunction;
use crate::metrics::{pic, PicScore};
use crate::transforms::{
    ConvergenceError, ProbabilityDistribution, SolverConfig, TransformKind, TransformResult,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThresholdError {
    #[error("{which} thresholds must be finite, got {values:?}")]
    NotFinite {
        which: &'static str,
        values: [f64; 3],
    },

    #[error("{which} thresholds must be strictly ascending, got {values:?}")]
    NotAscending {
        which: &'static str,
        values: [f64; 3],
    },
}

/// Named belief/plausibility trigger levels for the selector.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSet {
    profile_name: String,
    bel: [f64; 3],
    pl: [f64; 3],
}

impl ThresholdSet {
    pub fn new(
        profile_name: impl Into<String>,
        bel: [f64; 3],
        pl: [f64; 3],
    ) -> Result<Self, ThresholdError> {
        check_triple("belief", bel)?;
        check_triple("plausibility", pl)?;
        Ok(Self {
            profile_name: profile_name.into(),
            bel,
            pl,
        })
    }

    pub fn profile_name(&self) -> &str {
        &self.profile_name
    }

    pub fn bel_thresholds(&self) -> [f64; 3] {
        self.bel
    }

    pub fn pl_thresholds(&self) -> [f64; 3] {
        self.pl
    }
}

fn check_triple(which: &'static str, values: [f64; 3]) -> Result<(), ThresholdError> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(ThresholdError::NotFinite { which, values });
    }
    if !(values[0] < values[1] && values[1] < values[2]) {
        return Err(ThresholdError::NotAscending { which, values });
    }
    Ok(())
}

/// Labels whose probability strictly exceeds `threshold`, in frame order.
pub fn decision_set(p: &ProbabilityDistribution, threshold: f64) -> Vec<String> {
    p.iter()
        .filter(|&(_, prob)| prob > threshold)
        .map(|(label, _)| label.to_owned())
        .collect()
}

pub fn select_transform(sum_bel: f64, sum_pl: f64, t: &ThresholdSet) -> TransformKind {
    let [bel1, bel2, bel3] = t.bel;
    let [pl1, pl2, pl3] = t.pl;
    if sum_bel > bel3 && sum_pl < pl1 {
        TransformKind::PrScP
    } else if sum_bel > bel2 && sum_pl < pl2 {
        TransformKind::PrBl
    } else if sum_bel > bel1 && sum_pl < pl3 {
        TransformKind::PrPl
    } else {
        TransformKind::BetP
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionReport {
    pub profile_name: String,
    pub sum_bel: f64,
    pub sum_pl: f64,
    pub method: TransformKind,
    pub distribution: ProbabilityDistribution,
    pub epsilon: Option<f64>,
    pub iterations: Option<usize>,
    pub pic: PicScore,
    pub decision_threshold: f64,
    pub selected: Vec<String>,
}

/// Picks a transform for `m` under `t`, applies it, and reports the
/// hypotheses above `decision_threshold`.
pub fn evaluate(
    m: &MassFunction,
    t: &ThresholdSet,
    decision_threshold: f64,
    solver: &SolverConfig,
) -> Result<DecisionReport, ConvergenceError> {
    let sum_bel = m.sum_bel();
    let sum_pl = m.sum_pl();
    let method = select_transform(sum_bel, sum_pl, t);
    let TransformResult {
        distribution,
        epsilon,
        iterations,
        ..
    } = method.apply(m, solver)?;
    Ok(DecisionReport {
        profile_name: t.profile_name.clone(),
        sum_bel,
        sum_pl,
        method,
        pic: pic(&distribution),
        selected: decision_set(&distribution, decision_threshold),
        distribution,
        epsilon,
        iterations,
        decision_threshold,
    })
}

/// One row of a side-by-side comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub result: TransformResult,
    pub pic: PicScore,
    /// Present when the comparison was run with a decision threshold.
    pub selected: Option<Vec<String>>,
}

/// All five transforms applied to the same evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub sum_bel: f64,
    pub sum_pl: f64,
    pub decision_threshold: Option<f64>,
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    pub fn frame(&self) -> &crate::frame::Frame {
        self.rows[0].result.distribution.frame()
    }
}

pub fn compare(
    m: &MassFunction,
    decision_threshold: Option<f64>,
    solver: &SolverConfig,
) -> Result<Comparison, ConvergenceError> {
    let rows = TransformKind::ALL
        .into_iter()
        .map(|kind| {
            let result = kind.apply(m, solver)?;
            Ok(ComparisonRow {
                pic: pic(&result.distribution),
                selected: decision_threshold.map(|t| decision_set(&result.distribution, t)),
                result,
            })
        })
        .collect::<Result<Vec<_>, ConvergenceError>>()?;
    Ok(Comparison {
        sum_bel: m.sum_bel(),
        sum_pl: m.sum_pl(),
        decision_threshold,
        rows,
    })
}
