//! Pignistic probability transforms for belief functions.
//!
//! Turns a basic belief assignment over a frame of discernment into a point
//! probability suitable for risk-threshold decisions. Besides the Smets
//! transform (BetP) four proportional variants are provided (PraPl, PrPl,
//! PrBl and the self-consistent PrScP), together with the probability
//! information content (PIC) score and a selector that picks a transform
//! from the maturity of the evidence.
//!
//! ```
//! use pignistic::{Frame, MassFunction, SolverConfig, TransformKind, pic};
//!
//! let frame = Frame::new(["friend", "hostile"]).unwrap();
//! let m = MassFunction::new(
//!     frame,
//!     [(vec!["friend"], 0.5), (vec!["friend", "hostile"], 0.5)],
//! )
//! .unwrap();
//! let bet = TransformKind::BetP.apply(&m, &SolverConfig::default()).unwrap();
//! assert_eq!(bet.distribution.probabilities(), &[0.75, 0.25]);
//! assert!(pic(&bet.distribution).value() > 0.0);
//! ```

pub mod decision;
pub mod error;
pub mod frame;
pub mod io;
pub mod metrics;
pub mod transforms;

pub use decision::{
    compare, decision_set, evaluate, select_transform, Comparison, ComparisonRow, DecisionReport,
    ThresholdError, ThresholdSet,
};
pub use error::{Error, Result};
pub use frame::{FocalSet, Frame, FrameError, MassFunction, SingletonVector};
pub use metrics::{kl_divergence, pic, MetricsError, PicScore};
pub use transforms::{
    bet_p, fixed_point_residual, pr_bl, pr_pl, pr_sc_p, pra_pl, ConvergenceError,
    DistributionError, ProbabilityDistribution, SolverConfig, TransformKind, TransformResult,
};
