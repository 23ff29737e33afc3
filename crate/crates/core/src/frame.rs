//! Frames of discernment, focal sets and validated mass functions.
//!
//! A [`Frame`] is an ordered list of mutually exclusive hypothesis labels.
//! Subsets of a frame are encoded as `u64` bitmasks where bit `i` stands for
//! the `i`-th label, which caps a frame at 64 hypotheses but turns subset,
//! superset and intersection tests into single word operations.
//!
//! A [`MassFunction`] is a basic belief assignment over nonempty subsets of a
//! frame. Belief and plausibility of any subset are derived from it:
//!
//! ```text
//! Bel(A) = Σ m(B)  for B ⊆ A
//! Pl(A)  = Σ m(B)  for B ∩ A ≠ ∅
//! ```

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest frame representable by the bitmask encoding.
pub const MAX_FRAME_SIZE: usize = 64;

/// Allowed deviation of the total mass from one.
pub const MASS_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("frame has no hypotheses")]
    EmptyFrame,

    #[error("hypothesis label at position {position} is empty")]
    EmptyLabel { position: usize },

    #[error("duplicate hypothesis label {label:?} at position {position}")]
    DuplicateLabel { label: String, position: usize },

    #[error("frame has {size} hypotheses, at most {MAX_FRAME_SIZE} are supported")]
    FrameTooLarge { size: usize },

    #[error("record {index}: label {label:?} is not part of the frame")]
    UnknownLabel { index: usize, label: String },

    #[error("record {index}: mass assigned to the empty set")]
    EmptySetMass { index: usize },

    #[error("record {index}: focal set already assigned by record {first}")]
    DuplicateFocalSet { index: usize, first: usize },

    #[error("record {index}: mass {mass} is outside [0, 1]")]
    MassOutOfRange { index: usize, mass: f64 },

    #[error(
        "masses sum to {sum} (deficit {deficit:+e}), expected 1 within {MASS_SUM_TOLERANCE:e}"
    )]
    MassSumMismatch { sum: f64, deficit: f64 },

    #[error("operands are defined over different frames")]
    FrameMismatch,

    #[error("subset mask {bits:#x} is empty or exceeds the frame")]
    InvalidSubset { bits: u64 },
}

/// Ordered set of hypothesis labels. Cloning is cheap.
#[derive(Clone)]
pub struct Frame {
    labels: Arc<[String]>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self, FrameError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(FrameError::EmptyFrame);
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(FrameError::FrameTooLarge { size: labels.len() });
        }
        let mut seen = HashMap::with_capacity(labels.len());
        for (position, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(FrameError::EmptyLabel { position });
            }
            if seen.insert(label.as_str(), position).is_some() {
                return Err(FrameError::DuplicateLabel {
                    label: label.clone(),
                    position,
                });
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; frames hold at least one hypothesis.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, position: usize) -> Option<&str> {
        self.labels.get(position).map(String::as_str)
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Bitmask with one bit set per hypothesis.
    pub fn full_mask(&self) -> u64 {
        full_mask(self.len())
    }

    /// The whole frame Ω as a focal set.
    pub fn full(&self) -> FocalSet {
        FocalSet {
            frame: self.clone(),
            bits: self.full_mask(),
        }
    }

    /// The singleton `{label(position)}`.
    ///
    /// # Panics
    ///
    /// Panics if `position >= self.len()`.
    pub fn singleton(&self, position: usize) -> FocalSet {
        assert!(position < self.len(), "singleton position out of range");
        FocalSet {
            frame: self.clone(),
            bits: 1u64 << position,
        }
    }

    pub fn subset_from_bits(&self, bits: u64) -> Result<FocalSet, FrameError> {
        if bits == 0 || bits & !self.full_mask() != 0 {
            return Err(FrameError::InvalidSubset { bits });
        }
        Ok(FocalSet {
            frame: self.clone(),
            bits,
        })
    }

    /// Builds a subset from labels. Repeated labels are tolerated.
    pub fn subset<I, S>(&self, labels: I) -> Result<FocalSet, FrameError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let bits = self.mask_of(0, labels)?;
        if bits == 0 {
            return Err(FrameError::InvalidSubset { bits });
        }
        Ok(FocalSet {
            frame: self.clone(),
            bits,
        })
    }

    fn mask_of<I, S>(&self, index: usize, labels: I) -> Result<u64, FrameError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels.into_iter().try_fold(0u64, |acc, label| {
            let label = label.as_ref();
            self.position(label)
                .map(|p| acc | (1u64 << p))
                .ok_or_else(|| FrameError::UnknownLabel {
                    index,
                    label: label.to_owned(),
                })
        })
    }

    fn ensure_same(&self, other: &Frame) -> Result<(), FrameError> {
        if self == other {
            Ok(())
        } else {
            Err(FrameError::FrameMismatch)
        }
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Frame").field(&self.labels).finish()
    }
}

pub(crate) fn full_mask(size: usize) -> u64 {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

/// Iterates the positions of set bits in ascending order.
pub(crate) fn bit_positions(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let p = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(p)
        }
    })
}

/// Nonempty subset of a frame.
#[derive(Clone, PartialEq, Eq)]
pub struct FocalSet {
    frame: Frame,
    bits: u64,
}

impl FocalSet {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of singletons, `|A|`.
    pub fn cardinality(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, position: usize) -> bool {
        position < 64 && self.bits & (1u64 << position) != 0
    }

    pub fn is_subset_of(&self, other: &FocalSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersects(&self, other: &FocalSet) -> bool {
        self.bits & other.bits != 0
    }

    /// Complement within the frame, `None` for Ω itself.
    pub fn complement(&self) -> Option<FocalSet> {
        let bits = self.frame.full_mask() & !self.bits;
        (bits != 0).then(|| FocalSet {
            frame: self.frame.clone(),
            bits,
        })
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> {
        bit_positions(self.bits)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.positions()
            .map(|p| self.frame.labels[p].as_str())
            .collect()
    }
}

impl fmt::Debug for FocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

impl fmt::Display for FocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

/// Basic belief assignment over nonempty subsets of a frame.
///
/// Only strictly positive masses are stored; subsets not listed carry zero
/// mass. The stored masses sum to one within [`MASS_SUM_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    focal: Vec<(u64, f64)>,
}

impl MassFunction {
    /// Validates a list of `(subset labels, mass)` records.
    ///
    /// Record indices in errors refer to positions in `assignments`.
    pub fn new<I, L, S>(frame: Frame, assignments: I) -> Result<Self, FrameError>
    where
        I: IntoIterator<Item = (L, f64)>,
        L: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let records = assignments
            .into_iter()
            .enumerate()
            .map(|(index, (labels, mass))| {
                let bits = frame.mask_of(index, labels)?;
                Ok((bits, mass))
            })
            .collect::<Result<Vec<_>, FrameError>>()?;
        Self::from_masks(frame, records)
    }

    /// Validates `(bitmask, mass)` records.
    pub fn from_masks<I>(frame: Frame, records: I) -> Result<Self, FrameError>
    where
        I: IntoIterator<Item = (u64, f64)>,
    {
        let full = frame.full_mask();
        let mut first_seen: HashMap<u64, usize> = HashMap::new();
        let mut focal = Vec::new();
        let mut sum = 0.0;
        for (index, (bits, mass)) in records.into_iter().enumerate() {
            if bits == 0 {
                return Err(FrameError::EmptySetMass { index });
            }
            if bits & !full != 0 {
                return Err(FrameError::InvalidSubset { bits });
            }
            if !(0.0..=1.0).contains(&mass) {
                return Err(FrameError::MassOutOfRange { index, mass });
            }
            if let Some(&first) = first_seen.get(&bits) {
                return Err(FrameError::DuplicateFocalSet { index, first });
            }
            first_seen.insert(bits, index);
            sum += mass;
            if mass > 0.0 {
                focal.push((bits, mass));
            }
        }
        let deficit = 1.0 - sum;
        if deficit.abs() > MASS_SUM_TOLERANCE {
            return Err(FrameError::MassSumMismatch { sum, deficit });
        }
        Ok(Self { frame, focal })
    }

    /// All mass on Ω.
    pub fn vacuous(frame: Frame) -> Self {
        let full = frame.full_mask();
        Self {
            frame,
            focal: vec![(full, 1.0)],
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Focal sets with their masses, in input order.
    pub fn focal_sets(&self) -> impl Iterator<Item = (FocalSet, f64)> + '_ {
        self.focal.iter().map(move |&(bits, mass)| {
            (
                FocalSet {
                    frame: self.frame.clone(),
                    bits,
                },
                mass,
            )
        })
    }

    pub(crate) fn focal_masks(&self) -> &[(u64, f64)] {
        &self.focal
    }

    pub fn mass(&self, set: &FocalSet) -> Result<f64, FrameError> {
        self.frame.ensure_same(&set.frame)?;
        Ok(self
            .focal
            .iter()
            .find(|(bits, _)| *bits == set.bits)
            .map_or(0.0, |&(_, mass)| mass))
    }

    /// Every focal set is a singleton.
    pub fn is_bayesian(&self) -> bool {
        self.focal.iter().all(|(bits, _)| bits.count_ones() == 1)
    }

    pub fn belief(&self, set: &FocalSet) -> Result<f64, FrameError> {
        self.frame.ensure_same(&set.frame)?;
        Ok(self.belief_mask(set.bits))
    }

    pub fn plausibility(&self, set: &FocalSet) -> Result<f64, FrameError> {
        self.frame.ensure_same(&set.frame)?;
        Ok(self.plausibility_mask(set.bits))
    }

    fn belief_mask(&self, target: u64) -> f64 {
        let total: f64 = self
            .focal
            .iter()
            .filter(|(bits, _)| bits & !target == 0)
            .map(|(_, mass)| mass)
            .sum();
        total.min(1.0)
    }

    fn plausibility_mask(&self, target: u64) -> f64 {
        let total: f64 = self
            .focal
            .iter()
            .filter(|(bits, _)| bits & target != 0)
            .map(|(_, mass)| mass)
            .sum();
        total.min(1.0)
    }

    /// `Bel({x})` for each hypothesis, which equals `m({x})`.
    pub fn singleton_beliefs(&self) -> SingletonVector {
        let mut values = vec![0.0; self.frame.len()];
        for &(bits, mass) in &self.focal {
            if bits.count_ones() == 1 {
                values[bits.trailing_zeros() as usize] = mass;
            }
        }
        SingletonVector {
            frame: self.frame.clone(),
            values,
        }
    }

    pub fn singleton_plausibilities(&self) -> SingletonVector {
        let mut values = vec![0.0; self.frame.len()];
        for &(bits, mass) in &self.focal {
            for p in bit_positions(bits) {
                values[p] += mass;
            }
        }
        for v in &mut values {
            *v = v.min(1.0);
        }
        SingletonVector {
            frame: self.frame.clone(),
            values,
        }
    }

    /// Σ Bel({x}) over the frame.
    pub fn sum_bel(&self) -> f64 {
        self.singleton_beliefs().total()
    }

    /// Σ Pl({x}) over the frame.
    pub fn sum_pl(&self) -> f64 {
        self.singleton_plausibilities().total()
    }
}

/// One non-negative value per hypothesis of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SingletonVector {
    frame: Frame,
    values: Vec<f64>,
}

impl SingletonVector {
    pub fn new(frame: Frame, values: Vec<f64>) -> Result<Self, FrameError> {
        if values.len() != frame.len() {
            return Err(FrameError::FrameMismatch);
        }
        if let Some((index, &mass)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(FrameError::MassOutOfRange { index, mass });
        }
        Ok(Self { frame, values })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, position: usize) -> Option<f64> {
        self.values.get(position).copied()
    }

    /// Sum of the values over the singletons of `set`: turns a function of
    /// a compound set into the sum of its singleton values.
    pub fn singleton_sum(&self, set: &FocalSet) -> Result<f64, FrameError> {
        self.frame.ensure_same(&set.frame)?;
        Ok(self.sum_over(set.bits))
    }

    pub(crate) fn sum_over(&self, bits: u64) -> f64 {
        bit_positions(bits).map(|p| self.values[p]).sum()
    }

    /// Sum over the whole frame.
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}
