//! JSON document formats and report rendering.
//!
//! Input documents:
//!
//! * BBA: `{"frame": [..labels..], "masses": [{"elements": [..labels..], "mass": 0.16}, ..]}`
//! * thresholds: `{"profile_name": "..", "bel": [b1, b2, b3], "pl": [p1, p2, p3]}`, or
//!   `{"profiles": [..]}` holding several named sets
//! * distribution: `{"frame": [..labels..], "probabilities": [..]}`
//!
//! Reports render either as a human-readable table (probabilities at six
//! decimals) or as a JSON record keeping full `f64` precision.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decision::{Comparison, DecisionReport, ThresholdError, ThresholdSet};
use crate::frame::{Frame, FrameError, MassFunction};
use crate::metrics::PicScore;
use crate::transforms::{
    DistributionError, ProbabilityDistribution, TransformKind, TransformResult,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid mass function: {0}")]
    Mass(#[from] FrameError),

    #[error("invalid threshold set: {0}")]
    Threshold(#[from] ThresholdError),

    #[error("invalid distribution: {0}")]
    Distribution(#[from] DistributionError),

    #[error("no threshold profile named {name:?} (available: {available:?})")]
    UnknownProfile {
        name: String,
        available: Vec<String>,
    },

    #[error("document holds {count} threshold profiles, one must be named")]
    AmbiguousProfile { count: usize },

    #[error("document is neither a BBA (\"masses\") nor a distribution (\"probabilities\")")]
    UnrecognizedDocument,
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message.
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_owned(),
            None => message,
        };
        DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BbaDocument {
    pub frame: Vec<String>,
    pub masses: Vec<MassRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassRecord {
    pub elements: Vec<String>,
    pub mass: f64,
}

impl BbaDocument {
    pub fn to_mass_function(&self) -> Result<MassFunction, DocumentError> {
        let frame = Frame::new(self.frame.iter().cloned())?;
        let m = MassFunction::new(
            frame,
            self.masses.iter().map(|r| (r.elements.iter(), r.mass)),
        )?;
        Ok(m)
    }
}

impl From<&MassFunction> for BbaDocument {
    fn from(m: &MassFunction) -> Self {
        BbaDocument {
            frame: m.frame().labels().to_vec(),
            masses: m
                .focal_sets()
                .map(|(set, mass)| MassRecord {
                    elements: set.labels().into_iter().map(str::to_owned).collect(),
                    mass,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdDocument {
    #[serde(default = "default_profile_name")]
    pub profile_name: String,
    pub bel: [f64; 3],
    pub pl: [f64; 3],
}

fn default_profile_name() -> String {
    "default".to_owned()
}

impl ThresholdDocument {
    pub fn to_threshold_set(&self) -> Result<ThresholdSet, DocumentError> {
        Ok(ThresholdSet::new(
            self.profile_name.clone(),
            self.bel,
            self.pl,
        )?)
    }
}

impl From<&ThresholdSet> for ThresholdDocument {
    fn from(t: &ThresholdSet) -> Self {
        ThresholdDocument {
            profile_name: t.profile_name().to_owned(),
            bel: t.bel_thresholds(),
            pl: t.pl_thresholds(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdProfiles {
    pub profiles: Vec<ThresholdDocument>,
}

/// Also accepts the records emitted by `transform --format record`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionDocument {
    pub frame: Vec<String>,
    pub probabilities: Vec<f64>,
}

impl DistributionDocument {
    pub fn to_distribution(&self) -> Result<ProbabilityDistribution, DocumentError> {
        let frame = Frame::new(self.frame.iter().cloned())?;
        Ok(ProbabilityDistribution::new(
            frame,
            self.probabilities.clone(),
        )?)
    }
}

pub fn parse_bba_document(text: &str) -> Result<MassFunction, DocumentError> {
    serde_json::from_str::<BbaDocument>(text)?.to_mass_function()
}

pub fn render_bba_document(m: &MassFunction) -> String {
    serde_json::to_string_pretty(&BbaDocument::from(m)).expect("BBA documents always serialize")
}

pub fn parse_threshold_document(text: &str) -> Result<ThresholdSet, DocumentError> {
    serde_json::from_str::<ThresholdDocument>(text)?.to_threshold_set()
}

/// Parses either a single threshold document or a `{"profiles": [..]}`
/// collection.
pub fn parse_threshold_profiles(text: &str) -> Result<Vec<ThresholdSet>, DocumentError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("profiles").is_some() {
        serde_json::from_str::<ThresholdProfiles>(text)?
            .profiles
            .iter()
            .map(ThresholdDocument::to_threshold_set)
            .collect()
    } else {
        Ok(vec![parse_threshold_document(text)?])
    }
}

/// Picks a profile by name. Without a name the collection must hold exactly
/// one profile.
pub fn select_profile(
    profiles: Vec<ThresholdSet>,
    name: Option<&str>,
) -> Result<ThresholdSet, DocumentError> {
    match name {
        Some(name) => {
            let available: Vec<String> = profiles
                .iter()
                .map(|p| p.profile_name().to_owned())
                .collect();
            profiles
                .into_iter()
                .find(|p| p.profile_name() == name)
                .ok_or_else(|| DocumentError::UnknownProfile {
                    name: name.to_owned(),
                    available,
                })
        }
        None if profiles.len() == 1 => Ok(profiles.into_iter().next().unwrap()),
        None => Err(DocumentError::AmbiguousProfile {
            count: profiles.len(),
        }),
    }
}

pub fn parse_distribution_document(text: &str) -> Result<ProbabilityDistribution, DocumentError> {
    serde_json::from_str::<DistributionDocument>(text)?.to_distribution()
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputDocument {
    Bba(MassFunction),
    Distribution(ProbabilityDistribution),
}

/// Detects the document kind from its top-level fields.
pub fn parse_input_document(text: &str) -> Result<InputDocument, DocumentError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("masses").is_some() {
        parse_bba_document(text).map(InputDocument::Bba)
    } else if value.get("probabilities").is_some() {
        parse_distribution_document(text).map(InputDocument::Distribution)
    } else {
        Err(DocumentError::UnrecognizedDocument)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Record,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub method: TransformKind,
    pub frame: Vec<String>,
    pub probabilities: Vec<f64>,
    pub pic: PicScore,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selected: Option<Vec<String>>,
}

impl TransformRecord {
    fn new(result: &TransformResult, pic: PicScore, selected: Option<Vec<String>>) -> Self {
        TransformRecord {
            method: result.method,
            frame: result.distribution.frame().labels().to_vec(),
            probabilities: result.distribution.probabilities().to_vec(),
            pic,
            epsilon: result.epsilon,
            iterations: result.iterations,
            selected,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub profile_name: String,
    pub sum_bel: f64,
    pub sum_pl: f64,
    pub method: TransformKind,
    pub frame: Vec<String>,
    pub probabilities: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    pub pic: PicScore,
    pub decision_threshold: f64,
    pub selected: Vec<String>,
}

impl From<&DecisionReport> for DecisionRecord {
    fn from(r: &DecisionReport) -> Self {
        DecisionRecord {
            profile_name: r.profile_name.clone(),
            sum_bel: r.sum_bel,
            sum_pl: r.sum_pl,
            method: r.method,
            frame: r.distribution.frame().labels().to_vec(),
            probabilities: r.distribution.probabilities().to_vec(),
            epsilon: r.epsilon,
            iterations: r.iterations,
            pic: r.pic,
            decision_threshold: r.decision_threshold,
            selected: r.selected.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub frame: Vec<String>,
    pub sum_bel: f64,
    pub sum_pl: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decision_threshold: Option<f64>,
    pub results: Vec<TransformRecord>,
}

impl From<&Comparison> for ComparisonRecord {
    fn from(c: &Comparison) -> Self {
        ComparisonRecord {
            frame: c.frame().labels().to_vec(),
            sum_bel: c.sum_bel,
            sum_pl: c.sum_pl,
            decision_threshold: c.decision_threshold,
            results: c
                .rows
                .iter()
                .map(|row| TransformRecord::new(&row.result, row.pic, row.selected.clone()))
                .collect(),
        }
    }
}

fn to_json<T: Serialize>(record: &T) -> String {
    serde_json::to_string_pretty(record).expect("report records always serialize")
}

fn label_width(frame: &Frame, header: &str) -> usize {
    frame
        .labels()
        .iter()
        .map(|l| l.chars().count())
        .chain(std::iter::once(header.len()))
        .max()
        .unwrap_or(0)
}

fn method_line(method: TransformKind, epsilon: Option<f64>, iterations: Option<usize>) -> String {
    let mut line = format!("method: {method}");
    if let Some(e) = epsilon {
        let _ = write!(line, " (epsilon {e:.6})");
    }
    if let Some(n) = iterations {
        let _ = write!(line, " ({n} iterations)");
    }
    line
}

pub fn render_transform(result: &TransformResult, pic: PicScore, format: Format) -> String {
    match format {
        Format::Record => to_json(&TransformRecord::new(result, pic, None)),
        Format::Table => {
            let frame = result.distribution.frame();
            let w = label_width(frame, "hypothesis");
            let mut out = method_line(result.method, result.epsilon, result.iterations);
            out.push('\n');
            let _ = writeln!(out, "{:<w$}  probability", "hypothesis");
            for (label, p) in result.distribution.iter() {
                let _ = writeln!(out, "{label:<w$}  {p:.6}");
            }
            let _ = writeln!(out, "PIC: {:.6}", pic.value());
            out
        }
    }
}

pub fn render_pic(distribution: &ProbabilityDistribution, pic: PicScore, format: Format) -> String {
    match format {
        Format::Record => {
            #[derive(Serialize)]
            struct PicRecord<'a> {
                frame: &'a [String],
                probabilities: &'a [f64],
                pic: PicScore,
            }
            to_json(&PicRecord {
                frame: distribution.frame().labels(),
                probabilities: distribution.probabilities(),
                pic,
            })
        }
        Format::Table => format!("PIC: {:.6}\n", pic.value()),
    }
}

pub fn render_report(report: &DecisionReport, format: Format) -> String {
    match format {
        Format::Record => to_json(&DecisionRecord::from(report)),
        Format::Table => {
            let frame = report.distribution.frame();
            let w = label_width(frame, "hypothesis");
            let mut out = String::new();
            let _ = writeln!(out, "profile: {}", report.profile_name);
            let _ = writeln!(
                out,
                "sum Bel: {:.6}  sum Pl: {:.6}",
                report.sum_bel, report.sum_pl
            );
            let _ = writeln!(
                out,
                "{}",
                method_line(report.method, report.epsilon, report.iterations)
            );
            let _ = writeln!(
                out,
                "{:<w$}  probability  above {}",
                "hypothesis", report.decision_threshold
            );
            for (label, p) in report.distribution.iter() {
                let mark = if report.selected.iter().any(|s| s == label) {
                    "yes"
                } else {
                    "no"
                };
                let _ = writeln!(out, "{label:<w$}  {p:<11.6}  {mark}");
            }
            let _ = writeln!(out, "PIC: {:.6}", report.pic.value());
            let _ = writeln!(out, "selected: [{}]", report.selected.join(", "));
            out
        }
    }
}

pub fn render_comparison(comparison: &Comparison, format: Format) -> String {
    match format {
        Format::Record => to_json(&ComparisonRecord::from(comparison)),
        Format::Table => {
            let frame = comparison.frame();
            let col = frame
                .labels()
                .iter()
                .map(|l| l.chars().count())
                .max()
                .unwrap_or(0)
                .max(8);
            let mut out = String::new();
            let _ = writeln!(
                out,
                "sum Bel: {:.6}  sum Pl: {:.6}",
                comparison.sum_bel, comparison.sum_pl
            );
            if let Some(t) = comparison.decision_threshold {
                let _ = writeln!(out, "decision threshold: {t}");
            }
            let mut header = format!("{:<6}", "method");
            for label in frame.labels() {
                let _ = write!(header, "  {label:>col$}");
            }
            let _ = write!(header, "  {:>8}", "PIC");
            if comparison.decision_threshold.is_some() {
                let _ = write!(header, "  {:>5}", "above");
            }
            out.push_str(header.trim_end());
            out.push('\n');
            for row in &comparison.rows {
                let mut line = format!("{:<6}", row.result.method.name());
                for p in row.result.distribution.probabilities() {
                    let _ = write!(line, "  {p:>col$.6}");
                }
                let _ = write!(line, "  {:>8.6}", row.pic.value());
                if let Some(selected) = &row.selected {
                    let _ = write!(line, "  {:>5}", selected.len());
                }
                out.push_str(&line);
                out.push('\n');
            }
            for row in &comparison.rows {
                if let Some(e) = row.result.epsilon {
                    let _ = writeln!(out, "{} epsilon: {e:.6}", row.result.method);
                }
                if let Some(n) = row.result.iterations {
                    let _ = writeln!(out, "{} iterations: {n}", row.result.method);
                }
            }
            if comparison.decision_threshold.is_some() {
                for row in &comparison.rows {
                    if let Some(selected) = &row.selected {
                        let _ = writeln!(
                            out,
                            "{} selected: [{}]",
                            row.result.method,
                            selected.join(", ")
                        );
                    }
                }
            }
            out
        }
    }
}
