#![allow(dead_code)]

use pignistic::{FocalSet, Frame, MassFunction};
use rand::Rng;

pub const COMBAT_ID: &str = include_str!("../fixtures/combat_id.json");

pub fn fixture_path(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn combat_id() -> MassFunction {
    pignistic::io::parse_bba_document(COMBAT_ID).unwrap()
}

pub fn frame(n: usize) -> Frame {
    Frame::new((0..n).map(|i| format!("h{i}"))).unwrap()
}

/// Random BBA over `n` hypotheses with up to `max_focal` focal sets. Roughly
/// one in five draws is Bayesian.
pub fn random_bba<R: Rng>(rng: &mut R, n: usize, max_focal: usize) -> MassFunction {
    let full = (1u64 << n) - 1;
    let bayesian = rng.gen_bool(0.2);
    let limit = if bayesian { n } else { full as usize };
    let count = rng.gen_range(1..=max_focal.min(limit));
    let mut masks: Vec<u64> = Vec::new();
    while masks.len() < count {
        let mask = if bayesian {
            1u64 << rng.gen_range(0..n)
        } else {
            rng.gen_range(1..=full)
        };
        if !masks.contains(&mask) {
            masks.push(mask);
        }
    }
    let weights: Vec<f64> = masks.iter().map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    MassFunction::from_masks(
        frame(n),
        masks
            .into_iter()
            .zip(weights.into_iter().map(|w| w / total)),
    )
    .unwrap()
}

/// Every BBA over `n` hypotheses whose masses are multiples of `1 / steps`,
/// records listed in increasing mask order (zero masses included).
pub fn grid_bbas(n: usize, steps: u32) -> Vec<MassFunction> {
    let subsets = (1u64 << n) - 1;
    let mut out = Vec::new();
    let mut counts = vec![0u32; subsets as usize];
    compositions(steps, &mut counts, 0, &mut |c| {
        let records = c
            .iter()
            .enumerate()
            .map(|(i, &k)| (i as u64 + 1, f64::from(k) / f64::from(steps)));
        out.push(MassFunction::from_masks(frame(n), records).unwrap());
    });
    out
}

fn compositions(remaining: u32, counts: &mut [u32], at: usize, f: &mut impl FnMut(&[u32])) {
    if at + 1 == counts.len() {
        counts[at] = remaining;
        f(counts);
        return;
    }
    for k in 0..=remaining {
        counts[at] = k;
        compositions(remaining - k, counts, at + 1, f);
    }
}

use pignistic::io::DocumentError;
use pignistic::{FrameError, ThresholdError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocKind {
    Bba,
    Thresholds,
}

/// Invalid fixtures with the error kind each must produce and the CLI exit
/// status that goes with it.
pub const INVALID_CATALOG: &[(&str, DocKind, &str, i32)] = &[
    ("mass_sum_short.json", DocKind::Bba, "MassSumMismatch", 1),
    ("mass_sum_over.json", DocKind::Bba, "MassSumMismatch", 1),
    ("duplicate_label.json", DocKind::Bba, "DuplicateLabel", 1),
    ("empty_frame.json", DocKind::Bba, "EmptyFrame", 1),
    ("frame_too_large.json", DocKind::Bba, "FrameTooLarge", 1),
    ("unknown_label.json", DocKind::Bba, "UnknownLabel", 1),
    ("empty_set_mass.json", DocKind::Bba, "EmptySetMass", 1),
    (
        "duplicate_focal_set.json",
        DocKind::Bba,
        "DuplicateFocalSet",
        1,
    ),
    ("mass_out_of_range.json", DocKind::Bba, "MassOutOfRange", 1),
    ("truncated.json", DocKind::Bba, "ParseError", 1),
    ("elements_not_list.json", DocKind::Bba, "ParseError", 1),
    (
        "thresholds_unordered.json",
        DocKind::Thresholds,
        "ValidationError",
        1,
    ),
    (
        "thresholds_missing_pl.json",
        DocKind::Thresholds,
        "ParseError",
        1,
    ),
];

pub fn error_kind(e: &DocumentError) -> &'static str {
    match e {
        DocumentError::Parse { .. } => "ParseError",
        DocumentError::Threshold(ThresholdError::NotAscending { .. })
        | DocumentError::Threshold(ThresholdError::NotFinite { .. }) => "ValidationError",
        DocumentError::Mass(f) => match f {
            FrameError::EmptyFrame => "EmptyFrame",
            FrameError::EmptyLabel { .. } => "EmptyLabel",
            FrameError::DuplicateLabel { .. } => "DuplicateLabel",
            FrameError::FrameTooLarge { .. } => "FrameTooLarge",
            FrameError::UnknownLabel { .. } => "UnknownLabel",
            FrameError::EmptySetMass { .. } => "EmptySetMass",
            FrameError::DuplicateFocalSet { .. } => "DuplicateFocalSet",
            FrameError::MassOutOfRange { .. } => "MassOutOfRange",
            FrameError::MassSumMismatch { .. } => "MassSumMismatch",
            FrameError::FrameMismatch => "FrameMismatch",
            FrameError::InvalidSubset { .. } => "InvalidSubset",
        },
        DocumentError::Distribution(_) => "DistributionError",
        DocumentError::UnknownProfile { .. } => "UnknownProfile",
        DocumentError::AmbiguousProfile { .. } => "AmbiguousProfile",
        DocumentError::UnrecognizedDocument => "UnrecognizedDocument",
    }
}

/// Parses an invalid fixture and returns the error kind it produced.
pub fn catalog_kind(file: &str, kind: DocKind) -> Result<&'static str, String> {
    let text = std::fs::read_to_string(fixture_path(&format!("invalid/{file}")))
        .map_err(|e| format!("{file}: {e}"))?;
    let result = match kind {
        DocKind::Bba => pignistic::io::parse_bba_document(&text).map(|_| ()),
        DocKind::Thresholds => pignistic::io::parse_threshold_document(&text).map(|_| ()),
    };
    match result {
        Ok(()) => Err(format!("{file}: accepted")),
        Err(e) => Ok(error_kind(&e)),
    }
}

/// Runs the CLI binary, returning (exit code, stdout, stderr).
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_pignistic"))
        .args(args)
        .output()
        .expect("failed to run pignistic");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// CLI arguments that feed an invalid fixture to the matching subcommand.
pub fn catalog_cli_args(file: &str, kind: DocKind) -> Vec<String> {
    let path = fixture_path(&format!("invalid/{file}"));
    match kind {
        DocKind::Bba => vec!["compare".into(), "--input".into(), path],
        DocKind::Thresholds => vec![
            "decide".into(),
            "--input".into(),
            fixture_path("combat_id.json"),
            "--thresholds".into(),
            path,
            "--risk".into(),
            "0.0455".into(),
        ],
    }
}

/// Focal sets as membership vectors, independent of the bitmask encoding.
pub fn focal_members(m: &MassFunction) -> Vec<(Vec<bool>, f64)> {
    let labels = m.frame().labels();
    m.focal_sets()
        .map(|(set, mass)| {
            let names = set.labels();
            (
                labels.iter().map(|l| names.contains(&l.as_str())).collect(),
                mass,
            )
        })
        .collect()
}

pub fn all_subsets(n: usize) -> Vec<Vec<bool>> {
    (1..1usize << n)
        .map(|k| (0..n).map(|i| k >> i & 1 == 1).collect())
        .collect()
}

pub fn to_focal_set(m: &MassFunction, members: &[bool]) -> FocalSet {
    let labels: Vec<&str> = m
        .frame()
        .labels()
        .iter()
        .zip(members)
        .filter(|(_, &inside)| inside)
        .map(|(l, _)| l.as_str())
        .collect();
    m.frame().subset(labels).unwrap()
}

/// Σ over every subset A ∋ x of m(A)/|A|, subsets in increasing mask order.
pub fn bet_p_by_enumeration(m: &MassFunction) -> Vec<f64> {
    let n = m.frame().len();
    let mut out = vec![0.0; n];
    for members in all_subsets(n) {
        let set = to_focal_set(m, &members);
        let mass = m.mass(&set).unwrap();
        let size = members.iter().filter(|&&x| x).count() as f64;
        for (i, &inside) in members.iter().enumerate() {
            if inside {
                out[i] += mass / size;
            }
        }
    }
    out
}

/// Right-hand side of the self-consistent equation evaluated at `p`.
pub fn self_consistent_rhs(m: &MassFunction, p: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len()];
    for (members, mass) in focal_members(m) {
        let idx: Vec<usize> = (0..p.len()).filter(|&i| members[i]).collect();
        let denom: f64 = idx.iter().map(|&i| p[i]).sum();
        for &i in &idx {
            out[i] += if denom > 0.0 {
                mass * p[i] / denom
            } else {
                mass / idx.len() as f64
            };
        }
    }
    out
}
