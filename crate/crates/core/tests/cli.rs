mod common;

use common::{fixture_path, run_cli};
use pignistic::io::{ComparisonRecord, DecisionRecord, TransformRecord};
use pignistic::TransformKind;

#[test]
fn invalid_catalog_kinds_and_exit_codes() {
    for &(file, kind, expected, code) in common::INVALID_CATALOG {
        assert_eq!(
            common::catalog_kind(file, kind).unwrap(),
            expected,
            "{file}"
        );
        let args = common::catalog_cli_args(file, kind);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (status, stdout, stderr) = run_cli(&args);
        assert_eq!(status, code, "{file}: {stderr}");
        assert!(stdout.is_empty());
        assert!(stderr.starts_with("error: "), "{file}: {stderr}");
    }
}

#[test]
fn record_errors_name_the_record() {
    let (_, _, stderr) = run_cli(&[
        "compare",
        "--input",
        &fixture_path("invalid/unknown_label.json"),
    ]);
    assert!(stderr.contains("record 1"), "{stderr}");
    let (_, _, stderr) = run_cli(&[
        "compare",
        "--input",
        &fixture_path("invalid/truncated.json"),
    ]);
    assert!(stderr.contains("line 2"), "{stderr}");
}

#[test]
fn transform_single_bet_p_table() {
    let (code, out, _) = run_cli(&[
        "transform",
        "--method",
        "betp",
        "--input",
        &fixture_path("combat_id.json"),
    ]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().filter(|l| l.contains("0.")).collect();
    assert!(out.starts_with("method: BetP\n"));
    for (label, value) in [
        ("F", "0.398333"),
        ("N", "0.343333"),
        ("U", "0.153333"),
        ("H", "0.105000"),
    ] {
        assert!(
            rows.iter()
                .any(|r| r.starts_with(label) && r.ends_with(value)),
            "{label} {value} missing in\n{out}"
        );
    }
    assert!(out.contains("PIC: 0.092643"));
}

#[test]
fn transform_record_reads_back_exactly() {
    let (code, out, _) = run_cli(&[
        "transform",
        "--method",
        "prscp",
        "--input",
        &fixture_path("combat_id.json"),
        "--format",
        "record",
    ]);
    assert_eq!(code, 0);
    let record: TransformRecord = serde_json::from_str(&out).unwrap();
    let m = common::combat_id();
    let direct = pignistic::pr_sc_p(&m, &pignistic::SolverConfig::default()).unwrap();
    assert_eq!(record.method, TransformKind::PrScP);
    assert_eq!(record.probabilities, direct.distribution.probabilities());
    assert_eq!(record.iterations, direct.iterations);
    assert_eq!(record.epsilon, None);
}

#[test]
fn pic_accepts_bba_and_distribution_documents() {
    let (code, out, _) = run_cli(&["pic", "--input", &fixture_path("combat_id.json")]);
    assert_eq!((code, out.as_str()), (0, "PIC: 0.092643\n"));

    let (code, out, _) = run_cli(&[
        "pic",
        "--input",
        &fixture_path("combat_id.json"),
        "--method",
        "prscp",
    ]);
    assert_eq!((code, out.as_str()), (0, "PIC: 0.324722\n"));

    let dir = std::env::temp_dir().join(format!("pignistic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("uniform.json");
    std::fs::write(
        &path,
        r#"{"frame": ["a", "b", "c", "d"], "probabilities": [0.25, 0.25, 0.25, 0.25]}"#,
    )
    .unwrap();
    let path = path.to_str().unwrap();
    let (code, out, _) = run_cli(&["pic", "--input", path]);
    assert_eq!((code, out.as_str()), (0, "PIC: 0.000000\n"));

    let (code, _, stderr) = run_cli(&["pic", "--input", path, "--method", "betp"]);
    assert_eq!(code, 1, "{stderr}");

    // A transform record is itself a distribution document.
    let (_, record, _) = run_cli(&[
        "transform",
        "--method",
        "prbl",
        "--input",
        &fixture_path("combat_id.json"),
        "--format",
        "record",
    ]);
    let rec_path = dir.join("prbl.json");
    std::fs::write(&rec_path, record).unwrap();
    let (code, out, _) = run_cli(&["pic", "--input", rec_path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "PIC: 0.309962\n"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn decide_with_named_profiles() {
    let input = fixture_path("combat_id.json");
    let profiles = fixture_path("profiles.json");
    let (code, out, _) = run_cli(&[
        "decide",
        "--input",
        &input,
        "--thresholds",
        &profiles,
        "--profile",
        "war",
        "--risk",
        "0.0455",
        "--format",
        "record",
    ]);
    assert_eq!(code, 0);
    let r: DecisionRecord = serde_json::from_str(&out).unwrap();
    assert_eq!(r.method, TransformKind::PrScP);
    assert_eq!(r.selected, vec!["F", "N"]);
    assert_eq!(r.profile_name, "war");

    // SumBel = 0.33 misses every peaceful rule.
    let (code, out, _) = run_cli(&[
        "decide",
        "--input",
        &input,
        "--thresholds",
        &profiles,
        "--profile",
        "peaceful",
        "--risk",
        "0.0455",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("method: BetP"), "{out}");
    assert!(out.contains("selected: [F, N, U, H]"), "{out}");

    let (code, _, stderr) = run_cli(&[
        "decide",
        "--input",
        &input,
        "--thresholds",
        &profiles,
        "--risk",
        "0.0455",
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("3 threshold profiles"), "{stderr}");

    let (code, _, _) = run_cli(&[
        "decide",
        "--input",
        &input,
        "--thresholds",
        &profiles,
        "--profile",
        "bull",
        "--risk",
        "0.0455",
    ]);
    assert_eq!(code, 1);

    let (code, _, _) = run_cli(&[
        "decide",
        "--input",
        &input,
        "--thresholds",
        &fixture_path("thresholds.json"),
        "--risk",
        "1.5",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn decide_vacuous_evidence_uses_bet_p() {
    let (code, out, _) = run_cli(&[
        "decide",
        "--input",
        &fixture_path("vacuous.json"),
        "--thresholds",
        &fixture_path("thresholds.json"),
        "--risk",
        "0.0455",
        "--format",
        "record",
    ]);
    assert_eq!(code, 0);
    let r: DecisionRecord = serde_json::from_str(&out).unwrap();
    assert_eq!(r.method, TransformKind::BetP);
    assert_eq!(r.probabilities, vec![0.25; 4]);
    assert_eq!(r.pic.value(), 0.0);
    assert_eq!((r.sum_bel, r.sum_pl), (0.0, 4.0));
}

#[test]
fn compare_record_lists_every_transform() {
    let (code, out, _) = run_cli(&[
        "compare",
        "--input",
        &fixture_path("combat_id.json"),
        "--risk",
        "0.0455",
        "--format",
        "record",
    ]);
    assert_eq!(code, 0);
    let r: ComparisonRecord = serde_json::from_str(&out).unwrap();
    let methods: Vec<_> = r.results.iter().map(|x| x.method).collect();
    assert_eq!(methods, TransformKind::ALL);
    let sizes: Vec<_> = r
        .results
        .iter()
        .map(|x| x.selected.as_ref().unwrap().len())
        .collect();
    assert_eq!(sizes, vec![4, 4, 4, 3, 2]);
}

#[test]
fn convergence_failure_exits_with_two() {
    let (code, out, stderr) = run_cli(&[
        "transform",
        "--method",
        "prscp",
        "--input",
        &fixture_path("nonconvergent.json"),
        "--max-iter",
        "3",
    ]);
    assert_eq!(code, 2, "{stderr}");
    assert!(out.is_empty());
    assert!(stderr.contains("did not converge after 3 iterations"));

    let (code, _, _) = run_cli(&[
        "transform",
        "--method",
        "prscp",
        "--input",
        &fixture_path("nonconvergent.json"),
    ]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(
        run_cli(&["transform", "--method", "smets", "--input", "x"]).0,
        1
    );
    assert_eq!(run_cli(&["compare"]).0, 1);
    assert_eq!(
        run_cli(&[
            "compare",
            "--input",
            &fixture_path("combat_id.json"),
            "--tolerance",
            "0"
        ])
        .0,
        1
    );
    assert_eq!(
        run_cli(&["compare", "--input", "/nonexistent/bba.json"]).0,
        1
    );
    assert_eq!(run_cli(&["--help"]).0, 0);
}
