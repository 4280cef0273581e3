//! End-to-end tests of the `wpdeg` binary: exit codes, diagnostics, output
//! stability, and the JSON report round trip.

use std::io::Write;
use std::process::{Command, Output};

use wpdeg::report::Report;

fn wpdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpdeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

const ELLIPTIC: &str = r#"{
  "schema_version": 1,
  "mode": "monodromy",
  "n": 1,
  "payload": {
    "T": [[1, 1], [0, 1]],
    "Q": [[0, 1], [-1, 0]],
    "alpha": [0, 1]
  }
}"#;

const SMOOTH_K3: &str = r#"{
  "schema_version": 1,
  "mode": "central_fibre",
  "n": 2,
  "payload": {
    "components": [
      {"id": "K3", "hodge": [[1, 0, 1], [0, 20, 0], [1, 0, 1]]}
    ]
  }
}"#;

const TWO_LINES: &str = r#"{
  "schema_version": 1,
  "mode": "central_fibre",
  "n": 1,
  "payload": {
    "components": [
      {"id": "A", "hodge": [[1, 0], [0, 1]]},
      {"id": "B", "hodge": [[1, 0], [0, 1]]}
    ],
    "strata": [{"components": ["A", "B"], "hodge": [[1]]}]
  }
}"#;

#[test]
fn classify_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let elliptic = write_file(&dir, "elliptic.json", ELLIPTIC);
    let out = wpdeg(&["classify", &elliptic]);
    assert_eq!(out.status.code(), Some(3), "infinite distance exits 3");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: infinite"));
    assert!(text.contains("N^1"), "witness names the pairing index");

    let k3 = write_file(&dir, "k3.json", SMOOTH_K3);
    let out = wpdeg(&["classify", &k3]);
    assert_eq!(out.status.code(), Some(0), "finite distance exits 0");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: finite"));
}

#[test]
fn malformed_input_exits_one_with_field_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(
        &dir,
        "bad.json",
        r#"{"schema_version": 1, "mode": "monodromy", "n": 1,
            "payload": {"T": [[1, 0.25]], "Q": [[0]], "alpha": [1]}}"#,
    );
    let out = wpdeg(&["classify", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("payload.T"),
        "diagnostic names the field: {text}"
    );

    let missing = dir.path().join("missing.json");
    let out = wpdeg(&["classify", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn wrong_parity_polarization_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    // Weight 1 with a symmetric form violates the weight-parity rule.
    let doc = r#"{
      "schema_version": 1,
      "mode": "monodromy",
      "n": 1,
      "payload": {
        "T": [[1, 1], [0, 1]],
        "Q": [[1, 0], [0, 1]],
        "alpha": [0, 1]
      }
    }"#;
    let path = write_file(&dir, "parity.json", doc);
    let out = wpdeg(&["classify", &path]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("weight-parity") || text.contains("skew"),
        "message cites the parity rule: {text}"
    );
}

#[test]
fn quasi_unipotent_monodromy_is_rejected_with_base_change_hint() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{
      "schema_version": 1,
      "mode": "monodromy",
      "n": 1,
      "payload": {
        "T": [[0, 1], [1, 0]],
        "Q": [[0, 1], [-1, 0]],
        "alpha": [0, 1]
      }
    }"#;
    let path = write_file(&dir, "quasi.json", doc);
    let out = wpdeg(&["classify", &path]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("base change"), "{text}");
}

#[test]
fn weight_filtration_command_prints_graded_ranks_and_bases() {
    let dir = tempfile::tempdir().unwrap();
    let elliptic = write_file(&dir, "elliptic.json", ELLIPTIC);
    let out = wpdeg(&["wf", &elliptic]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("graded ranks: [1, 0, 1]"));
    assert!(text.contains("W_0"));
    // wf refuses other modes
    let k3 = write_file(&dir, "k3.json", SMOOTH_K3);
    let out = wpdeg(&["wf", &k3]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn spectral_command_reproduces_the_two_line_cohomology() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "twolines.json", TWO_LINES);
    let out = wpdeg(&["spectral", &path, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    let fibre = report.central_fibre.expect("spectral section");
    assert_eq!(fibre.h_total, vec![Some(1), Some(0), Some(2)]);
}

#[test]
fn nodal_command_emits_transcript_and_hypothesis_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_file(
        &dir,
        "n3.json",
        r#"{"schema_version": 1, "mode": "nodal", "n": 3, "payload": {"nodes": 2, "k": 1}}"#,
    );
    let out = wpdeg(&["nodal", &good]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("k_i = 2k+n = 5"));
    assert!(text.contains("verdict: finite"));

    let low = write_file(
        &dir,
        "n2.json",
        r#"{"schema_version": 1, "mode": "nodal", "n": 2, "payload": {"nodes": 1, "k": 0}}"#,
    );
    let out = wpdeg(&["nodal", &low]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("requires dimension >= 3"));
}

#[test]
fn catalog_list_and_run() {
    let out = wpdeg(&["catalog", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "elliptic_Ik",
        "kulikov_I",
        "kulikov_II",
        "kulikov_III",
        "nodal_n3",
        "nodal_n5",
        "mum_weight3",
    ] {
        assert!(text.contains(name), "catalog lists {name}");
    }
    let out = wpdeg(&["catalog", "run"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "every entry matches its verdict"
    );
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let elliptic = write_file(&dir, "elliptic.json", ELLIPTIC);
    for format in ["text", "json"] {
        let a = wpdeg(&["classify", &elliptic, "--format", format, "--quadrature"]);
        let b = wpdeg(&["classify", &elliptic, "--format", format, "--quadrature"]);
        assert_eq!(a.stdout, b.stdout, "{format} output is deterministic");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn json_reports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let elliptic = write_file(&dir, "elliptic.json", ELLIPTIC);
    for args in [
        vec!["classify", elliptic.as_str(), "--quadrature"],
        vec!["wf", elliptic.as_str()],
        vec!["orbit", elliptic.as_str()],
        vec!["catalog", "run"],
    ] {
        let mut full = args.clone();
        full.extend(["--format", "json"]);
        let out = wpdeg(&full);
        let parsed: Report = serde_json::from_slice(&out.stdout).unwrap();
        let reserialized = serde_json::to_string_pretty(&parsed).unwrap();
        let reparsed: Report = serde_json::from_str(&reserialized).unwrap();
        assert_eq!(parsed, reparsed, "round trip is lossless for {args:?}");
        assert_eq!(parsed.exit_code, out.status.code().unwrap());
    }
}

#[test]
fn paired_mismatch_exits_two() {
    // Infinite-distance orbit data against a fibre carrying a top form.
    let doc = r#"{
      "schema_version": 1,
      "mode": "paired",
      "n": 1,
      "payload": {
        "monodromy": {
          "T": [[1, 1], [0, 1]],
          "Q": [[0, 1], [-1, 0]],
          "alpha": [0, 1]
        },
        "central_fibre": {
          "components": [
            {"id": "E", "hodge": [[1, 1], [1, 1]]}
          ]
        }
      }
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "mismatch.json", doc);
    let out = wpdeg(&["classify", &path]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("inconsistent pair"), "{text}");
}

#[test]
fn routes_disagreement_exits_two() {
    // A pairing that is blind to the Jordan block under alpha: the two
    // equivalent tests split, proving the input is not polarized limit data.
    let doc = r#"{
      "schema_version": 1,
      "mode": "monodromy",
      "n": 1,
      "payload": {
        "T": [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        "Q": [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
        "alpha": [0, 1, 0, 0]
      }
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "disagree.json", doc);
    let out = wpdeg(&["classify", &path]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pairing route"), "{text}");
}

#[test]
fn strict_mode_elevates_validity_failures() {
    // Same invalid pairing but with alpha placed so both routes agree:
    // plain classify succeeds, strict mode flags the broken isometry.
    let doc = r#"{
      "schema_version": 1,
      "mode": "monodromy",
      "n": 1,
      "payload": {
        "T": [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        "Q": [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
        "alpha": [1, 0, 1, 0]
      }
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "strictcase.json", doc);
    let out = wpdeg(&["classify", &path]);
    assert_eq!(out.status.code(), Some(0), "plain run classifies");
    let out = wpdeg(&["classify", &path, "--strict"]);
    assert_eq!(out.status.code(), Some(1), "strict run rejects");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("strict mode"), "{text}");
}
