//! End-to-end checks of the command-line binary: frozen extraction
//! output, evaluation numbers, and the exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const CORPUS: &str = include_str!("fixtures/corpus.jsonl");
const GOLD: &str = include_str!("fixtures/gold.json");
const EXPECTED_EXTRACT: &str = include_str!("fixtures/expected_extract.jsonl");

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multirank"))
}

fn write_fixtures(dir: &Path) -> (PathBuf, PathBuf) {
    let corpus = dir.join("corpus.jsonl");
    let gold = dir.join("gold.json");
    std::fs::write(&corpus, CORPUS).unwrap();
    std::fs::write(&gold, GOLD).unwrap();
    (corpus, gold)
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn extract_matches_frozen_output() {
    let dir = tempfile::tempdir().unwrap();
    let (corpus, _) = write_fixtures(dir.path());
    let out = bin().arg("extract").arg(&corpus).arg("-").output().unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), EXPECTED_EXTRACT);
}

#[test]
fn evaluate_reports_fixture_f1() {
    let dir = tempfile::tempdir().unwrap();
    let (corpus, gold) = write_fixtures(dir.path());
    let out = bin()
        .arg("evaluate")
        .arg(&corpus)
        .arg(&gold)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let f1_at_5 = report["macro"]["f1_at"]["5"].as_f64().unwrap();
    // hand-computed: per-document F1@5 of 2/5, 4/9 and 1/5
    assert!((f1_at_5 - 47.0 / 135.0).abs() < 1e-12, "F1@5 = {f1_at_5}");
    assert!(stderr_of(&out).contains("F1@5"), "summary table on stderr");
}

#[test]
fn missing_input_exits_1_naming_path() {
    let out = bin()
        .args(["extract", "/nonexistent/corpus.jsonl", "-"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("/nonexistent/corpus.jsonl"));
}

#[test]
fn invalid_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let (corpus, _) = write_fixtures(dir.path());
    let out = bin()
        .args(["extract", "--lambda", "1.5"])
        .arg(&corpus)
        .arg("-")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));
    assert!(stderr_of(&out).contains("lambda"));
}

#[test]
fn gold_missing_doc_exits_3_listing_id() {
    let dir = tempfile::tempdir().unwrap();
    let (corpus, _) = write_fixtures(dir.path());
    let partial = dir.path().join("partial_gold.json");
    std::fs::write(&partial, r#"{"d1": ["keyphrase extraction"]}"#).unwrap();
    let out = bin()
        .arg("evaluate")
        .arg(&corpus)
        .arg(&partial)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stderr_of(&out));
    let err = stderr_of(&out);
    assert!(err.contains("d2") && err.contains("d3"), "stderr: {err}");
}

#[test]
fn sweep_emits_sorted_grid() {
    let dir = tempfile::tempdir().unwrap();
    let (corpus, gold) = write_fixtures(dir.path());
    let out = bin()
        .args(["sweep", "--alpha-grid", "0.5,1.1", "--tau-grid", "0.6,0.9"])
        .arg(&corpus)
        .arg(&gold)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    let table = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 5, "header plus four grid rows:\n{table}");
    assert!(lines[0].starts_with("alpha\t"), "header: {}", lines[0]);
}
