//! End-to-end tests for the `opspam` binary: exit codes, JSON shapes, and
//! deterministic output.

mod common;

use std::fs;
use std::process::Output;

use serde_json::Value;

use common::{fixture, opspam};
use opspam::corpus::serialize_corpus;
use opspam::ontology::serialize_ontology;
use opspam::synth::{synthetic_corpus, synthetic_ontology};

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_json(output: &Output) -> Value {
    let text = String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8");
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stderr {text:?} not JSON: {e}"))
}

/// Write a synthetic ontology and labeled corpus into `dir`, returning the
/// two file paths.
fn synth_inputs(
    dir: &tempfile::TempDir,
    spam_per_type: usize,
    truthful: usize,
    seed: u64,
) -> (std::path::PathBuf, std::path::PathBuf) {
    let ontology_path = dir.path().join("syn600.ont");
    let corpus_path = dir.path().join("corpus.jsonl");
    fs::write(&ontology_path, serialize_ontology(&synthetic_ontology())).unwrap();
    let corpus = synthetic_corpus(spam_per_type, truthful, seed);
    fs::write(&corpus_path, serialize_corpus(&corpus)).unwrap();
    (ontology_path, corpus_path)
}

#[test]
fn check_ontology_reports_fixture_counts() {
    let output = opspam()
        .args(["check-ontology", "--ontology"])
        .arg(fixture("phone_hotel.ont"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), "classes=14 entities=52\n");
}

#[test]
fn classify_labels_the_worked_examples() {
    let output = opspam()
        .args(["classify", "--ontology"])
        .arg(fixture("phone_hotel.ont"))
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--input")
        .arg(fixture("reviews/worked_examples.jsonl"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {:?}", output.stderr);
    assert!(output.stderr.is_empty());
    let lines: Vec<Value> = stdout_of(&output)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let labels: Vec<&str> = lines.iter().map(|v| v["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["brand_only", "off_topic", "untruthful"]);
    for line in &lines {
        assert!(line["triggered"].is_array());
        assert!(line["profile"]["o"].is_number());
    }
}

#[test]
fn classify_labels_the_sheraton_review_untruthful() {
    let output = opspam()
        .args(["classify", "--ontology"])
        .arg(fixture("phone_hotel.ont"))
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--input")
        .arg(fixture("reviews/one_sheraton_review.jsonl"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let verdict: Value = serde_json::from_str(stdout_of(&output).trim()).unwrap();
    assert_eq!(verdict["label"], "untruthful");
}

#[test]
fn classify_writes_the_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("verdicts.jsonl");
    let piped = opspam()
        .args(["classify", "--ontology"])
        .arg(fixture("phone_hotel.ont"))
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--input")
        .arg(fixture("reviews/worked_examples.jsonl"))
        .output()
        .unwrap();
    let written = opspam()
        .args(["classify", "--ontology"])
        .arg(fixture("phone_hotel.ont"))
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--input")
        .arg(fixture("reviews/worked_examples.jsonl"))
        .arg("--output")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(written.status.code(), Some(0));
    assert!(written.stdout.is_empty());
    assert_eq!(fs::read(&out_path).unwrap(), piped.stdout);
}

#[test]
fn classify_is_byte_identical_across_reruns_and_jobs() {
    let run = |jobs: &str| {
        opspam()
            .args(["classify", "--jobs", jobs, "--ontology"])
            .arg(fixture("phone_hotel.ont"))
            .arg("--lexicons")
            .arg(fixture("lexicons"))
            .arg("--input")
            .arg(fixture("reviews/worked_examples.jsonl"))
            .output()
            .unwrap()
    };
    let first = run("1");
    let second = run("1");
    let parallel = run("4");
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, parallel.stdout);
}

#[test]
fn evaluate_rejects_unlabeled_reviews_with_a_line_number() {
    let output = opspam()
        .args(["evaluate", "--ontology"])
        .arg(fixture("phone_hotel.ont"))
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--input")
        .arg(fixture("reviews/one_sheraton_review.jsonl"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let error = stderr_json(&output);
    assert_eq!(error["error"], "input");
    assert_eq!(error["line"], 1);
}

#[test]
fn evaluate_scores_a_labeled_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let (ontology_path, corpus_path) = synth_inputs(&dir, 2, 2, 5);
    let output = opspam()
        .args(["evaluate", "--ontology"])
        .arg(&ontology_path)
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--input")
        .arg(&corpus_path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {:?}", output.stderr);
    let report: Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(report["overall"]["precision"], 1.0);
    assert_eq!(report["overall"]["recall"], 1.0);
    assert_eq!(report["overall"]["f"], 1.0);
    assert_eq!(report["per_type"].as_object().unwrap().len(), 4);
    assert_eq!(report["counts"]["gold"]["truthful"], 2);
}

#[test]
fn tune_reports_the_best_thresholds() {
    let dir = tempfile::tempdir().unwrap();
    let (ontology_path, corpus_path) = synth_inputs(&dir, 2, 2, 9);
    for mode in ["coordinate", "exhaustive"] {
        let output = opspam()
            .args(["tune", "--mode", mode, "--grid"])
            .arg(fixture("grid_small.json"))
            .arg("--ontology")
            .arg(&ontology_path)
            .arg("--lexicons")
            .arg(fixture("lexicons"))
            .arg("--input")
            .arg(&corpus_path)
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(0), "stderr: {:?}", output.stderr);
        let result: Value = serde_json::from_str(&stdout_of(&output)).unwrap();
        assert_eq!(result["best_f"], 1.0, "mode {mode}");
        assert!(result["evaluations"].as_u64().unwrap() >= 1);
        assert!(result["best"]["theta_u"].is_number());
    }
}

#[test]
fn usage_errors_exit_one() {
    let output = opspam().arg("frobnicate").output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert_eq!(stderr_json(&output)["error"], "usage");

    let output = opspam()
        .args(["classify", "--jobs", "0", "--ontology"])
        .arg(fixture("phone_hotel.ont"))
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--input")
        .arg(fixture("reviews/one_sheraton_review.jsonl"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert_eq!(stderr_json(&output)["error"], "usage");
}

#[test]
fn help_and_version_print_to_stdout() {
    let help = opspam().arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout_of(&help).contains("classify"));

    let version = opspam().arg("--version").output().unwrap();
    assert_eq!(version.status.code(), Some(0));
    assert!(stdout_of(&version).contains("opspam"));
}

#[test]
fn missing_ontology_exits_three() {
    let output = opspam()
        .args(["classify", "--ontology", "/nonexistent/void.ont"])
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--input")
        .arg(fixture("reviews/one_sheraton_review.jsonl"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    assert_eq!(stderr_json(&output)["error"], "load");
}

#[test]
fn malformed_corpus_line_reports_its_number() {
    let dir = tempfile::tempdir().unwrap();
    let corpus_path = dir.path().join("broken.jsonl");
    fs::write(
        &corpus_path,
        concat!(
            r#"{"category":"hotel","product_name":"sheraton chicago hotel","content":"Fine stay."}"#,
            "\nnot json at all\n",
        ),
    )
    .unwrap();
    let output = opspam()
        .args(["classify", "--ontology"])
        .arg(fixture("phone_hotel.ont"))
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--input")
        .arg(&corpus_path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let error = stderr_json(&output);
    assert_eq!(error["error"], "input");
    assert_eq!(error["line"], 2);
}

#[test]
fn unknown_category_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let corpus_path = dir.path().join("boat.jsonl");
    fs::write(
        &corpus_path,
        r#"{"category":"boat","product_name":"sea queen","content":"Smooth sailing."}"#,
    )
    .unwrap();
    let output = opspam()
        .args(["classify", "--ontology"])
        .arg(fixture("phone_hotel.ont"))
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--input")
        .arg(&corpus_path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let error = stderr_json(&output);
    assert_eq!(error["error"], "input");
    assert_eq!(error["line"], 1);
}

#[test]
fn invalid_thresholds_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let thresholds_path = dir.path().join("thresholds.json");
    fs::write(
        &thresholds_path,
        r#"{"theta_u":2,"theta_o":0.02,"theta_b":1.5,"m_min":3,"theta_f":0.4,"theta_n":0.5,
            "theta_ut":0.5,"w1":0.25,"w2":0.25,"w3":0.25,"w4":0.25,"op_min":2,"ext_ref":0.05}"#,
    )
    .unwrap();
    let output = opspam()
        .args(["classify", "--ontology"])
        .arg(fixture("phone_hotel.ont"))
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--thresholds")
        .arg(&thresholds_path)
        .arg("--input")
        .arg(fixture("reviews/one_sheraton_review.jsonl"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_json(&output)["error"], "input");
}

#[test]
fn invalid_grid_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let (ontology_path, corpus_path) = synth_inputs(&dir, 1, 1, 3);
    let grid_path = dir.path().join("grid.json");
    fs::write(&grid_path, r#"{"theta_b":[]}"#).unwrap();
    let output = opspam()
        .args(["tune", "--mode", "exhaustive", "--grid"])
        .arg(&grid_path)
        .arg("--ontology")
        .arg(&ontology_path)
        .arg("--lexicons")
        .arg(fixture("lexicons"))
        .arg("--input")
        .arg(&corpus_path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_json(&output)["error"], "input");
}
