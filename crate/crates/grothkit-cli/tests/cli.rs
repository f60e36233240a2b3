//! End-to-end tests of the binary: worked values, output contracts, exit
//! codes, and the cache lifecycle. Every invocation runs in a subprocess
//! with the cache disabled unless the test supplies its own root.

use serde_json::Value;
use std::process::{Command, Output};

fn grothkit(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_grothkit"));
    cmd.args(args);
    cmd.env("GROTHKIT_CACHE", "");
    cmd.env_remove("GROTHKIT_THREADS");
    for (key, value) in envs {
        cmd.env(key, value);
    }
    cmd.output().expect("the binary runs")
}

fn document(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn assert_success(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "expected success, got {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    document(out)
}

#[test]
fn localize_renders_the_worked_value() {
    let out = grothkit(
        &["localize", "--type", "A", "--rank", "3", "--word", "2,1,2", "--u", "2"],
        &[],
    );
    let doc = assert_success(&out);
    assert_eq!(doc["latex"], "\\beta^{-1} - \\beta^{-1} X_{1} X_{3}^{-1}");
    assert_eq!(doc["agree"], true);
    assert_eq!(doc["given_word"], serde_json::json!([2, 1, 2]));
    assert_eq!(doc["u_word"], serde_json::json!([2]));
    assert_eq!(doc["hproduct"], doc["billey"]);

    let group = grothkit::typea::sym_group(4);
    let w = group.elem_from_word(&[2, 1, 2]).unwrap();
    assert_eq!(doc["word"], serde_json::json!(group.word(w)));
}

#[test]
fn localize_accepts_one_line_input() {
    let by_word = assert_success(&grothkit(
        &["localize", "--type", "A", "--rank", "3", "--word", "2,3,2", "--u", "3"],
        &[],
    ));
    let by_perm = assert_success(&grothkit(
        &["localize", "--type", "A", "--rank", "3", "--perm", "1,4,3,2", "--u", "3"],
        &[],
    ));
    assert_eq!(by_word["hproduct"], by_perm["hproduct"]);
    assert_eq!(by_word["latex"], by_perm["latex"]);
}

#[test]
fn compute_renders_the_three_term_polynomial() {
    let doc = assert_success(&grothkit(&["compute", "--n", "3", "--perm", "1,3,2"], &[]));
    assert_eq!(doc["class"], "grothendieck");
    assert_eq!(doc["permutation"], serde_json::json!([1, 3, 2]));
    assert_eq!(doc["word"], serde_json::json!([2]));
    assert_eq!(
        doc["latex"],
        "-\\beta^{-1} X_{1}^{-1} X_{2}^{-1} Y_{1} Y_{2} + \\beta^{-1}"
    );

    let dual = assert_success(&grothkit(
        &["compute", "--n", "3", "--word", "2", "--dual"],
        &[],
    ));
    assert_eq!(dual["class"], "dual");
    assert_eq!(dual["permutation"], serde_json::json!([1, 3, 2]));
    assert_ne!(dual["value"], doc["value"]);
}

#[test]
fn pipedreams_enumerates_the_three_contributing_tilings() {
    let doc = assert_success(&grothkit(&["pipedreams", "--n", "3", "--perm", "1,3,2"], &[]));
    assert_eq!(doc["count"], 3);
    assert_eq!(
        doc["latex"],
        "-\\beta^{-1} X_{1}^{-1} X_{2}^{-1} Y_{1} Y_{2} + \\beta^{-1}"
    );
    let dreams = doc["dreams"].as_array().unwrap();
    assert_eq!(dreams.len(), 3);
    for expected in [
        serde_json::json!([["bump", "bump"], ["cross"]]),
        serde_json::json!([["bump", "cross"], ["bump"]]),
        serde_json::json!([["bump", "cross"], ["marked_cross"]]),
    ] {
        assert!(
            dreams.iter().any(|d| d["tiles"] == expected),
            "missing tiling {expected}"
        );
    }
    for dream in dreams {
        let non_bump = dream["tiles"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|row| row.as_array().unwrap())
            .filter(|tile| *tile != "bump")
            .count();
        assert_eq!(dream["word"].as_array().unwrap().len(), non_bump);
        assert!(dream["ascii"].as_str().unwrap().contains('/'));
    }
}

#[test]
fn coproduct_of_a_generator_has_three_terms() {
    let doc = assert_success(&grothkit(
        &["coproduct", "--type", "A", "--rank", "1", "--word", "1"],
        &[],
    ));
    assert_eq!(
        doc["terms"],
        serde_json::json!([
            { "coefficient": [[0, 1]], "u": [], "v": [1] },
            { "coefficient": [[0, 1]], "u": [1], "v": [] },
            { "coefficient": [[1, -1]], "u": [1], "v": [1] },
        ])
    );
    assert_eq!(
        doc["latex"],
        "\\mathfrak{G}_{e} \\otimes \\mathfrak{G}_{s_{1}} + \\mathfrak{G}_{s_{1}} \\otimes \\mathfrak{G}_{e} - \\beta \\mathfrak{G}_{s_{1}} \\otimes \\mathfrak{G}_{s_{1}}"
    );

    let b2 = assert_success(&grothkit(
        &["coproduct", "--type", "B", "--rank", "2", "--word", "2,1"],
        &[],
    ));
    assert!(!b2["terms"].as_array().unwrap().is_empty());
}

#[test]
fn beta_value_agrees_with_the_specialized_symbolic_output() {
    let symbolic = assert_success(&grothkit(&["compute", "--n", "3", "--perm", "1,3,2"], &[]));
    let at_one = assert_success(&grothkit(
        &["compute", "--n", "3", "--perm", "1,3,2", "--beta", "value(1)"],
        &[],
    ));
    assert_eq!(at_one["beta"], "value(1)");
    assert_eq!(at_one["latex"], "-X_{1}^{-1} X_{2}^{-1} Y_{1} Y_{2} + 1");

    // Evaluating each symbolic coefficient at beta = 1 must reproduce the
    // value-mode coefficients term by term.
    let symbolic_terms = symbolic["value"]["terms"].as_array().unwrap();
    let value_terms = at_one["value"]["terms"].as_array().unwrap();
    assert_eq!(symbolic_terms.len(), value_terms.len());
    for (s, v) in symbolic_terms.iter().zip(value_terms) {
        assert_eq!(s["exponents"], v["exponents"]);
        let specialized: i64 = s["coefficient"]
            .as_array()
            .unwrap()
            .iter()
            .map(|pair| pair[1].as_i64().unwrap())
            .sum();
        assert_eq!(v["coefficient"], specialized.to_string());
    }

    let localized = assert_success(&grothkit(
        &[
            "localize", "--type", "A", "--rank", "3", "--word", "2,1,2", "--u", "2",
            "--beta", "value(1)",
        ],
        &[],
    ));
    assert_eq!(localized["latex"], "1 - X_{1} X_{3}^{-1}");
    assert_eq!(localized["agree"], true);
}

#[test]
fn beta_value_zero_reports_the_pole() {
    let out = grothkit(
        &["compute", "--n", "3", "--perm", "1,3,2", "--beta", "value(0)"],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let doc = document(&out);
    assert!(doc["error"]["message"]
        .as_str()
        .unwrap()
        .contains("pole at beta = 0"));
}

#[test]
fn verify_single_check_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = grothkit(
        &[
            "verify", "--name", "quadratic_braid", "--type", "B", "--rank", "2",
            "--scope", "sampled(5)", "--seed", "7",
            "--out", path.to_str().unwrap(),
        ],
        &[],
    );
    let doc = assert_success(&out);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["scope"], "sampled(5)");
    let report = &doc["reports"][0];
    assert_eq!(report["name"], "quadratic_braid");
    assert_eq!(report["status"], "pass");
    assert_eq!(report["seed"], 7);

    let written: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["passed"], true);
    assert_eq!(written["reports"][0]["name"], "quadratic_braid");
}

#[test]
fn verify_all_runs_the_whole_catalog() {
    let out = grothkit(
        &["verify", "--name", "all", "--type", "A", "--rank", "2", "--seed", "3"],
        &[],
    );
    let doc = assert_success(&out);
    assert_eq!(doc["passed"], true);
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), grothkit::identities::CATALOG.len());
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn usage_errors_exit_two_without_output() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["localize", "--type", "Q", "--rank", "2", "--word", "1", "--u", "1"],
        &["localize", "--type", "A", "--rank", "9", "--word", "1", "--u", "1"],
        &["localize", "--type", "B", "--rank", "2", "--perm", "1,2,3", "--u", "1"],
        &["localize", "--type", "A", "--rank", "2", "--word", "1", "--u", "7"],
        &["compute", "--n", "3"],
        &["compute", "--n", "3", "--perm", "1,3,2", "--word", "2"],
        &["compute", "--n", "3", "--perm", "3,3,1"],
        &["compute", "--n", "99", "--perm", "1,3,2"],
        &["compute", "--n", "3", "--perm", "1,3,2", "--beta", "numeric"],
        &["compute", "--n", "3", "--word", "1,x"],
        &["verify", "--name", "nonsense", "--type", "A", "--rank", "2"],
        &["verify", "--name", "billey", "--type", "A", "--rank", "2", "--scope", "some"],
    ];
    for args in cases {
        let out = grothkit(args, &[]);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(out.stdout.is_empty(), "stdout for {args:?}");
        assert!(!out.stderr.is_empty(), "stderr for {args:?}");
    }
}

#[test]
fn computation_errors_exit_one_with_an_error_object() {
    let out = grothkit(
        &[
            "localize", "--type", "A", "--rank", "2",
            "--word", "1,2,1,2,1,2,1,2,1,2,1,2,1,2,1,2,1", "--u", "1",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let doc = document(&out);
    assert!(doc["error"]["message"].as_str().unwrap().contains("16"));
}

#[test]
fn cache_lifecycle_under_a_private_root() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_str().unwrap();

    let empty = assert_success(&grothkit(&["cache", "list"], &[("GROTHKIT_CACHE", root)]));
    assert_eq!(empty["count"], 0);
    assert_eq!(empty["root"], root);

    assert_success(&grothkit(
        &["localize", "--type", "A", "--rank", "2", "--word", "1,2", "--u", "1"],
        &[("GROTHKIT_CACHE", root)],
    ));
    let listed = assert_success(&grothkit(&["cache", "list"], &[("GROTHKIT_CACHE", root)]));
    assert_eq!(listed["count"], 1);

    let cleared = assert_success(&grothkit(&["cache", "clear"], &[("GROTHKIT_CACHE", root)]));
    assert_eq!(cleared["removed"], 1);
    let after = assert_success(&grothkit(&["cache", "list"], &[("GROTHKIT_CACHE", root)]));
    assert_eq!(after["count"], 0);

    // An empty root disables caching entirely.
    let disabled = assert_success(&grothkit(&["cache", "list"], &[]));
    assert_eq!(disabled["root"], Value::Null);
    assert_eq!(disabled["count"], 0);

    // --no-cache computes without touching the store.
    assert_success(&grothkit(
        &["localize", "--type", "A", "--rank", "2", "--word", "1,2", "--u", "1", "--no-cache"],
        &[("GROTHKIT_CACHE", root)],
    ));
    let untouched = assert_success(&grothkit(&["cache", "list"], &[("GROTHKIT_CACHE", root)]));
    assert_eq!(untouched["count"], 0);
}

#[test]
fn output_bytes_are_stable_across_runs_and_cache_hits() {
    let first = grothkit(&["compute", "--n", "4", "--perm", "2,4,1,3"], &[]);
    let second = grothkit(&["compute", "--n", "4", "--perm", "2,4,1,3"], &[]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_str().unwrap();
    let args = ["localize", "--type", "A", "--rank", "3", "--word", "2,1,2", "--u", "2"];
    let miss = grothkit(&args, &[("GROTHKIT_CACHE", root)]);
    let hit = grothkit(&args, &[("GROTHKIT_CACHE", root)]);
    assert!(miss.status.success());
    assert_eq!(miss.stdout, hit.stdout);
}

#[test]
fn thread_env_variable_is_honored_and_validated() {
    let pinned = grothkit(
        &["compute", "--n", "3", "--perm", "1,3,2"],
        &[("GROTHKIT_THREADS", "1")],
    );
    let free = grothkit(&["compute", "--n", "3", "--perm", "1,3,2"], &[]);
    assert!(pinned.status.success());
    assert_eq!(pinned.stdout, free.stdout);

    let bad = grothkit(
        &["compute", "--n", "3", "--perm", "1,3,2"],
        &[("GROTHKIT_THREADS", "zero")],
    );
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("GROTHKIT_THREADS"));
}
