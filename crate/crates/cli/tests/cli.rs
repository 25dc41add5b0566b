use std::process::{Command, Output};

use serde_json::{json, Value};

fn pinchlab(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pinchlab"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("PINCHLAB_THREADS", t),
        None => cmd.env_remove("PINCHLAB_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

fn elliptic(points: Value, weights: Value) -> Value {
    json!({"curve": {"backend": "elliptic", "a": 0, "b": 1, "points": points, "weights": weights}})
}

#[test]
fn non_weierstrass_genus_two() {
    let out = pinchlab(&["semigroup", "--non-weierstrass", "2", "--horizon", "6"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["minimal_generators"], json!([3, 4, 5]));
    assert_eq!(v["members"], json!([0, 3, 4, 5, 6]));
}

#[test]
fn weighted_genus_three_model_from_abstract_pieces() {
    let input = json!({"abstract": {"weights": [2, 3], "genus": 3, "pieces": [{"degree": 5, "basis": []}]}});
    let out = pinchlab(&["model", "--in", &input.to_string()], None);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["generators"], json!(["x1^3", "x1^4", "x1^5", "x2^2", "x2^3"]));
    assert_eq!(v["M_actual"], json!(6));
    assert_eq!(v["M_bound"], json!(7));
    assert_eq!(v["gap_dimension"], json!(3));
}

#[test]
fn non_coprime_weights_exit_one() {
    let input = elliptic(json!([{"kind": "affine", "x": 0, "y": 1}, {"kind": "affine", "x": 2, "y": 3}]), json!([2, 4]));
    let out = pinchlab(&["model", "--in", &input.to_string()], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], json!("coprimality"));
}

#[test]
fn malformed_input_exit_one() {
    for args in [
        vec!["model", "--in", "{not json"],
        vec!["model", "--in", "/definitely/not/here.json"],
        vec!["model"],
        vec!["model", "--bogus"],
    ] {
        assert_eq!(pinchlab(&args, None).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(pinchlab(&["semigroup", "--non-weierstrass", "2"], Some("zero")).status.code(), Some(1));
}

#[test]
fn ghost_reports_the_cusp_condition() {
    let input = elliptic(json!([{"kind": "infinity"}]), json!([1]));
    let out = pinchlab(&["ghost", "--in", &input.to_string()], None);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["ghost_summary"], json!("first derivative at p vanishes"));
    assert_eq!(v["ghost_conditions"].as_array().unwrap().len(), 1);
}

#[test]
fn suspend_and_family() {
    let base = elliptic(json!([{"kind": "infinity"}]), json!([1]));
    let input = json!({"base": base, "new_weights": [2]});
    let out = pinchlab(&["suspend", "--in", &input.to_string()], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["digest"], json!("union of the w-axis and the curve u^3 - v^2 = 0 in the uv-plane"));

    let mut fam = elliptic(json!([{"kind": "infinity"}]), json!([1]));
    fam["pole_orders"] = json!([2, 3]);
    let out = pinchlab(&["family", "--in", &fam.to_string(), "--horizon", "4"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["pole_orders"], json!([2, 3]));
    assert_eq!(v["fibre_report"]["pass"], json!(true));
}

#[test]
fn oracle_task() {
    let out = pinchlab(&["oracle", "--in", r#"{"task": "semigroup", "generators": [2, 5]}"#], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["gaps"], json!([1, 3]));
}

#[test]
fn failing_corpus_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.json");
    let report = dir.path().join("report.json");
    let text = json!({"records": [{
        "id": "wrong-genus",
        "citation": "deliberately wrong expectation",
        "kind": "semigroup",
        "input": {"generators": [2, 5]},
        "expected": {"genus": 3}
    }]});
    std::fs::write(&corpus, text.to_string()).unwrap();
    let out = pinchlab(
        &["verify-paper", "--in", corpus.to_str().unwrap(), "--out", report.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["failed"], json!(["wrong-genus"]));
}

#[test]
fn out_file_matches_stdout_and_thread_count_is_irrelevant() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    let input = elliptic(
        json!([{"kind": "affine", "x": 0, "y": 1}, {"kind": "affine", "x": 2, "y": 3}, {"kind": "affine", "x": -1, "y": 0}]),
        json!([1, 1, 1]),
    )
    .to_string();
    let a = pinchlab(&["model", "--in", &input, "--horizon", "3"], Some("1"));
    let b = pinchlab(&["model", "--in", &input, "--horizon", "3", "--out", path.to_str().unwrap()], Some("4"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert!(b.stdout.is_empty());
    assert_eq!(a.stdout, std::fs::read(&path).unwrap());
}

#[test]
fn verify_paper_passes_and_is_deterministic() {
    let a = pinchlab(&["verify-paper"], Some("1"));
    let b = pinchlab(&["verify-paper"], Some("3"));
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["pass"], json!(true));
}
