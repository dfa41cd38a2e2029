use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn trusskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trusskit"))
        .args(args)
        .env_remove("TRUSSKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("stdout is not json ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const ZERO_RING: &str = r#"{"orders":[2,2],"gen_products":[[[0,0],[0,0]],[[0,0],[0,0]]]}"#;

fn proj_datum(first: bool) -> String {
    let img = if first { "[[1,0],[0,0]]" } else { "[[0,0],[0,1]]" };
    format!(r#"{{"ring":{ZERO_RING},"sigma_right_images":{img},"sigma_left_images":{img},"s":[0,0]}}"#)
}

#[test]
fn classify_klein_group() {
    let o = trusskit(&["classify", "--group", "2,2"]);
    assert!(o.status.success());
    let v = json_out(&o);
    assert_eq!(v["class_count"], 23);
    assert_eq!(v["classes"].as_array().unwrap().len(), 23);

    let o = trusskit(&["classify", "--group", "2,2", "--rings"]);
    assert_eq!(json_out(&o)["class_count"], 8);
}

#[test]
fn output_format_follows_extension() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let o = trusskit(&["classify", "--group", "3", "--out", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.lines().next().unwrap().contains(','));
    assert!(!text.trim_start().starts_with('{'));
}

#[test]
fn sharded_run_matches_single_and_reuses_checkpoints() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck");
    let single = json_out(&trusskit(&["classify", "--group", "2,2"]));
    let args = ["classify", "--group", "2,2", "--shards", "3", "--checkpoint-dir", ck.to_str().unwrap()];
    let first = json_out(&trusskit(&args));
    assert_eq!(first, single);
    assert_eq!(std::fs::read_dir(&ck).unwrap().count(), 3);
    let again = json_out(&trusskit(&args));
    assert_eq!(again, single);
}

#[test]
fn bad_truss_fails_validation_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", r#"{"orders":[2],"mult_table":[1,1,1,0]}"#);
    let o = trusskit(&["validate", "--truss", &p]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "axiom-violation");
    assert!(err["witness"].is_array());
}

#[test]
fn catalog_truss_validates() {
    let dir = tempfile::tempdir().unwrap();
    let o = trusskit(&["ring", "dual", "--truss"]);
    assert!(o.status.success());
    let p = write(dir.path(), "t.json", std::str::from_utf8(&o.stdout).unwrap());
    let o = trusskit(&["validate", "--truss", &p]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn projections_are_weakly_but_not_translationally_equivalent() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", &proj_datum(true));
    let b = write(dir.path(), "b.json", &proj_datum(false));
    let v = json_out(&trusskit(&["equiv", "--datum", &a, "--datum", &b]));
    assert_eq!(v["weak"], true);
    assert_eq!(v["translational"], false);
    let v = json_out(&trusskit(&["equiv", "--datum", &a, "--datum", &a]));
    assert_eq!(v["translational"], true);
}

#[test]
fn extend_reports_smallness_and_words() {
    let dir = tempfile::tempdir().unwrap();
    let o = trusskit(&["ring", "dual", "--truss"]);
    let t = write(dir.path(), "t.json", std::str::from_utf8(&o.stdout).unwrap());
    let o = trusskit(&[
        "extend", "--truss", &t, "--elem", "[1,0]", "--mode", "words", "--word", "e 0 e", "--minimal-search",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_out(&o);
    assert_eq!(v["smallness"]["locally_small"], true);
    assert_eq!(v["normal_forms"][0]["index"], 2);
    assert!(v["minimal_search"]["Found"].is_object());

    let o = trusskit(&["extend", "--truss", &t, "--elem", "[1,0]", "--word", "e 0"]);
    assert!(o.status.success());
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = trusskit(&["verify", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suite_passes() {
    let o = trusskit(&["verify", "simple-two", "--p", "2", "--side", "row"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_out(&o)["passed"], true);
}

#[test]
fn resource_threshold_exits_three() {
    let o = trusskit(&["--omega-limit", "2", "classify", "--group", "2,2"]);
    assert_eq!(o.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "resource");
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"omega_limit": 2}"#);
    let o = trusskit(&["--config", &cfg, "classify", "--group", "2,2"]);
    assert_eq!(o.status.code(), Some(3));
    let bad = write(dir.path(), "bad.json", r#"{"omega": 2}"#);
    let o = trusskit(&["--config", &bad, "classify", "--group", "2"]);
    assert_eq!(o.status.code(), Some(2));
}
