use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algebroid")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stdout))
    });
    (v, out.status.code().unwrap())
}

fn temp_model(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("algebroid-cli-{}-{name}.json", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn cohomology_dims_of_presets() {
    let (v, code) = json(&["cohomology", "kt"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["cohomology"]["dims"], serde_json::json!([1, 3, 4, 3, 1]));
    let (v, _) = json(&["cohomology", "affine-2"]);
    assert_eq!(v["cohomology"]["dims"], serde_json::json!([1, 1, 0]));
}

#[test]
fn json_output_is_byte_identical() {
    for args in [
        &["theorems", "kt", "--json"][..],
        &["cohomology", "abelian-2m", "--m", "2", "--bigraded", "--json"],
        &["bgeometry", "b-torus", "--m", "1", "--json"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["theorems", "abelian-2m", "--m", "2"]).status.code(), Some(0));
    assert_eq!(run(&["theorems", "kt", "--hard-lefschetz"]).status.code(), Some(1));
    assert_eq!(run(&["validate", "kt"]).status.code(), Some(1));
    assert_eq!(run(&["bgeometry", "b-sphere", "--m", "1"]).status.code(), Some(0));
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "/nonexistent/model.json"]).status.code(), Some(2));
}

#[test]
fn malformed_index_is_a_parse_error() {
    let path = temp_model("bad-index", r#"{"rank":2,"structure":[{"i":0,"j":1,"k":1,"c":"1"}]}"#);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("structure[0].i"));
    std::fs::remove_file(path).ok();
}

#[test]
fn custom_model_file_matches_preset() {
    let path = temp_model(
        "affine",
        r#"{"rank":2,"structure":[{"i":1,"j":2,"k":2,"c":"1"}]}"#,
    );
    let (v, code) = json(&["cohomology", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["cohomology"]["dims"], serde_json::json!([1, 1, 0]));
    std::fs::remove_file(path).ok();
}

#[test]
fn bigraded_needs_complex_structure() {
    let out = run(&["cohomology", "kt", "--bigraded"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("complex structure"));
}

#[test]
fn b_manifold_given_as_model_points_to_bgeometry() {
    let out = run(&["theorems", "b-sphere"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("algebroid bgeometry b-sphere"));
}

#[test]
fn list_presets_names_everything() {
    let out = run(&["list-presets"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["abelian-2m", "kt", "affine-2", "e2-flat", "cp1-ring", "b-sphere", "b-torus"] {
        assert!(text.contains(name), "{name} missing");
    }
}

#[test]
fn custom_b_manifold() {
    let (v, code) = json(&["bgeometry", "--bm", "1,0,1", "--bz", "1,1", "--m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["bgeometry"]["source"], "custom");
    assert_eq!(v["bgeometry"]["dims"], serde_json::json!([1, 1, 2]));
    assert_eq!(run(&["bgeometry", "b-sphere", "--bm", "1,0,1"]).status.code(), Some(2));
}

#[test]
fn timing_only_when_requested() {
    let (v, _) = json(&["cohomology", "kt"]);
    assert!(v.get("runtime_ms").is_none());
    let (v, _) = json(&["cohomology", "kt", "--timing"]);
    assert!(v.get("runtime_ms").is_some());
}
