use std::path::{Path, PathBuf};

use artin3::cli::{run, EXIT_COVERAGE_GAP, EXIT_OK, EXIT_SCHEMA, EXIT_USAGE};

fn artin3(dir: &Path, args: &[&str]) -> i32 {
    let mut v = vec!["artin3", "--out-dir", dir.to_str().unwrap()];
    v.extend_from_slice(args);
    run(v)
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

#[test]
fn chartab_writes_table_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(artin3(dir.path(), &["chartab", "A5"]), EXIT_OK);
    let table: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("chartab_A5.json")).unwrap()).unwrap();
    assert_eq!(table["orthogonality"], true);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("chartab.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["exit_code"], 0);
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(artin3(dir.path(), &["chartab", "Q8"]), EXIT_USAGE);
    assert_eq!(artin3(dir.path(), &["no-such-command"]), EXIT_USAGE);
    assert_eq!(artin3(dir.path(), &["conductor", "--shape", "A6:7=2"]), EXIT_USAGE);
    assert_eq!(artin3(dir.path(), &["--help"]), EXIT_OK);
}

#[test]
fn classify_octahedral_rotations() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.json");
    std::fs::write(&gens, r#"{"generators": [[[0,-1,0],[1,0,0],[0,0,1]], [[0,0,1],[1,0,0],[0,1,0]]]}"#).unwrap();
    assert_eq!(artin3(dir.path(), &["classify", "--generators", gens.to_str().unwrap()]), EXIT_OK);
    let out: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("classify.json")).unwrap()).unwrap();
    assert_eq!(out["order"], 24);
    assert_eq!(out["in_so3"], true);
}

#[test]
fn conductor_and_small_enumerations() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(artin3(dir.path(), &["conductor", "--shape", "A5:7=2,11=3,13=5,2=w"]), EXIT_OK);
    assert_eq!(artin3(dir.path(), &["enum-cubic", "--max-disc", "300", "--oracle"]), EXIT_OK);
    let csv = std::fs::read_to_string(dir.path().join("cubic_fields.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().contains("-23"));
    assert_eq!(artin3(dir.path(), &["quadchar", "--field", "x^3 - x - 1", "--max-cond", "100", "--radius", "1"]), EXIT_OK);
    assert!(dir.path().join("quadchar.csv").exists());
}

#[test]
fn census_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let tables = format!("{},{}", data("quartic_sample.csv"), data("quintic_sample.jsonl"));
    // the sample tables do not reach the wild discriminant thresholds
    assert_eq!(artin3(dir.path(), &["census", "--grid", "10,20", "--tables", &tables]), EXIT_COVERAGE_GAP);

    let bad = dir.path().join("bad.csv");
    let text = std::fs::read_to_string(data("quartic_sample.csv")).unwrap().replacen("3136", "3137", 1);
    std::fs::write(&bad, text).unwrap();
    assert_eq!(artin3(dir.path(), &["census", "--grid", "10,20", "--tables", bad.to_str().unwrap()]), EXIT_SCHEMA);
}
