use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use semicon::fixtures;
use semicon::SemilatticeTable;

fn semicon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semicon"))
        .args(args)
        .env_remove("SEMICON_MAX_N")
        .env_remove("SEMICON_MAX_UBTAS")
        .env_remove("SEMICON_MAX_CONGRUENCE_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_table(dir: &Path, name: &str, t: &SemilatticeTable) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(t).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let b4 = write_table(dir.path(), "b4.json", &semicon::named("b4").unwrap());
    assert_eq!(semicon(&["validate", &b4]).status.code(), Some(0));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n":4,"meet":[[0,0,0,0],[0,1,3,0],[0,3,2,0],[0,0,0,3]]}"#).unwrap();
    let o = semicon(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("associative"));

    let malformed = dir.path().join("malformed.json");
    fs::write(&malformed, "{\"n\": 3, \"meet\": [[0,").unwrap();
    assert_eq!(semicon(&["validate", malformed.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(semicon(&["validate", "/no/such/file.json"]).status.code(), Some(3));
}

#[test]
fn validate_names_axioms() {
    let cases = [
        (r#"{"n":2,"meet":[[0,0],[0,0]]}"#, "idempotent"),
        (r#"{"n":3,"meet":[[0,0,0],[0,1,0],[0,1,2]]}"#, "commutative"),
        (r#"{"n":2,"meet":[[0,1],[1,1]]}"#, "least"),
    ];
    for (table, word) in cases {
        let o = semicon(&["validate", table]);
        assert_eq!(o.status.code(), Some(2), "{table}");
        let err = String::from_utf8_lossy(&o.stderr).to_lowercase();
        assert!(err.contains(word), "{table}: {err}");
    }
}

#[test]
fn count_all_methods_on_m3() {
    let o = semicon(&["--format", "json", "count", "named:m3", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["counts"]["congruences"], 12);
    assert_eq!(v["counts"]["subsets"], 12);
    assert_eq!(v["counts"]["incl-excl"], 12);
    assert_eq!(v["agree"], true);
}

#[test]
fn count_chain_and_threshold_form() {
    let o = semicon(&["count", "named:chain_6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("32 = 32·2^(6-6)"));
}

#[test]
fn count_thirteen_element_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    for (i, f) in fixtures::thirteen_element_f_and_n6().iter().enumerate() {
        let path = write_table(dir.path(), &format!("f13_{i}.json"), &f.table);
        let o = semicon(&["--format", "json", "count", &path, "--method", "all"]);
        assert_eq!(o.status.code(), Some(0), "{}", f.label);
        let v = json(&o);
        assert_eq!(v["counts"]["incl-excl"], 3200, "{}", f.label);
        assert_eq!(v["counts"]["subsets"], 3200, "{}", f.label);
        assert_eq!(v["threshold_form"], "25·2^(13-6)");
    }
}

#[test]
fn count_method_out_of_bounds() {
    let o = semicon(&["count", "named:chain_6", "--method", "congruences", "--max-congruence-n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    // with all, the out-of-bound method is skipped
    let o = semicon(&["count", "named:chain_6", "--method", "all", "--max-congruence-n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("congruences: skipped"));
}

#[test]
fn classify_examples() {
    let v = json(&semicon(&["--format", "json", "classify", "named:n5"]));
    assert_eq!(v["class"], "NucleusN5");
    assert_eq!(v["congruence_count"], 13);

    let v = json(&semicon(&["--format", "json", "classify", "named:chain_9"]));
    assert_eq!(v["class"], "Tree");
    assert_eq!(v["congruence_count"], 256);

    let dir = tempfile::tempdir().unwrap();
    for (i, f) in fixtures::twelve_element_n5().iter().enumerate() {
        let path = write_table(dir.path(), &format!("n5_{i}.json"), &f.table);
        let o = semicon(&["--format", "json", "classify", &path]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        assert_eq!(v["class"], "NucleusN5", "{}", f.label);
        assert_eq!(v["congruence_count"], 1664, "{}", f.label);
        assert_eq!(v["predicted_count"], 1664);
    }
}

#[test]
fn spectrum_five() {
    let v = json(&semicon(&["--format", "json", "spectrum", "5"]));
    assert_eq!(v["values"], serde_json::json!([12, 13, 14, 16]));
    let o = semicon(&["spectrum", "5"]);
    assert!(stdout(&o).starts_with("n = 5: {12, 13, 14, 16}"));
}

#[test]
fn spectrum_top_too_many() {
    assert_eq!(semicon(&["spectrum", "3", "--top", "2"]).status.code(), Some(2));
    let v = json(&semicon(&["--format", "json", "spectrum", "6", "--top", "4"]));
    let top: Vec<u64> = v["top"].as_array().unwrap().iter().map(|e| e["value"].as_u64().unwrap()).collect();
    assert_eq!(top, vec![32, 28, 26, 25]);
}

#[test]
fn enumerate_to_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("four");
    let o = semicon(&["enumerate", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let files: Vec<_> = fs::read_dir(&out).unwrap().collect();
    assert_eq!(files.len(), 5);
    for f in files {
        let text = fs::read_to_string(f.unwrap().path()).unwrap();
        let t: SemilatticeTable = serde_json::from_str(&text).unwrap();
        assert_eq!(t.n(), 4);
    }
}

#[test]
fn enumerate_ndjson_and_filters() {
    let lines = |args: &[&str]| stdout(&semicon(args)).lines().count();
    assert_eq!(lines(&["enumerate", "5"]), 15);
    assert_eq!(lines(&["enumerate", "5", "--filter", "tree"]), 9);
    assert_eq!(lines(&["enumerate", "5", "--filter", "class:NucleusN5"]), 1);
    assert_eq!(lines(&["enumerate", "4", "--filter", "lattice"]), 2);
    assert_eq!(semicon(&["enumerate", "4", "--filter", "bogus"]).status.code(), Some(2));
    assert_eq!(semicon(&["enumerate", "10"]).status.code(), Some(2));
}

#[test]
fn verify_seven_passes() {
    let o = semicon(&["verify", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 9);
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn env_bound_respected_and_overridden() {
    let o = Command::new(env!("CARGO_BIN_EXE_semicon"))
        .args(["enumerate", "5"])
        .env("SEMICON_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_semicon"))
        .args(["--max-n", "5", "enumerate", "5"])
        .env("SEMICON_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn dot_export() {
    let edges = |args: &[&str]| stdout(&semicon(args)).lines().filter(|l| l.contains("->")).count();
    assert_eq!(edges(&["export-dot", "named:chain_3"]), 2);
    assert_eq!(edges(&["export-dot", "named:b4"]), 4);
    let o = semicon(&["export-dot", "named:n5", "--mark-nucleus"]);
    assert_eq!(stdout(&o).matches("style=filled").count(), 5);
    let o = semicon(&["export-dot", "named:chain_3", "--mark-nucleus"]);
    assert_eq!(stdout(&o).matches("style=filled").count(), 0);
}

#[test]
fn json_output_is_byte_stable() {
    let runs = [
        vec!["--format", "json", "spectrum", "6", "--witnesses"],
        vec!["enumerate", "6"],
        vec!["--format", "json", "classify", "named:grid2x3"],
    ];
    for args in runs {
        let a = semicon(&args).stdout;
        let b = Command::new(env!("CARGO_BIN_EXE_semicon"))
            .args(&args)
            .env("RAYON_NUM_THREADS", "1")
            .output()
            .unwrap()
            .stdout;
        assert_eq!(a, b, "{args:?}");
    }
}
