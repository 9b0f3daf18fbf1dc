use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcoh")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn compute_reports_kodaira_thurston() {
    let out = run(&["compute", "(0,0,0,12)", "--omega", "13+24", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["harmonic"], serde_json::json!([1, 3, 4, 2, 1]));
    assert_eq!(v["report"]["harmonic"][3], 2);
    assert_eq!(v["report"]["hlc"], false);
}

#[test]
fn compute_restricts_to_one_k() {
    let v = json(&run(&["compute", "(0,0,0,12)", "--omega", "13+24", "--k", "2", "--json"]));
    assert_eq!(v["report"]["coeffective"].as_array().unwrap().len(), 1);
    assert_eq!(v["report"]["coeffective"][0]["k"], 2);
}

#[test]
fn k_out_of_range_is_an_error() {
    let out = run(&["compute", "(0,0,0,12)", "--omega", "13+24", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degenerate_form_is_an_error() {
    let out = run(&["compute", "(0,0,0,0)", "--omega", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn malformed_algebra_is_an_error() {
    assert_eq!(run(&["info", "(0,0,12"]).status.code(), Some(2));
}

#[test]
fn info_reports_betti_numbers() {
    let out = run(&["info", "(0,0,0,12)", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["betti"], serde_json::json!([1, 3, 4, 3, 1]));
    assert_eq!(v["flags"]["nilpotent"], true);
}

#[test]
fn verify_passes_on_torus() {
    let out = run(&["verify", "(0,0,0,0,0,0)", "--omega", "12+34+56"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 failed"));
}

#[test]
fn scan_reads_config_and_seed() {
    let dir = std::env::temp_dir().join(format!("symcoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.json");
    std::fs::write(&path, r#"{"coefficient_set": ["-1", "0", "1"], "max_samples": 40}"#).unwrap();
    let args = ["scan", "(0,0,0,12,14,15+23+24)", "--config", path.to_str().unwrap(), "--seed", "3", "--json"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, run(&args).stdout);
    assert_eq!(json(&first)["symplectic_found"], true);
}

#[test]
fn bad_config_is_an_error() {
    let dir = std::env::temp_dir().join(format!("symcoh-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.json");
    std::fs::write(&path, r#"{"coefficient_set": []}"#).unwrap();
    let out = run(&["scan", "(0,0,0,12)", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table1_flags_the_disputed_row() {
    let out = run(&["table1"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1));
    assert!(text.contains("mismatch (0,0,0,12,13,23) dim_S: expected 9, computed 11"));
    assert!(text.contains("rows matched        25/26"));
    assert!(text.contains("flexible c/f/h      7/10/10"));
}
