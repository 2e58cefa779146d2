use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsmult")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn mult_example() {
    let o = run(&["mult", "A1", "2", "--", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn invdim_example() {
    let o = run(&["invdim", "A2", "1,0", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn renorm_check_g2_all_pass() {
    let o = run(&["renorm", "check", "g2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS") && !text.contains("FAIL"), "{text}");
}

#[test]
fn json_matches_table_mode() {
    let text = stdout(&run(&["mult", "B2", "1,0", "--", "1,0", "0,0"]));
    let doc = json(&["mult", "B2", "1,0", "--", "1,0", "0,0"]);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["multiplicity"].as_u64().unwrap().to_string(), text.trim());

    let text = stdout(&run(&["tensor", "G2", "1,0", "1,0"]));
    let doc = json(&["tensor", "G2", "1,0", "1,0"]);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    let comps = doc["components"].as_array().unwrap();
    assert_eq!(rows.len(), comps.len());
    for (row, c) in rows.iter().zip(comps) {
        let cells: Vec<&str> = row.split_whitespace().collect();
        let lambda: Vec<String> = c["lambda"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(cells[0], lambda.join(","));
        assert_eq!(cells[1], c["multiplicity"].to_string());
    }
}

#[test]
fn tensor_oracle_agrees() {
    let doc = json(&["tensor", "B3", "0,0,1", "0,0,1", "--oracle"]);
    assert_eq!(doc["oracle_agrees"], true);
}

#[test]
fn eps_weight_syntax() {
    let o = run(&["invdim", "B2", "eps:1/2,1/2", "eps:1/2,1/2"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["invdim", "A2", "1,x"][..],
        &["invdim", "Q2", "1,0"],
        &["frob", "A2"],
        &["tensor", "A2", "-1,0", "0,0"],
        &["renorm", "check", "nope"],
        &["accept", "--criteria", "11"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(!err.trim().is_empty());
    }
}

#[test]
fn verify_sweep_and_frobenius() {
    let doc = json(&["verify", "g2", "--bound", "1"]);
    assert_eq!(doc["report"]["rows"].as_array().unwrap().len(), 64);
    assert!(doc["report"]["violations"].as_array().unwrap().is_empty());
    let doc = json(&["frobenius", "A1", "-p", "2", "1", "1", "1"]);
    let row = &doc["report"]["rows"][0];
    assert_eq!((row["lhs"].as_u64(), row["rhs"].as_u64()), (Some(0), Some(1)));
}

#[test]
fn saturation_and_accept() {
    let doc = json(&["saturation", "--bound", "1"]);
    assert_eq!(doc["report"]["rows"].as_array().unwrap().len(), 64);
    assert!(doc["report"]["spin_to_sp_counterexamples"].as_array().unwrap().is_empty());
    let o = run(&["accept", "--bound", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 10);
}

#[test]
fn deterministic_across_thread_counts() {
    let a = Command::new(env!("CARGO_BIN_EXE_lsmult"))
        .args(["--json", "verify", "sp_to_spin:2", "--bound", "1"])
        .env("LSMULT_THREADS", "1")
        .output()
        .unwrap();
    let b = run(&["--json", "--threads", "4", "verify", "sp_to_spin:2", "--bound", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["chains", "B2", "1,1"]);
    let d = run(&["chains", "B2", "1,1"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn out_file_mirrors_stdout() {
    let path = std::env::temp_dir().join(format!("lsmult-out-{}.json", std::process::id()));
    let o = run(&["--json", "--out", path.to_str().unwrap(), "roots", "A2"]);
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(o.stdout, written);
    let doc: Value = serde_json::from_slice(&written).unwrap();
    assert_eq!(doc["positive_roots"].as_array().unwrap().len(), 3);
}
