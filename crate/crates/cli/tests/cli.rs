use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_covercraft"));
    c.env_remove("COVERCRAFT_LIMIT");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn file(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn phi_of_c6() {
    let o = run(&["group", "phi", "C6"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["value"], 3);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn malformed_group_is_invalid_input() {
    for spec in ["C1", "Cx", "0,3", ""] {
        let o = run(&["group", "phi", spec]);
        assert_eq!(code(&o), 2, "{spec:?}");
    }
}

#[test]
fn fmin_and_blocking() {
    let v = json(&run(&["group", "fmin", "C2*C2", "--mode", "cosets"]));
    assert_eq!(v["value"], 3);
    let v = json(&run(&["group", "blocking", "--n", "2", "--p", "3"]));
    assert_eq!(v["value"], 5);
    assert_eq!(code(&run(&["group", "blocking", "--n", "2", "--p", "4"])), 2);
}

#[test]
fn exhausted_budget_and_limit_exit_three() {
    assert_eq!(code(&run(&["group", "gmin", "C2*C6"])), 3);
    assert_eq!(code(&run(&["group", "phi", "C16", "--max-cosets", "2"])), 3);
    let o = bin().args(["group", "phi", "C8"]).env("COVERCRAFT_LIMIT", "4").output().unwrap();
    assert_eq!(code(&o), 3);
    let o = bin().args(["group", "phi", "C8"]).env("COVERCRAFT_LIMIT", "zero").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn ajt_check_fixed_matrices() {
    let o = run_stdin(&["ajt", "check", "-"], "3 2 2\n1 1\n1 2\n");
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["ajt"], false);
    assert_eq!(v["methods_agree"], true);
    let v = json(&run_stdin(&["ajt", "check", "-"], r#"{"q":5,"rows":[[1,1],[1,2]]}"#));
    assert_eq!(v["ajt"], true);
    assert_eq!(v["methods_agree"], true);
    let v = json(&run_stdin(&["ajt", "check", "-"], "4 1 1\n3\n"));
    assert_eq!(v["ajt"], true);
    assert_eq!(v["methods"].as_array().unwrap().len(), 2);
    assert_eq!(code(&run_stdin(&["ajt", "check", "-"], "3 1 2\n1 1\n")), 2);
}

#[test]
fn ajt_scan_plane() {
    let v = json(&run(&["ajt", "scan", "--p", "3", "--n", "2"]));
    assert_eq!(v["found"], true);
    assert_eq!(v["cover"]["brute_force_witness"], Value::Null);
    assert_eq!(json(&run(&["ajt", "scan", "--p", "5", "--n", "2"]))["found"], false);
}

#[test]
fn hyperplane_commands() {
    let dir = tempfile::tempdir().unwrap();
    let lines = file(&dir, "h.txt", "3 2 3\n1 0 0\n1 0 1\n1 0 2\n");
    let v = json(&run(&["hyperplane", "cover-check", &lines]));
    assert_eq!(v["covers"], true);
    assert_eq!(v["irredundant"], true);
    assert_eq!(v["codim"], 1);
    assert_eq!(v["admissible"], false);
    let v = json(&run(&["hyperplane", "ratio", &lines]));
    assert_eq!(v["check"]["holds"], true);
    let redundant = file(&dir, "r.txt", "3 1 4\n1 0\n1 1\n1 2\n2 0\n");
    assert_eq!(code(&run(&["hyperplane", "ratio", &redundant])), 2);
    let v = json(&run(&["hyperplane", "min", "--q", "3", "--n", "2"]));
    assert_eq!(v["value"], 4);
    assert_eq!(v["invariant"], "h");
    let v = json(&run(&["hyperplane", "min", "--q", "3", "--n", "1"]));
    assert_eq!(v["value"], "unattainable");
}

#[test]
fn basis_commands() {
    let dir = tempfile::tempdir().unwrap();
    let two = file(&dir, "b.txt", "3 1 1\n1\n3 1 1\n1\n");
    let v = json(&run(&["basis", "additive", &two, "--target", "2"]));
    assert_eq!(v["representable"], true);
    let v = json(&run(&["basis", "nowhere-zero", &two, "--target", "0"]));
    assert_eq!(v["exists"], true);
    assert_eq!(code(&run(&["basis", "to-affine-cover", &two, "--target", "0"])), 2);
    let binary = file(&dir, "c.txt", "2 2 2\n1 0\n0 1\n2 2 2\n1 0\n0 1\n2 2 2\n1 0\n0 1\n");
    let o = run(&["basis", "to-affine-cover", &binary, "--target", "0,0"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["dim_u"], 4);
    assert_eq!(v["irredundant"], true);
}

#[test]
fn matroid_commands() {
    let dir = tempfile::tempdir().unwrap();
    let m = file(&dir, "m.txt", "2 2 4\n1 0 1 0\n0 1 0 1\n");
    let v = json(&run(&["matroid", "rank", &m, "--subset", "0,2"]));
    assert_eq!(v["rank"], 1);
    let v = json(&run(&["matroid", "pack", &m, "--k", "2"]));
    assert_eq!(v["count"], 2);
    assert_eq!(v["packing_subset"]["bases"].as_array().unwrap().len(), 2);
    assert_eq!(code(&run(&["matroid", "rank", &m, "--subset", "7"])), 2);
}

#[test]
fn graph_commands() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = file(&dir, "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let tri = file(&dir, "t.txt", "3 3\n0 1\n1 2\n0 2\n");
    let v = json(&run(&["graph", "color", "--q", "3", &tri]));
    assert_eq!((v["colorable"].clone(), v["parity"].clone(), v["methods_agree"].clone()), (true.into(), true.into(), true.into()));
    let v = json(&run(&["graph", "color", "--q", "3", &k4]));
    assert_eq!(v["colorable"], false);
    assert_eq!(v["methods_agree"], true);
    assert_eq!(json(&run(&["graph", "flow", "--group", "C3", &k4]))["flow"], Value::Null);
    assert!(json(&run(&["graph", "flow", "--group", "C2*C2", &k4]))["flow"].is_array());
    assert_eq!(code(&run_stdin(&["graph", "flow", "--group", "C3", "-"], "2 1\n0 0\n")), 2);
}

#[test]
fn cover_audit() {
    let dir = tempfile::tempdir().unwrap();
    let sys = file(
        &dir,
        "c.json",
        r#"[{"subgroup_elements":[0,2],"representative":0},{"subgroup_elements":[0,2],"representative":1}]"#,
    );
    let v = json(&run(&["cover", "audit", "C4", &sys]));
    assert_eq!(v["report"]["covers_target"], true);
    assert_eq!(v["index_bound"]["k"], 2);
    let bad = file(&dir, "d.json", r#"[{"subgroup_elements":[0,1],"representative":0}]"#);
    assert_eq!(code(&run(&["cover", "audit", "C4", &bad])), 2);
}

#[test]
fn suites_exit_codes_and_determinism() {
    assert_eq!(code(&run(&["suite", "nope"])), 2);
    let a = run(&["suite", "flows", "--threads", "1"]);
    let b = run(&["suite", "flows", "--threads", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["suite", "ajt-equiv", "--seed", "7", "--threads", "1"]);
    let d = run(&["suite", "ajt-equiv", "--seed", "7", "--threads", "4"]);
    assert_eq!(c.stdout, d.stdout);
    assert_eq!(json(&c)["seed"], 7);
}

#[test]
fn evidence_from_cache() {
    let fresh = json(&run(&["evidence"]));
    let entries = fresh["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 8);
    assert!(entries.iter().all(|e| e["status"] == "not yet computed"));

    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    for s in ["phi-table", "fedthm-scan", "hyperplane-min"] {
        assert_eq!(code(&run(&["suite", s, "--cache-dir", cache])), 0);
    }
    let v = json(&run(&["evidence", "--cache-dir", cache]));
    let entry = |id: &str| v["entries"].as_array().unwrap().iter().find(|e| e["id"] == id).unwrap().clone();
    let p1 = entry("pyber-1");
    assert_eq!(p1["status"], "computed");
    assert!(p1["instances_checked"].as_u64().unwrap() > 20);
    assert!(p1["bounds"][0].as_str().unwrap().contains("<= 16"));
    assert_eq!(entry("pyber-2")["status"], "computed");
    let thecon = entry("thecon");
    assert!(thecon["bounds"].as_array().unwrap().iter().any(|b| b.as_str().unwrap().contains("codim < 2k/3 holds on all found instances")));
    assert_eq!(entry("ajt")["status"], "not yet computed");
    assert!(v["l_ratio_table"].is_array());
}
