use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hamlift(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamlift"))
        .args(args)
        .current_dir(dir)
        .env_remove("HAMLIFT_MAX_ELEMENTS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn petersen_pipeline_is_a_proven_exception() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "p.json", r#"{"type":"gp","n":5,"k":2}"#);
    let o = hamlift(&["pipeline", "p.json"], dir.path());
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("exception_petersen"), "{err}");
}

#[test]
fn truncated_petersen_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "t.json", r#"{"type":"truncation","base":{"type":"gp","n":5,"k":2}}"#);
    let o = hamlift(&["pipeline", "t.json", "--trace-json"], dir.path());
    assert_eq!(code(&o), 2);
    let trace: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(trace["case"], "exception_truncated_petersen");
}

#[test]
fn search_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.json", r#"{"type":"gp","n":12,"k":5}"#);
    let o = hamlift(&["search", "g.json", "-o", "cert.json"], dir.path());
    assert_eq!(code(&o), 0);
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("cert.json")).unwrap()).unwrap();
    assert_eq!(cert["order"], 24);
    assert_eq!(cert["producer"], "search");
    let o = hamlift(&["verify", "cert.json", "--graph", "g.json"], dir.path());
    assert_eq!(code(&o), 0);

    write(dir.path(), "h.json", r#"{"type":"gp","n":12,"k":1}"#);
    let o = hamlift(&["verify", "cert.json", "--graph", "h.json"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("hash mismatch"));
}

#[test]
fn search_budget_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "t.json", r#"{"type":"truncation","base":{"type":"gp","n":5,"k":2}}"#);
    let o = hamlift(&["search", "t.json", "--budget", "5"], dir.path());
    assert_eq!(code(&o), 3);
}

#[test]
fn edge_list_input_and_dot_build() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c.txt", "0 1\n1 2\n2 3\n3 0\n");
    let o = hamlift(&["search", "c.txt"], dir.path());
    assert_eq!(code(&o), 0);
    write(dir.path(), "g.json", r#"{"type":"gp","n":5,"k":1}"#);
    let o = hamlift(&["build", "g.json", "--format", "dot"], dir.path());
    assert_eq!(code(&o), 0);
    let dot = String::from_utf8_lossy(&o.stdout);
    assert!(dot.starts_with("graph") && dot.contains("u0"), "{dot}");
    let o = hamlift(&["build", "g.json"], dir.path());
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 15);
}

#[test]
fn quotient_and_lift() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.json", r#"{"type":"gp","n":10,"k":3}"#);
    let rho = "(0 2 4 6 8)(1 3 5 7 9)(10 12 14 16 18)(11 13 15 17 19)";
    let o = hamlift(&["quotient", "g.json", "--rho", rho], dir.path());
    assert_eq!(code(&o), 0);
    let q: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(q["cells"].as_array().unwrap().len(), 4);
    let o = hamlift(&["lift", "g.json", "--rho", rho, "--cycle", "0,1,3,2"], dir.path());
    assert_eq!(code(&o), 0);
    let cert: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert["producer"], "lift");
    write(dir.path(), "blocks.txt", "0 1 2 3 4 5 6 7 8 9\n10 11 12 13 14 15 16 17 18 19\n");
    let o = hamlift(&["quotient", "g.json", "--blocks", "blocks.txt", "--dot"], dir.path());
    assert!(String::from_utf8_lossy(&o.stdout).contains("0 -- 1"));
}

#[test]
fn demos() {
    let dir = tempfile::tempdir().unwrap();
    for (family, params, order) in [
        ("caseA", "r=11", 110),
        ("caseB", "r=7", 70),
        ("z10", "p=41,t=36,l=3", 410),
        ("k55", "p=7,l=2,lp=3", 70),
        ("gp", "p=13,t=5", 130),
    ] {
        let o = hamlift(&["demo", "--family", family, "--params", params, "--dot", "d.dot"], dir.path());
        assert_eq!(code(&o), 0, "{family}: {}", String::from_utf8_lossy(&o.stderr));
        let cert: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(cert["order"], order, "{family}");
        assert!(dir.path().join("d.dot").exists());
    }
    let o = hamlift(&["demo", "--family", "z10", "--params", "p=41,t=3"], dir.path());
    assert_eq!(code(&o), 1);
    let o = hamlift(&["demo", "--family", "gp", "--params", "p=7,t=2"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn cayley_pipeline_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let rot: Vec<usize> = (0..14).map(|i| (i + 1) % 14).collect();
    let inv: Vec<usize> = (0..14).map(|i| (i + 13) % 14).collect();
    let three: Vec<usize> = (0..14).map(|i| (i + 3) % 14).collect();
    let three_inv: Vec<usize> = (0..14).map(|i| (i + 11) % 14).collect();
    let spec = serde_json::json!({
        "type": "cayley",
        "group": {"degree": 14, "generators": [rot], "name": "Z14"},
        "connection": [three, three_inv, rot, inv],
    });
    write(dir.path(), "c.json", &spec.to_string());
    let o = hamlift(&["pipeline", "c.json", "-o", "cert.json"], dir.path());
    assert_eq!(code(&o), 0);
    let o = hamlift(&["verify", "cert.json", "--graph", "c.json"], dir.path());
    assert_eq!(code(&o), 0);
}

#[test]
fn element_cap_env_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let spec = serde_json::json!({
        "type": "cayley",
        "group": {"degree": 5, "generators": [[1,2,3,4,0],[1,0,2,3,4]], "name": "S5"},
        "connection": [[1,2,3,4,0],[4,0,1,2,3],[1,0,2,3,4]],
    });
    write(dir.path(), "s5.json", &spec.to_string());
    let o = Command::new(env!("CARGO_BIN_EXE_hamlift"))
        .args(["build", "s5.json"])
        .current_dir(dir.path())
        .env("HAMLIFT_MAX_ELEMENTS", "50")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap of 50"));
    let o = hamlift(&["build", "s5.json"], dir.path());
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 180);
}

#[test]
fn usage_errors_do_not_collide_with_exception_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = hamlift(&["frobnicate"], dir.path());
    assert_eq!(code(&o), 1);
}
