use std::process::{Command, Output};

use serde_json::Value;

fn hzd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hzd")).args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn group_queries() {
    let o = hzd(&["group", "--p", "3", "--grading", "1,1,-1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["levels"]["G"]["free_rank"], 1);
    assert_eq!(v["levels"]["G"]["basis"], serde_json::json!(["uga"]));

    let v = json(&hzd(&["group", "--p", "3", "--grading", "0,0,-1"]));
    assert_eq!(v["levels"]["G"]["torsion"], serde_json::json!([3]));
}

#[test]
fn mackey_at_zero_is_constant() {
    for args in [&["mackey", "--p", "5", "--grading", "0,0,0"][..], &["mackey", "--p", "5", "--grading", "0,0,0", "--oracle"]] {
        let v = json(&hzd(args));
        for l in ["G", "Cp", "C2", "e"] {
            assert_eq!(v["levels"][l]["free_rank"], 1, "{l}");
            assert_eq!(v["levels"][l]["torsion"], serde_json::json!([]));
        }
        assert_eq!(v["maps"]["res_G_Cp"]["matrix"], serde_json::json!([[1]]));
        assert_eq!(v["maps"]["tr_Cp_G"]["matrix"], serde_json::json!([[2]]));
        assert_eq!(v["maps"]["tr_e_Cp"]["matrix"], serde_json::json!([[5]]));
    }
}

#[test]
fn products() {
    let o = hzd(&["mult", "--p", "3", "2*uga*u2a^-1", "2*uga*u2a^-1", "--families"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("4*uga^2*u2a^-2"));
    assert!(out.contains("F2"), "{out}");
    assert_eq!(stdout(&hzd(&["mult", "--p", "3", "u2a^-1*ag", "S^-1*uga^-1*ag^-1"])), "0\n");
    assert_eq!(stdout(&hzd(&["mult", "--p", "7", "1", "S^-1*uga^-2*ag^-1"])), "S^-1*uga^-2*ag^-1\n");
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["mult", "--p", "3", "uga*", "1"][..],
        &["mult", "--p", "3", "u2a^-1", "1"],
        &["group", "--p", "9", "--grading", "0,0,0"],
        &["group", "--p", "3", "--grading", "0,0"],
        &["table", "--format", "xml"],
        &["verify", "--window", "0..1,0"],
        &["verify", "--suite", "everything"],
    ] {
        assert_eq!(hzd(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn oracle_budget_exits_3() {
    let o = hzd(&["mackey", "--p", "3", "--grading", "0,3,3", "--oracle", "--max-rank", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn tables() {
    let o = hzd(&["table", "--p", "3", "--format", "latex", "--range", "-4..4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("0 & 0 & 0 & $\\mathbb{Z}$"), "{out}");
    assert!(out.contains("-1 & 0 & 0 & $0$"), "{out}");

    let out = stdout(&hzd(&["table", "--p", "5", "--format", "csv", "--range", "0..4", "--theory", "tilde"]));
    let rows: Vec<&str> = out.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(rows, ["Z/10", "0", "Z/2", "0", "Z/10"]);

    let o = hzd(&["table", "--format", "json", "--range", "3..2"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["rows"], serde_json::json!([]));

    let a = hzd(&["table", "--p", "3", "--format", "csv", "--range", "-2..2,-1..1,-1..1"]);
    let b = hzd(&["table", "--p", "3", "--format", "csv", "--range", "-2..2,-1..1,-1..1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_groupcoh() {
    let o = hzd(&["verify", "--p", "3", "--suite", "groupcoh", "--no-cache"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["mismatches"], 0);
    assert!(v["entries"].as_array().unwrap().iter().any(|e| e["key"] == "H8-Z"));
}

#[test]
fn verify_uses_and_repairs_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["verify", "--p", "3", "--window", "-2..2,-1..1,-1..1", "--suite", "oracle", "--cache-dir", d];
    let first = json(&hzd(&args));
    assert_eq!(first["cache"]["misses"], 45);

    let victim = dir.path().join("p3/oracle/0_0_0.json");
    let text = std::fs::read_to_string(&victim).unwrap();
    std::fs::write(&victim, text.replace("Z", "Q")).unwrap();

    let second = json(&hzd(&args));
    assert_eq!(second["cache"]["hits"], 44);
    assert_eq!(second["cache"]["corrupted"], 1);
    assert_eq!(first["entries"], second["entries"]);
    let third = json(&hzd(&args));
    assert_eq!(third["cache"]["hits"], 45);
}
