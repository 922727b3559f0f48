use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sring")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validate_rejects_non_inverse_closed() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"group":"4","classes":[["0"],["1"],["2","3"]]}"#);
    let o = sring(&["validate", "--group", "4", "--partition", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotInverseClosed"));
}

#[test]
fn validate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"group":"2x3","classes":[["0,0"],["0,1","0,2"],["1,0"],["1,1","1,2"]]}"#;
    let f = write(dir.path(), "a.json", text);
    let o = sring(&["validate", "--partition", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), text);
    let o = sring(&["validate", "--group", "6", "--partition", &f]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(sring(&["validate", "--partition", "/nonexistent.json"]).status.code(), Some(2));
    let f = write(dir.path(), "x.json", "not json");
    assert_eq!(sring(&["validate", "--partition", &f]).status.code(), Some(2));
    assert_eq!(sring(&["enumerate", "--group", "2xx2"]).status.code(), Some(2));
}

#[test]
fn enumerate_writes_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e4.jsonl");
    let o = sring(&["enumerate", "--group", "2x2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["group"], "2x2");
        let part = format!(r#"{{"group":"2x2","classes":{}}}"#, v["classes"]);
        let f = write(dir.path(), "line.json", &part);
        let back = sring(&["validate", "--partition", &f]);
        assert_eq!(stdout(&back).trim(), part);
    }
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = sring(&["enumerate", "--group", "12", "--threads", "1"]);
    let b = sring(&["enumerate", "--group", "12", "--threads", "3"]);
    let c = sring(&["enumerate", "--group", "12"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(stdout(&a).lines().count(), 32);
}

#[test]
fn repro_t2_is_nonschurian() {
    let o = sring(&["repro", "t2", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schurian"], false);
    assert_eq!(v["expected_match"], true);
    assert_eq!(v["rank"], 13);
    assert_eq!(v["group"], "8x2x3");
    assert!(v["witness"].is_object());
    assert_eq!(sring(&["repro", "t2", "--p", "4"]).status.code(), Some(2));
}

#[test]
fn expect_schurian_flags_violations() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&sring(&["repro", "t2", "--p", "3"]));
    let part = serde_json::json!({"group": r["group"], "classes": r["classes"]}).to_string();
    let f = write(dir.path(), "t2.json", &part);
    let o = sring(&["schurian", "--partition", &f, "--expect-schurian"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["schurian"], false);
    let o = sring(&["schurian", "--partition", &f]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn structural_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.json", r#"{"group":"4","classes":[["0"],["1","3"],["2"]]}"#);
    let c2 = write(dir.path(), "c2.json", r#"{"group":"2","classes":[["0"],["1"]]}"#);

    let aut = json(&sring(&["aut", "--partition", &c4]));
    assert_eq!(aut["order"], "8");
    assert_eq!(aut["degree"], 4);

    assert_eq!(json(&sring(&["cyclotomic", "--partition", &c4]))["cyclotomic"], true);
    assert_eq!(json(&sring(&["normal", "--partition", &c4]))["normal"], true);

    let d = json(&sring(&["dual", "--partition", &c4]));
    assert_eq!(d["classes"].as_array().unwrap().len(), 3);

    let t = json(&sring(&["tensor", "--partition", &c4, &c2]));
    assert_eq!(t["group"], "4x2");
    assert_eq!(t["classes"].as_array().unwrap().len(), 6);

    let inv = json(&sring(&["cyclotomic", "--group", "4", "--aut", "3"]));
    assert_eq!(inv["classes"], serde_json::json!([["0"], ["1", "3"], ["2"]]));

    let rough = write(dir.path(), "rough.json", r#"{"group":"4","classes":[["0"],["1","2"],["3"]]}"#);
    let cl = json(&sring(&["closure", "--partition", &rough]));
    assert_eq!(cl["classes"], serde_json::json!([["0"], ["1"], ["2"], ["3"]]));
}

#[test]
fn gwreath_over_cyclic() {
    let dir = tempfile::tempdir().unwrap();
    // C8 with U = <2>, L = <4>: bottom on U, top on G as unions of L-cosets.
    let bottom = write(dir.path(), "b.json", r#"{"group":"8","classes":[["0"],["4"],["2","6"]]}"#);
    let top = write(dir.path(), "t.json", r#"{"group":"8","classes":[["0","4"],["2","6"],["1","3","5","7"]]}"#);
    let o = sring(&["gwreath", "--partition", &bottom, &top, "--upper", "2", "--lower", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["classes"], serde_json::json!([["0"], ["1", "3", "5", "7"], ["2", "6"], ["4"]]));
}

#[test]
fn classify_rejects_other_groups() {
    let dir = tempfile::tempdir().unwrap();
    let c8 = write(dir.path(), "c8.json", r#"{"group":"8","classes":[["0"],["1","2","3","4","5","6","7"]]}"#);
    assert_eq!(sring(&["classify", "--partition", &c8]).status.code(), Some(2));
}

#[test]
fn order_bound_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sring"))
        .args(["enumerate", "--group", "2x3"])
        .env("SRING_MAX_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("OrderTooLarge"));
}
