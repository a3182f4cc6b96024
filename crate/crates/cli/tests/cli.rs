use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const B2: &str = r#"{"n":4,"covers":[[0,1],[0,2],[1,3],[2,3]],"labels":["0","a","b","1"]}"#;

fn wdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wdl")).args(args).env_remove("WDL_BUDGET").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn algebra(weak: &str, dual: Option<&str>) -> String {
    match dual {
        Some(d) => format!(r#"{{"lattice":{B2},"weak":{weak},"dual":{d}}}"#),
        None => format!(r#"{{"lattice":{B2},"weak":{weak}}}"#),
    }
}

#[test]
fn check_duplicated_complementation_passes_everything() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "b.json", &algebra("[3,2,1,0]", Some("[3,2,1,0]")));
    let out = wdl(&["check", s(&f), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let verdicts = v["verdicts"].as_object().unwrap();
    assert_eq!(verdicts.len(), 11);
    assert!(verdicts.values().all(|v| v == "pass"));
    assert_eq!(verdicts.keys().next().unwrap(), "A1");
}

#[test]
fn check_reports_least_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.json", &algebra("[3,3,3,0]", None));
    let out = wdl(&["check", s(&f), "--axioms", "DDAG", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["verdicts"]["DDAG"]["witness"], serde_json::json!([0, 1]));
    assert_eq!(v["verdicts"]["DDAG"]["lhs"], 0);
    assert_eq!(v["verdicts"]["DDAG"]["rhs"], 1);
    let text = wdl(&["check", s(&f), "--axioms", "ddag"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("x=0, y=a: 0 ≠ a"));
}

#[test]
fn check_input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&wdl(&["check", "/nonexistent/algebra.json"])), 2);
    let missing = write(&dir, "m.json", &format!(r#"{{"lattice":{B2}}}"#));
    let out = wdl(&["check", s(&missing)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("weak"), "{}", stderr(&out));
    let short = write(&dir, "s.json", &algebra("[3,2,1,0]", Some("[3,2]")));
    let out = wdl(&["check", s(&short)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("`dual`"), "{}", stderr(&out));
    let range = write(&dir, "r.json", &algebra("[3,2,1,7]", None));
    assert!(stderr(&wdl(&["check", s(&range)])).contains("`weak`"));
    let cyclic = write(&dir, "c.json", r#"{"lattice":{"n":2,"covers":[[0,1],[1,0]]},"weak":[1,0]}"#);
    assert_eq!(code(&wdl(&["check", s(&cyclic)])), 2);
    let weak_only = write(&dir, "w.json", &algebra("[3,2,1,0]", None));
    assert_eq!(code(&wdl(&["check", s(&weak_only), "--axioms", "WDN"])), 2);
    assert_eq!(code(&wdl(&["check", s(&weak_only), "--axioms", "A9"])), 2);
}

#[test]
fn check_reports_in_input_numbering() {
    // B2 with the top numbered 0 and the bottom 3
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "flip.json", r#"{"lattice":{"n":4,"covers":[[3,1],[3,2],[1,0],[2,0]]},"weak":[3,3,3,3]}"#);
    let out = wdl(&["check", s(&f), "--axioms", "A3", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let w = &json(&out)["verdicts"]["A3"];
    // constant bottom: first failure at an atom x with y = bottom, reported as file elements
    assert_eq!(w["witness"], serde_json::json!([1, 3]));
    assert_eq!((w["lhs"].clone(), w["rhs"].clone()), (serde_json::json!(3), serde_json::json!(1)));
}

#[test]
fn recognize_verdicts() {
    let dir = TempDir::new().unwrap();
    let b2 = write(&dir, "b2.json", B2);
    let out = wdl(&["recognize", s(&b2), "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["certificate"], serde_json::json!([3, 2, 1, 0]));
    let flipped = write(&dir, "f.json", r#"{"n":4,"covers":[[3,1],[3,2],[1,0],[2,0]]}"#);
    assert_eq!(json(&wdl(&["recognize", s(&flipped), "--format", "json"]))["certificate"], serde_json::json!([3, 2, 1, 0]));
    let chain = write(&dir, "c3.json", r#"{"n":3,"covers":[[0,1],[1,2]]}"#);
    let out = wdl(&["recognize", s(&chain)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("no table satisfies"));
    let n5 = write(&dir, "n5.json", r#"{"n":5,"covers":[[0,1],[0,2],[1,4],[2,3],[3,4]]}"#);
    assert_eq!(code(&wdl(&["recognize", s(&n5)])), 1);
    let big = write(&dir, "c8.json", r#"{"n":8,"covers":[[0,1],[1,2],[2,3],[3,4],[4,5],[5,6],[6,7]]}"#);
    assert_eq!(code(&wdl(&["recognize", s(&big)])), 2);
}

#[test]
fn search_outcomes_and_codes() {
    let out = wdl(&["search", "--max-n", "2", "--format", "json", "--no-timing"]);
    assert_eq!(code(&out), 10);
    let cx = &json(&out)["outcome"]["counterexample"];
    assert_eq!(cx["weak"], serde_json::json!([1, 0]));
    assert_eq!(cx["dual"], serde_json::json!([0, 0]));
    assert_eq!(cx["violated"], "A1'");

    let out = wdl(&["search", "--max-n", "5", "--require-wdn", "--format", "json", "--no-timing"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["outcome"]["exhausted"]["5"]["lattices"], 5);

    assert_eq!(code(&wdl(&["search", "--max-n", "1"])), 0);
    for bad in [&["search", "--max-n", "9"][..], &["search", "--max-n", "0"], &["search", "--max-n", "3", "--workers", "0"], &["search"]] {
        assert_eq!(code(&wdl(bad)), 2, "{bad:?}");
    }
}

#[test]
fn budget_flag_overrides_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_wdl"));
        cmd.args(["search", "--max-n", "3", "--require-wdn", "--format", "json", "--no-timing"]);
        cmd.env_remove("WDL_BUDGET");
        if let Some(e) = env {
            cmd.env("WDL_BUDGET", e);
        }
        if let Some(f) = flag {
            cmd.args(["--budget", f]);
        }
        cmd.output().unwrap()
    };
    let out = run(Some("10"), None);
    assert_eq!(code(&out), 4);
    let partial = &json(&out)["outcome"]["budget_exceeded"]["partial"];
    assert_eq!(partial.as_object().unwrap().len(), 2);
    assert_eq!(code(&run(Some("10"), Some("1000"))), 0);
    assert_eq!(code(&run(None, Some("10"))), 4);
    assert_eq!(code(&run(None, None)), 0);
}

#[test]
fn search_output_is_worker_independent() {
    let outputs: Vec<Vec<u8>> = ["1", "2", "8"]
        .iter()
        .map(|w| wdl(&["search", "--max-n", "4", "--workers", w, "--format", "json", "--no-timing"]).stdout)
        .collect();
    assert!(outputs.windows(2).all(|p| p[0] == p[1]));
}

#[test]
fn enumerate_commands() {
    let out = wdl(&["enumerate", "lattices", "--n", "6", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["count"], 15);

    let dir = TempDir::new().unwrap();
    let b2 = write(&dir, "b2.json", B2);
    let out = wdl(&["enumerate", "ops", s(&b2), "--axioms", "A1,A2,A3,A1',A2',A3'", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["count"], 4);
    let out = wdl(&["enumerate", "ops", s(&b2), "--axioms", "DDAG", "--slot", "weak", "--format", "json"]);
    assert_eq!(json(&out)["tables"], serde_json::json!([{ "weak": [3, 2, 1, 0] }]));
    assert_eq!(code(&wdl(&["enumerate", "ops", s(&b2), "--axioms", "A1'", "--slot", "weak"])), 2);
    assert_eq!(code(&wdl(&["enumerate", "ops", s(&b2), "--axioms", "A1", "--budget", "3"])), 4);
    assert_eq!(code(&wdl(&["enumerate", "ops", s(&b2), "--axioms", "P4"])), 2);
}

#[test]
fn fca_writes_algebra_and_concepts() {
    let dir = TempDir::new().unwrap();
    let cxt = write(&dir, "c.cxt", "B\n\n2\n2\n\ng1\ng2\nm1\nm2\n.X\nX.\n");
    let (alg, con) = (dir.path().join("alg.json"), dir.path().join("con.json"));
    let out = wdl(&["fca", s(&cxt), "--algebra-out", s(&alg), "--concepts-out", s(&con), "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let concepts: Value = serde_json::from_str(&std::fs::read_to_string(&con).unwrap()).unwrap();
    assert_eq!(concepts["concepts"].as_array().unwrap().len(), 4);
    assert_eq!(concepts["concepts"][0]["extent"], serde_json::json!([]));
    assert_eq!(concepts["concepts"][3]["extent"], serde_json::json!(["g1", "g2"]));
    // the written algebra checks clean
    assert_eq!(code(&wdl(&["check", s(&alg)])), 0);
    assert!(json(&out)["report"]["verdicts"].as_object().unwrap().values().all(|v| v == "pass"));

    let bad = write(&dir, "bad.cxt", "B\n\n1\n1\n\ng\nm\nQ\n");
    let out = wdl(&["fca", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("Q"), "{}", stderr(&out));
}
