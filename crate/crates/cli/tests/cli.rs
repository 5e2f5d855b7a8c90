use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotfloer")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn hfk_trefoil_table_and_verdicts() {
    let o = run(&["hfk", "B2: s1 s1 s1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("euler: MATCH"));
    assert!(s.contains("grid: MATCH"));
    assert!(s.contains("torsion"));
    let rows: Vec<&str> = s.lines().skip_while(|l| !l.trim_start().starts_with('A')).skip(1).take_while(|l| !l.starts_with("total")).collect();
    assert_eq!(rows.len(), 3);
}

#[test]
fn hfk_unknot_has_one_row() {
    let v = json(&["hfk", "B1:", "--json"]);
    assert_eq!(v["ranks"], serde_json::json!([{ "m": 0, "s": 0, "rank": 1 }]));
}

#[test]
fn hfk_figure_eight_json_is_deterministic_and_matches_grid() {
    let args = ["hfk", "B3: s1 -s2 s1 -s2", "--output", "json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["total_rank"], 5);
    assert_eq!(v["verdicts"]["euler"], "MATCH");
    assert_eq!(v["verdicts"]["grid"]["verdict"], "MATCH");
}

#[test]
fn modes_and_threads_do_not_change_the_answer() {
    let a = json(&["hfk", "B3: s1 -s2 s1 -s2", "--json", "--mode", "all"]);
    let b = json(&["--threads", "1", "hfk", "B3: s1 -s2 s1 -s2", "--json", "--mode", "coherent_cycles", "--no-check-faces"]);
    assert_eq!(a["ranks"], b["ranks"]);
    let o = Command::new(env!("CARGO_BIN_EXE_knotfloer")).args(["hfk", "B2: s1 s1 s1", "--json"]).env("HFK_THREADS", "1").output().unwrap();
    assert!(o.status.success());
}

#[test]
fn algebra_dimensions() {
    let v = json(&["algebra", "B2: s1 s1 s1", "000", "--json"]);
    assert_eq!(v["dims"], serde_json::json!({ "1": 1, "0": 2, "-1": 1 }));
    assert_eq!(v["kauffman_states"], 4);
    let v = json(&["algebra", "B2: s1 s1 s1", "111", "--json"]);
    assert_eq!(v["zero"], true);
    assert_eq!(v["connected"], false);
    assert!(stdout(&run(&["algebra", "B2: s1 s1 s1", "111"])).contains("zero algebra (disconnected"));
    let v = json(&["algebra", "B3: s1 -s2 s1 -s2", "0101", "--json"]);
    assert_eq!(v["total"], 5);
    assert_eq!(v["basis"][2].as_array().unwrap().len(), 1);
}

#[test]
fn alexander_of_figure_eight() {
    assert_eq!(stdout(&run(&["alexander", "B3: s1 -s2 s1 -s2"])).trim(), "-T + 3 - T^-1");
}

#[test]
fn grid_from_braid_and_file() {
    let v = json(&["grid", "B2: -s1 -s1 -s1", "--json"]);
    assert_eq!(v["deflated"]["ranks"].as_array().unwrap().len(), 3);
    let path = std::env::temp_dir().join(format!("knotfloer-fig8-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"n":6,"O":[[0,0],[1,1],[2,3],[3,2],[4,5],[5,4]],"X":[[0,2],[1,5],[2,0],[3,4],[4,3],[5,1]]}"#).unwrap();
    let v = json(&["grid", "--file", path.to_str().unwrap(), "--json"]);
    std::fs::remove_file(&path).ok();
    let total: u64 = v["deflated"]["ranks"].as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).sum();
    assert_eq!(total, 5);
    let o = run(&["grid", "B3: s1 -s2 s1 -s2", "--max-size", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn grid_special_checks_pass_on_trefoil() {
    let o = run(&["grid", "B2: s1 s1 s1", "--special"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("PASS composite")).count(), 3);
    assert!(!s.contains("FAIL"));
}

#[test]
fn verify_passes_on_trefoil_and_fails_on_corrupt_signs() {
    let o = run(&["verify", "B2: s1 s1 s1"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
    let o = run(&["verify", "B2: s1 s1 s1", "--corrupt-signs", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let faces = v["checks"].as_array().unwrap().iter().find(|c| c["check"] == "faces").unwrap();
    assert_eq!(faces["status"], "FAIL");
    assert_eq!(v["pass"], false);
}

#[test]
fn bad_input_names_the_module() {
    let o = run(&["hfk", "B2: s3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("braid:"));
    let o = run(&["algebra", "B2: s1 s1 s1", "01"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("resolution:"));
    assert!(!run(&["hfk", "B2: s1", "--subset-cap", "0"]).status.success());
}
