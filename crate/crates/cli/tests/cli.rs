use std::fs;
use std::process::{Command, Output};

const ONE_ONE: &str = "tkc:v1;n=1;pair=0-1,2-3;wind=0:(0,1),2:(0,-1);over=0";
const KINK: &str = "tkc:v1;n=1;pair=0-1,2-3;wind=0:(0,0),2:(0,1);over=0";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torusknot")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn graphs_and_projections() {
    let o = run(&["enum-graphs"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 15);
    assert!(stdout(&o).lines().all(|l| l.ends_with("loop_or_multi_edge=true")));

    let o = run(&["enum-projections", "--crossings", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 7);
    let all = run(&["enum-projections", "--crossings", "1", "--all", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&all)).unwrap();
    assert!(v["count"].as_u64().unwrap() > 1);
}

#[test]
fn invariant_simplify_equiv() {
    let o = run(&["invariant", ONE_ONE, "--verbose"]);
    let text = stdout(&o);
    assert!(text.contains("X = -x^2*a^2+a^6+a^2"), "{text}");
    assert_eq!(text.matches("state ").count(), 2);

    let o = run(&["simplify", KINK]);
    assert_eq!(stdout(&o).trim(), "tkc:v1;n=0;circle=(0,-1)");

    assert!(run(&["equiv", KINK, "tkc:v1;n=0;circle=(0,1)"]).status.success());
    let o = run(&["equiv", ONE_ONE, "tkc:v1;n=0;circle=(0,1)", "--max-crossings", "3"]);
    assert_eq!(o.status.code(), Some(1));

    assert!(!run(&["invariant", "nonsense"]).status.success());
}

#[test]
fn census_verification_sets_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.json");
    let svg = dir.path().join("svg");
    let o = run(&[
        "census",
        "--max-crossings",
        "2",
        "--out",
        out.to_str().unwrap(),
        "--render-dir",
        svg.to_str().unwrap(),
        "--emit",
        "latex",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("longtable"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let records = v["records"].as_array().unwrap();
    assert_eq!(fs::read_dir(&svg).unwrap().count(), records.len());

    // the table's own polynomials verify perfectly
    let own: String = records
        .iter()
        .map(|r| format!("{}: {}\n", r["name"].as_str().unwrap(), r["polynomial"].as_str().unwrap()))
        .collect();
    let good = dir.path().join("good.txt");
    fs::write(&good, own).unwrap();
    let o = run(&["census", "--max-crossings", "2", "--out", out.to_str().unwrap(), "--verify", good.to_str().unwrap()]);
    assert!(o.status.success());

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0_1: x\n9_9: x^3\n").unwrap();
    let o = run(&["census", "--max-crossings", "2", "--out", out.to_str().unwrap(), "--verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
