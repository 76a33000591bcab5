use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn ehrkit(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ehrkit"))
        .args(args)
        .env_remove("EHRKIT_JOBS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> Value {
    let out = ehrkit(args, stdin);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str], stdin: &str) -> i32 {
    ehrkit(args, stdin).status.code().unwrap()
}

const PENTAGON: &str = r#"{"vertices": [[1,0],[0,1],[0,2],[1,3],[2,1]], "translate": ["3/4","3/4"]}"#;
const CUBE: &str = r#"{"corpus": "cube"}"#;
const OCTAHEDRON: &str = r#"{"corpus": "cross_polytope"}"#;
const P2: &str = r#"{"corpus": "p2_shifted_octahedron"}"#;
const P3: &str = r#"{"corpus": "p3_shifted_cube"}"#;

#[test]
fn count() {
    assert_eq!(ok(&["count", "--dilate", "2"], PENTAGON), json!({"count": 17}));
    assert_eq!(ok(&["count", "--dilate", "2"], CUBE), json!({"count": 27}));
    let pn = r#"{"corpus": "counterexample_pn", "params": {"n": 8}}"#;
    assert_eq!(ok(&["count", "--dilate", "1"], pn), json!({"count": 230}));
    assert_eq!(ok(&["count", "--dilate", "6"], r#"{"corpus": "alcove(G2)"}"#), json!({"count": 7}));
}

#[test]
fn input_file_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.json");
    let output = dir.path().join("out.json");
    std::fs::write(&input, PENTAGON).unwrap();
    let out = ehrkit(&["count", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()], "");
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v, json!({"count": 5}));
}

#[test]
fn ehrhart() {
    let q = ok(&["ehrhart"], P3);
    assert_eq!(q["period"], json!(9));
    assert_eq!(q["constituents"][8], json!([1, 3, 3, 1]));
    assert_eq!(q["constituents"][0], json!([0, 0, 0, 1]));
    let q = ok(&["ehrhart", "--minimal"], r#"{"corpus": "alcove", "params": {"type": "G2"}}"#);
    assert_eq!(q["period"], json!(6));
    let q = ok(&["ehrhart"], P2);
    assert_eq!(q["constituents"][0], json!([0, "-4/3", 0, "4/3"]));
    let q = ok(&["ehrhart", "--minimal"], r#"{"corpus": "p1_ninth_cube"}"#);
    assert_eq!(q["period"], json!(9));
}

#[test]
fn zonotope_alias() {
    let z = r#"{"generators": [[1,0,0],[0,1,0],[0,0,1]], "translate": ["1/9","2/9","1/3"]}"#;
    assert_eq!(ok(&["zonotope"], z), ok(&["ehrhart"], P3));
    let hex = r#"{"generators": [[1,0],[1,1],[0,1]]}"#;
    assert_eq!(ok(&["zonotope"], hex), json!({"period": 1, "constituents": [[1, 3, 3]]}));
}

#[test]
fn check() {
    assert_eq!(ok(&["check", "--property", "gcd"], P3)["holds"], json!(true));
    let v = ok(&["check", "--property", "gcd"], P2);
    assert_eq!(v["holds"], json!(false));
    assert_eq!(v["evidence"]["residues"], json!([1, 2]));
    assert_eq!(ok(&["check", "--property", "sym"], P2)["holds"], json!(true));
}

#[test]
fn classify() {
    let v = ok(&["classify", "--witness"], OCTAHEDRON);
    assert_eq!(v["centrally_symmetric"], json!(true));
    assert_eq!(v["zonotope"], json!(false));
    assert_eq!(v["gcd_witness"]["found"], json!(true));
    assert_eq!(v["asymmetry_witness"], Value::Null);

    let v = ok(&["classify"], CUBE);
    assert_eq!(v["zonotope"], json!(true));
    assert_eq!(v["gcd_witness"], Value::Null);

    let v = ok(&["classify", "--witness", "--budget", "500"], PENTAGON);
    assert_eq!(v["centrally_symmetric"], json!(false));
    let w = &v["asymmetry_witness"];
    assert_eq!(w["found"], json!(true));
    let rho = w["evidence"]["period"].as_u64().unwrap();
    let r = &w["evidence"]["residues"];
    assert_eq!(r[0].as_u64().unwrap() + r[1].as_u64().unwrap(), rho);
}

#[test]
fn scan() {
    let square = r#"{"vertices": [[0,0],[1,0],[0,1],[1,1]], "translate": ["1/2","1/4"]}"#;
    assert_eq!(ok(&["scan", "--xs", "0,2,1"], square)["counts"], json!([4, 2, 1]));
    let oct = r#"{"corpus": "cross_polytope"}"#;
    let v = ok(&["scan", "--xs", "0,3/2,1/2"], oct);
    assert_eq!(v["counts"], json!([7, 7, 7]));
    let oct = r#"{"vertices": [[1,0,0],[-1,0,0],[0,1,0],[0,-1,0],[0,0,1],[0,0,-1]], "translate": ["1/3","1/3","1/3"]}"#;
    assert_eq!(ok(&["scan", "--xs", "0,3/2,1/2"], oct)["counts"], json!([7, 0, 1]));
}

#[test]
fn corpus() {
    let v = ok(&["corpus", "list"], "");
    assert!(v["names"].as_array().unwrap().contains(&json!("counterexample_pn")));
    let v = ok(&["corpus", "build", "counterexample_pn", "--param", "n=8"], "");
    assert!(v["vertices"].as_array().unwrap().contains(&json!([0, 0, -7])));
    let v = ok(&["corpus", "build", "alcove(G2)"], "");
    assert_eq!(v["weights"], json!([2, 3]));
    assert_eq!(code(&["corpus", "build", "nope"], ""), 2);
    assert_eq!(code(&["corpus", "build", "counterexample_pn", "--param", "n=7"], ""), 2);
}

#[test]
fn reproduce() {
    let v = ok(&["reproduce", "--only", "alcoves"], "");
    assert_eq!(v["checks"].as_array().unwrap().len(), 5);
    assert_eq!(v["passed"], json!(true));
    let v = ok(&["reproduce", "--only", "period_nine"], "");
    assert_eq!(v["summary"]["disputed"], json!(2));
    assert_eq!(v["summary"]["fail"], json!(0));
    assert_eq!(code(&["reproduce", "--only", "nope"], ""), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["count"], "{not json"), 2);
    assert_eq!(code(&["count"], r#"{"vertices": [["1/0", 1]]}"#), 2);
    assert_eq!(code(&["count"], r#"{"vertices": [[1, 2], [3]]}"#), 3);
    assert_eq!(code(&["count"], r#"{"vertices": [[1, 2]], "translate": ["1/2"]}"#), 3);
    assert_eq!(code(&["ehrhart"], r#"{"vertices": [["1/2", 0], [1, 0]]}"#), 4);
    assert_eq!(code(&["classify"], r#"{"corpus": "alcove(G2)"}"#), 4);
    let simplex = r#"{"vertices": [[0,0],[1,0],[0,1]]}"#;
    assert_eq!(code(&["classify", "--witness", "--budget", "1", "--require-witness"], simplex), 5);
    assert_eq!(code(&["classify", "--witness", "--budget", "1"], simplex), 0);
}

#[test]
fn output_is_independent_of_jobs() {
    let one = ehrkit(&["--jobs", "1", "classify", "--witness", "--budget", "300"], OCTAHEDRON);
    let four = ehrkit(&["--jobs", "4", "classify", "--witness", "--budget", "300"], OCTAHEDRON);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let a = ehrkit(&["--jobs", "1", "ehrhart"], P2);
    let b = ehrkit(&["--jobs", "3", "ehrhart"], P2);
    assert_eq!(a.stdout, b.stdout);
}
