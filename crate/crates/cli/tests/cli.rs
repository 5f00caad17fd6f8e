use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str], file: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterkit"))
        .arg(args[0])
        .arg(fixture(file))
        .args(&args[1..])
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str], file: &str) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all, file);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn error_of(out: &Output) -> Value {
    let line = String::from_utf8_lossy(&out.stderr);
    let last = line.lines().last().expect("error line");
    serde_json::from_str::<Value>(last).expect("error object")["error"].clone()
}

#[test]
fn cluster_of_rotation_module() {
    let v = run_json(&["cluster"], "rotation.json");
    let r = &v["results"][0];
    assert_eq!(r["splitting_field"], json!({"p": 3, "degree": 2, "modulus": "t^2 + 1"}));
    assert_eq!(r["characters"], json!([[[0, 1]], [[0, 2]]]));
    assert_eq!(r["simple"], json!(true));
    assert_eq!(v["field"]["modulus"], json!("t"));
}

#[test]
fn induce_table_for_every_parameter() {
    for alpha in 0..3i64 {
        for beta in 0..3i64 {
            let (a, b) = (alpha.to_string(), beta.to_string());
            let v = run_json(&["induce", "--alpha", &a, "--beta", &b], "rotation.json");
            let r = &v["results"][0];
            assert_eq!(r["dim"], json!(6));
            assert_eq!(r["labels"], json!(["w0", "w1", "y*w0", "y*w1", "y^2*w0", "y^2*w1"]));
            let x = json!([
                [0, 2, 0, 0, 0, 0],
                [1, 0, 0, 0, 0, 0],
                [0, 0, 1, 2, 0, 0],
                [0, 0, 1, 1, 0, 0],
                [0, 0, 0, 0, 2, 2],
                [0, 0, 0, 0, 1, 2]
            ]);
            let m = |n: i64| n.rem_euclid(3);
            let y = json!([
                [0, 0, 0, 0, alpha, m(-beta)],
                [0, 0, 0, 0, beta, alpha],
                [1, 0, 0, 0, 0, 0],
                [0, 1, 0, 0, 0, 0],
                [0, 0, 1, 0, 0, 0],
                [0, 0, 0, 1, 0, 0]
            ]);
            assert_eq!(r["action"], json!([{"element": "x", "matrix": x}, {"element": "y", "matrix": y}]));
        }
    }
}

#[test]
fn induce_task_from_document() {
    let v = run_json(&["induce"], "rotation.json");
    assert_eq!(v["results"][0]["cobasis_values"], json!([[1, 0]]));
    assert_eq!(v["results"][0]["action"][1]["matrix"][0], json!([0, 0, 0, 0, 1, 0]));
}

#[test]
fn hom_cluster_of_rotation_module() {
    let v = run_json(&["homcluster"], "rotation.json");
    let r = &v["results"][0];
    assert_eq!(r["cluster"], json!([[[0, 0]], [[0, 1]], [[0, 2]]]));
    assert_eq!(r["agree"], json!(true));
}

#[test]
fn oracle_agrees_on_rotation_module() {
    let v = run_json(&["oracle-compare"], "rotation.json");
    assert_eq!(v["results"][0]["agree"], json!(true));
    assert_eq!(v["results"][0]["irreducible"], json!(true));
}

#[test]
fn oracle_bound_is_enforced() {
    let out = run(&["oracle-compare", "--oracle-bound", "2"], "rotation.json");
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_of(&out)["kind"], json!("precondition"));
}

#[test]
fn decompose_diagonal_module_under_both_pmaps() {
    let zero = run_json(&["decompose"], "diagonal_zero.json");
    let parts = &zero["results"][0]["parts"];
    assert_eq!(parts.as_array().unwrap().len(), 2);
    assert_eq!(parts[0]["characters"], json!([[0, 1]]));
    assert_eq!(parts[0]["basis"], json!([[0, 1]]));
    assert_eq!(parts[1]["characters"], json!([[1, 0]]));
    assert_eq!(parts[1]["exponent"], json!(1));

    let toral = run_json(&["decompose"], "diagonal_toral.json");
    let parts = &toral["results"][0]["parts"];
    assert_eq!(parts.as_array().unwrap().len(), 1);
    assert_eq!(parts[0]["characters"], json!([[0, 1]]));
    assert_eq!(parts[0]["dim"], json!(2));
}

#[test]
fn decompose_relative_to_subalgebra() {
    let counts: Vec<usize> = ["diagonal_toral.json", "diagonal_zero.json"]
        .iter()
        .map(|f| run_json(&["decompose", "--wrt", "A1"], f)["results"][0]["parts"].as_array().unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 2]);
    let v = run_json(&["decompose", "--wrt", "A1"], "diagonal_zero.json");
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["wrt"] == json!("A1")));
}

#[test]
fn jordan_module_is_not_amenable() {
    let v = run_json(&["amenable"], "jordan.json");
    assert_eq!(v["results"][0]["amenable"], json!(false));
    assert_eq!(v["results"][0]["phi"][0]["min_poly"], json!("t^2"));
    let out = run(&["induce"], "jordan.json");
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn output_is_byte_identical() {
    for cmd in ["check", "cluster", "decompose", "induce", "homcluster", "oracle-compare"] {
        for flags in [vec![cmd], vec![cmd, "--json"]] {
            let a = run(&flags, "rotation.json");
            let b = run(&flags, "rotation.json");
            assert!(a.status.success());
            assert_eq!(a.stdout, b.stdout);
        }
    }
}

#[test]
fn empty_task_list_is_a_no_op() {
    let out = run(&["cluster"], "empty_tasks.json");
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "no cluster tasks\n");
    let v = run_json(&["cluster"], "empty_tasks.json");
    assert_eq!(v["results"], json!([]));
}

#[test]
fn check_reports_subalgebras_and_modules() {
    let v = run_json(&["check"], "rotation.json");
    let r = &v["results"][0];
    assert_eq!(r["subalgebras"][0]["p_closed"], json!(true));
    assert_eq!(r["subalgebras"][0]["subnormal"], json!(false));
    assert_eq!(r["modules"][0]["over"], json!("S"));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let out = run(&["check"], "syntax_error.json");
    assert_eq!(out.status.code(), Some(2));
    let e = error_of(&out);
    assert_eq!(e["kind"], json!("parse"));
    assert_eq!(e["line"], json!(3));
    let out = run(&["check"], "bad_bracket.json");
    assert_eq!(out.status.code(), Some(2));
    assert!(error_of(&out)["message"].as_str().unwrap().contains("out of range"));
}

#[test]
fn validation_errors_exit_three() {
    let out = run(&["cluster"], "broken_module.json");
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_of(&out)["violations"].as_array().unwrap().len(), 1);
}

#[test]
fn splitting_degree_override_warns() {
    let out = run(&["cluster", "--splitting-degree", "3", "--json"], "rotation.json");
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["splitting_field"]["degree"], json!(6));
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("warning:"));

    let v = run_json(&["cluster", "--splitting-degree", "4"], "rotation.json");
    assert_eq!(v["results"][0]["splitting_field"]["degree"], json!(4));
    assert_eq!(v["results"][0]["characters"].as_array().unwrap().len(), 2);
}
