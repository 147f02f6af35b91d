use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmchev")).args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn json_err(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(1));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_a2() {
    let v = json_ok(&["classify", &data("a2.json")]);
    assert_eq!(v["type"], "finite");
    assert_eq!(v["det"], "3");
    assert_eq!(v["index"], "3");
    assert_eq!(v["labels"][1], "b");
    assert_eq!(json_ok(&["classify", &data("hyperbolic.json")])["type"], "hyperbolic");
}

#[test]
fn invalid_gcm_is_a_domain_error() {
    let v = json_err(&["classify", &data("bad.json")]);
    assert_eq!(v["error"]["code"], "PositiveOffDiagonal");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["classify", &data("missing.json")]).status.code(), Some(2));
    assert_eq!(run(&["classify", &data("a2.json"), "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["module", &data("a2.json"), "--lambda", "1", "--depth", "2"]).status.code(), Some(2));
}

#[test]
fn roots_with_witnesses() {
    let v = json_ok(&["roots", &data("a2.json"), "--height", "2"]);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 3);
    let top = list.iter().find(|r| r["height"] == 2).unwrap();
    assert_eq!(top["coords"], serde_json::json!([1, 1]));
    assert!(top["witness"]["simple"].is_u64());
}

#[test]
fn module_dims_and_bases() {
    let v = json_ok(&["module", &data("a2.json"), "--lambda", "1,1", "--depth", "4", "--zbasis"]);
    assert_eq!(v["total_dim"], 8);
    let zero = v["weights"].as_array().unwrap().iter().find(|w| w["depth"] == serde_json::json!([1, 1])).unwrap();
    assert_eq!(zero["dim"], 2);
    assert_eq!(zero["zbasis"]["vectors"].as_array().unwrap().len(), 2);
}

#[test]
fn sl2_step_example() {
    let v = json_ok(&["sl2-step", "1", "0", "1/2", "1"]);
    assert_eq!(v, serde_json::json!({"gamma": [[-2, 1], [-1, 0]], "upper": [["-1/2", "-1"], ["0", "-2"]]}));
    let v = json_err(&["sl2-step", "1", "1", "1", "1"]);
    assert_eq!(v["error"]["code"], "NotDeterminantOne");
}

#[test]
fn eval_worked_example() {
    for w in ["x(-1,1)*x(+1,1)", "x(+1,1/2)*h(1,1/2)*x(-1,1/2)"] {
        let v = json_ok(&["eval", &data("a1.json"), "--lambda", "1", "--depth", "1", "--word", w]);
        assert_eq!(v["matrix"], serde_json::json!([["1", "1"], ["1", "2"]]));
        assert_eq!(v["integral"], true);
    }
}

#[test]
fn check_integral_reports_witness() {
    let v = json_ok(&["check-integral", &data("a1.json"), "--lambdas", "1", "--depth", "1", "--word", "x(+1,1/2)"]);
    assert_eq!(v["verdict"], "NonIntegral");
    assert_eq!(v["witness"]["coefficient"], "1/2");
    let v = json_ok(&["check-integral", &data("a2.json"), "--depth", "2", "--word", "h(1,-1)*x(-2,3)"]);
    assert_eq!(v["verdict"], "Integral");
}

#[test]
fn syntax_errors_carry_positions() {
    let v = json_err(&["eval", &data("a1.json"), "--lambda", "1", "--depth", "1", "--word", "x(1,1/0)"]);
    assert_eq!(v["error"]["code"], "ZeroDenominator");
    let v = json_err(&["eval", &data("a1.json"), "--lambda", "1", "--depth", "1", "--word", "x(+1,1)*"]);
    assert_eq!(v["error"]["code"], "SyntaxError");
    assert_eq!(v["error"]["context"]["column"], 9);
}

#[test]
fn factor_and_budget() {
    let v = json_ok(&["factor", &data("a1.json"), "--word", "x(-1,1/2)"]);
    assert_eq!(v["b"], "x(+1,1/2)*h(1,-1/2)");
    assert!(v["certificate_depth"].is_u64());
    let out = Command::new(env!("CARGO_BIN_EXE_kmchev"))
        .args(["factor", &data("a2.json"), "--word", "x(+1,1/2)*x(-1,1/3)*x(-2,1/2)"])
        .env("KMCHEV_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "MoveBudgetExceeded");
}

#[test]
fn reduce_expands() {
    let v = json_ok(&["reduce", &data("a2.json"), "--word", "x(+1,3)"]);
    assert_eq!(v["word"], "x(+1,1)*x(+1,1)*x(+1,1)");
    let v = json_err(&["reduce", &data("a2.json"), "--word", "x(+1,1/2)"]);
    assert_eq!(v["error"]["code"], "NonIntegralParameter");
    assert_eq!(v["error"]["context"]["position"], 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["factor", &data("a2.json"), "--word", "w(1)*x(-2,2/3)*xr([1,1],1/2)"];
    let first = run(&args).stdout;
    for _ in 0..3 {
        assert_eq!(run(&args).stdout, first);
    }
}
