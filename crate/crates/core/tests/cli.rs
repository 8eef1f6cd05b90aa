use std::process::{Command, Output};

fn qcarlitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcarlitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_outputs() {
    let o = qcarlitz(&["table", "--r", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n-1/(q + 1)\nq/(q^3 + 2*q^2 + 2*q + 1)\n");

    let o = qcarlitz(&["table", "--r", "0", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n0\n");

    assert_eq!(qcarlitz(&["table", "--r", "-1", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn table_json() {
    let o = qcarlitz(&["table", "--r", "1", "--n", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"][1]["num"], serde_json::json!(["-1"]));
    assert_eq!(v["values"][1]["den"], serde_json::json!(["1", "1"]));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "thm1", "--n-max", "4", "--r-max", "1"];
    assert_eq!(qcarlitz(&args).stdout, qcarlitz(&args).stdout);
}

#[test]
fn powersum_outputs() {
    let o = qcarlitz(&["powersum", "--n", "0", "--r", "1", "--N", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "q^2 + q + 1\n");

    let o = qcarlitz(&["powersum", "--n", "2", "--r", "2", "--N", "2", "--q", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/4\n");

    assert_eq!(qcarlitz(&["powersum", "--n", "1", "--r", "0", "--N", "3"]).status.code(), Some(2));
    assert_eq!(qcarlitz(&["powersum", "--n", "1", "--r", "1", "--N", "0"]).status.code(), Some(2));
    assert_eq!(
        qcarlitz(&["powersum", "--n", "1", "--r", "1", "--N", "2", "--q", "0.5"]).status.code(),
        Some(2)
    );
}

#[test]
fn series_outputs() {
    let o = qcarlitz(&["series", "--n", "2", "--r", "1", "--q", "1/2", "--tol", "1/1000000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("exact_value = 4/21\n"), "{text}");
    assert!(text.contains("within_bound = true\n"));

    let o = qcarlitz(&["series", "--n", "1", "--r", "1", "--q", "1/3", "--tol", "1/1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exact_value = -3/4\n"));

    assert_eq!(
        qcarlitz(&["series", "--n", "1", "--r", "1", "--q", "2", "--tol", "1/10"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qcarlitz(&["series", "--n", "1", "--r", "1", "--q", "1/2", "--tol", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_exit_codes() {
    assert_eq!(qcarlitz(&["verify", "--suite", "unknown"]).status.code(), Some(2));
    let o = qcarlitz(&["verify", "--suite", "cor6", "--n-max", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS suite cor6: 22 checked, 0 failed\n"));

    let o = qcarlitz(&["verify", "--suite", "thm4", "--n-max", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], serde_json::json!(true));
}

#[test]
fn stirling_output() {
    let o = qcarlitz(&["stirling", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "S_q(2,0) = 0\nS_q(2,1) = 1\nS_q(2,2) = 1\n");
}

#[test]
fn help_exits_zero() {
    assert_eq!(qcarlitz(&["--help"]).status.code(), Some(0));
    assert_eq!(qcarlitz(&[]).status.code(), Some(2));
}
