use std::process::{Command, Output};

fn spinh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn single_characters_value() {
    let o = spinh(&[
        "single",
        "--r",
        "2",
        "--g",
        "2",
        "--mu",
        "9",
        "--method",
        "characters",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2556603/320"));
}

#[test]
fn all_methods_reach_consensus() {
    let o = spinh(&[
        "single", "--r", "6", "--g", "1", "--mu", "11", "--method", "all",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("187/2").count(), 6);
    assert!(out.contains("consensus: agree"));
}

#[test]
fn even_part_is_structural_zero() {
    let o = spinh(&[
        "single", "--r", "2", "--g", "0", "--mu", "2", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("r,g,mu,nu,method,value,status"));
    assert_eq!(lines.next(), Some("2,0,2,,characters,0/1,structural-zero"));
}

#[test]
fn out_of_scope_method() {
    let o = spinh(&[
        "single", "--r", "2", "--g", "0", "--mu", "3,1", "--method", "fock",
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("method-unavailable"));
    // with every method requested, an unavailable route is not fatal
    let o = spinh(&[
        "single", "--r", "2", "--g", "0", "--mu", "3,1", "--method", "all",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors() {
    assert_eq!(
        spinh(&["table", "--preset", "nonsense"]).status.code(),
        Some(3)
    );
    assert_eq!(
        spinh(&["single", "--r", "3", "--g", "0", "--mu", "1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        spinh(&["single", "--r", "2", "--g", "0", "--mu", "x"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(spinh(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_output_is_schema_stable_and_deterministic() {
    let args = [
        "table",
        "--preset",
        "appendixB",
        "--r",
        "6",
        "--format",
        "json",
    ];
    let a = spinh(&args);
    let b = spinh(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 15);
    let keys: Vec<&str> = rows[0]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    let mut expected = vec!["g", "method", "mu", "nu", "r", "status", "value"];
    expected.sort_unstable();
    assert_eq!(keys, expected);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn table_reports_diffs() {
    let o = spinh(&[
        "table",
        "--preset",
        "appendixB",
        "--r",
        "2",
        "--format",
        "csv",
    ]);
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    assert_eq!(stdout(&o).lines().count(), 38);
    // the two-part genus-zero cells disagree with the character formula
    assert_eq!(o.status.code(), Some(2));
    assert!(err.contains("diff: r=2 g=0 mu=(3,1) table 9/4 computed 3/2"));
}

#[test]
fn double_numbers() {
    let o = spinh(&[
        "double",
        "--r",
        "2",
        "--g",
        "0",
        "--mu",
        "3,1",
        "--nu",
        "1,1,1,1",
        "--connected",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["value"], "36/1");
    assert_eq!(v[0]["nu"], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn quick_crosscheck_passes() {
    let o = spinh(&["crosscheck", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));
}
