use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_real-hurwitz")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = bin(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn connected_csv_contains_degree_four_row() {
    let out = stdout(&["table", "--max-degree", "4", "--max-m", "3", "--connected", "--format", "csv"]);
    let mut rows = csv::Reader::from_reader(out.as_bytes());
    let header = rows.headers().unwrap().clone();
    assert_eq!(header.iter().collect::<Vec<_>>(), ["m", "kappa_plus", "kappa_minus", "lambda", "chi", "connected", "value_num", "value_den"]);
    let found = rows.records().map(Result::unwrap).any(|r| {
        r.iter().collect::<Vec<_>>() == ["3", "4", "", "", "2", "true", "2", "1"]
    });
    assert!(found, "{out}");
}

#[test]
fn initial_condition_rows() {
    let out = stdout(&["table", "--max-degree", "2", "--max-m", "0", "--connected", "--format", "csv"]);
    let rows: Vec<String> = out.lines().skip(1).map(String::from).collect();
    assert_eq!(rows, ["0,,1,,2,true,1,1", "0,1,,,2,true,1,1", "0,,,1,4,true,1,1"]);
}

#[test]
fn degree_zero_has_single_empty_row() {
    let out = stdout(&["table", "--max-degree", "0", "--max-m", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["m"], 0);
    assert_eq!(rows[0]["value_num"], "1");
    assert_eq!(rows[0]["value_den"], "1");
}

#[test]
fn table_json_schema() {
    let out = stdout(&["table", "--max-degree", "4", "--max-m", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for row in v.as_array().unwrap() {
        let obj = row.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["chi", "connected", "kappa_minus", "kappa_plus", "lambda", "m", "value_den", "value_num"]);
        assert!(obj["value_num"].is_string() && obj["value_den"].is_string());
        assert!(obj["kappa_plus"].as_array().unwrap().iter().all(|x| x.is_u64()));
    }
}

#[test]
fn output_independent_of_thread_count() {
    for args in [
        vec!["table", "--max-degree", "5", "--max-m", "5", "--connected", "--format", "json"],
        vec!["nonsep", "--max-degree", "4", "--max-m", "4", "--format", "csv"],
        vec!["verify", "--suite", "oracle", "--max-size", "4", "--format", "json"],
    ] {
        let one = stdout(&[args.as_slice(), &["--threads", "1"]].concat());
        let four = stdout(&[args.as_slice(), &["--threads", "4"]].concat());
        assert_eq!(one, four, "{args:?}");
    }
}

#[test]
fn block_dump() {
    let out = stdout(&["block", "--nplus", "1", "--nminus", "1", "--operator", "wplus", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 4);
    assert_eq!(v["entries"][0][3], "1/1");
    assert_eq!(v["entries"][0][0], "0/1");
}

#[test]
fn spectrum_dump() {
    let out = stdout(&["spectrum", "--nplus", "1", "--nminus", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let mut pairs: Vec<(String, String)> = v["exact"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["lambda_plus"].as_str().unwrap().into(), e["lambda_minus"].as_str().unwrap().into()))
        .collect();
    pairs.sort();
    assert_eq!(pairs.len(), 4);
    assert!(pairs.contains(&("-1/1".into(), "1/1".into())));
    assert_eq!(v["approximate"].as_array().unwrap().len(), 0);
    let statuses: Vec<&str> = v["reference_comparison"].as_array().unwrap().iter().map(|r| r["status"].as_str().unwrap()).collect();
    assert_eq!(statuses.iter().filter(|s| **s == "match").count(), 2);
}

#[test]
fn spectrum_with_irrational_eigenvalues() {
    let out = stdout(&["spectrum", "--nplus", "2", "--nminus", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let approx = v["approximate"].as_array().unwrap();
    assert!(!approx.is_empty());
    assert!(approx.iter().all(|a| a["residual_f64"].as_f64().unwrap() < 1e-10));
}

#[test]
fn oracle_dump() {
    let out = stdout(&["oracle", "--nplus", "1", "--nminus", "1", "--m", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["counts"].as_array().unwrap().len(), 2);
    assert_eq!(v["matches_operator"], true);
}

#[test]
fn nonsep_type_filter() {
    let out = stdout(&["nonsep", "--max-degree", "3", "--max-m", "6", "--connected", "--type", "(∅, ∅, 3, ∅)", "--format", "csv"]);
    assert!(out.lines().any(|l| l == "6,,,3,,-2,true,9,1"), "{out}");
}

#[test]
fn passing_suites_exit_zero() {
    for suite in ["oracle", "spectral", "nonsep"] {
        let out = bin(&["verify", "--suite", suite, "--max-size", "4"]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn failed_check_exits_one() {
    let out = bin(&["verify", "--suite", "genus0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&str> = v.as_array().unwrap().iter().filter(|c| c["status"] == "fail").map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failed, ["genus-0 evaluation at u^2/2!"]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["table", "--threads", "0"],
        vec!["table", "--max-degree", "-1"],
        vec!["table", "--format", "xml"],
        vec!["table", "--type", "(1, 2)"],
        vec!["nonsep", "--type", "(3, , , )"],
        vec!["block", "--nplus", "1", "--nminus", "1", "--operator", "w"],
        vec!["spectrum", "--nplus", "1", "--nminus", "1", "--tol", "-1"],
        vec!["verify", "--suite", "all"],
        vec!["frobnicate"],
    ] {
        assert_eq!(bin(&args).status.code(), Some(2), "{args:?}");
    }
}
