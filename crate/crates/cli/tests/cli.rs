use std::process::Command;

use serde_json::Value;
use theta_cli::{run_args, EXIT_OK, EXIT_USAGE};

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["theta"];
    argv.extend_from_slice(args);
    let out = run_args(argv, None);
    let v = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, v)
}

fn code(args: &[&str], env: Option<&str>) -> i32 {
    let mut argv = vec!["theta"];
    argv.extend_from_slice(args);
    run_args(argv, env).code
}

#[test]
fn mult_e6_all_routes() {
    let (code, v) = json(&["mult", "e6", "--w", "1,0,1,0,1,0", "--method", "all"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["case"], "e6");
    let row = &v["results"][0];
    assert_eq!(row["closed"], 3);
    assert_eq!(row["averaging"], 3);
    assert_eq!(row["agree"], true);
    assert_eq!(row["dim"], "27");
    assert!(row.get("direct").is_none());
}

#[test]
fn mult_e8_trivial() {
    let (code, v) = json(&["mult", "e8", "--w", "0,0,0,0,0,0,0,0", "--method", "all"]);
    assert_eq!(code, EXIT_OK);
    let row = &v["results"][0];
    for route in ["closed", "averaging", "direct"] {
        assert_eq!(row[route], 1, "{route}");
    }
    assert_eq!(row["agree"], true);
}

#[test]
fn mult_single_method() {
    let (_, v) = json(&["mult", "e8", "--w", "1,1,1,0,0,0,0,0", "--method", "direct"]);
    let row = &v["results"][0];
    assert_eq!(row["direct"], 6);
    assert!(row.get("closed").is_none());
    // nine entries with λ9 = 0 are accepted too
    let (_, v) = json(&["mult", "e8", "--w", "1,1,1,0,0,0,0,0,0", "--method", "closed"]);
    assert_eq!(v["results"][0]["closed"], 6);
}

#[test]
fn direct_route_is_null_off_the_lattice() {
    let (code, v) = json(&["mult", "e8", "--w", "1,0,0,0,0,0,0,0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"][0]["direct"], Value::Null);
    assert_eq!(v["results"][0]["closed"], 0);
}

#[test]
fn table_is_sorted_and_complete() {
    let (code, v) = json(&["table", "e6", "--max", "1"]);
    assert_eq!(code, EXIT_OK);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 27);
    let weights: Vec<Vec<i64>> =
        rows.iter().map(|r| serde_json::from_value(r["weight"].clone()).unwrap()).collect();
    let mut sorted = weights.clone();
    sorted.sort();
    assert_eq!(weights, sorted);
    assert!(rows.iter().all(|r| r["agree"] == true));
}

#[test]
fn csv_output() {
    let out = run_args(["theta", "--output", "csv", "table", "e8", "--max", "1"], None);
    assert_eq!(out.code, EXIT_OK);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "w1,w2,w3,w4,w5,w6,w7,w8,dim,closed,averaging,direct,agree");
    assert_eq!(lines.len(), 10);
    assert!(lines.contains(&"1,1,1,0,0,0,0,0,84,6,6,6,true"));
}

#[test]
fn verify_cartan_lines() {
    let out = run_args(["theta", "verify", "cartan"], None);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.lines().filter(|l| !l.contains("identities hold")).all(|l| l.starts_with("PASS ")));
    let (_, v) = json(&["--output", "json", "verify", "cartan"]);
    assert_eq!(v["passed"], v["total"]);
}

#[test]
fn verify_groups() {
    let (code, v) = json(&["verify", "group", "e6"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["order"], 81);
    assert_eq!(v["acting_trivially"], 9);
    assert_eq!(v["elements"].as_array().unwrap().len(), 81);
    let (code, v) = json(&["verify", "group", "e8"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["central"], 3);
    assert_eq!(v["conjugate_to_mu"], 78);
    assert_eq!(v["monomial_stabilizer_order"], 243);
}

#[test]
fn oracle_output() {
    let (code, v) = json(&["oracle", "e6", "--degree", "6", "--w", "1,0,1,0,1,0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["invariant_series"], serde_json::json!([1, 0, 0, 0, 0, 0, 1]));
    assert_eq!(v["degrees"][2]["components"].as_array().unwrap().len(), 4);
    assert_eq!(v["degrees"][2]["dim"], "378");
    assert_eq!(v["harmonic"]["series"][1], 1);
    assert_eq!(v["harmonic"]["bounded"], true);
}

#[test]
fn oracle_degree_cap_and_override() {
    assert_eq!(code(&["oracle", "e8", "--degree", "7"], None), EXIT_USAGE);
    assert_eq!(code(&["oracle", "e8", "--degree", "3"], Some("2")), EXIT_USAGE);
    assert_eq!(code(&["oracle", "e8", "--degree", "2"], Some("2")), EXIT_OK);
    assert_eq!(code(&["oracle", "e8", "--degree", "2"], Some("two")), EXIT_USAGE);
}

#[test]
fn usage_errors() {
    for args in [
        &["mult", "e6", "--w", "1,0"][..],
        &["mult", "e6", "--w", "0,1,0,0,0,0"],
        &["mult", "e6", "--w", "0,0,0,0,0,0", "--method", "direct"],
        &["mult", "e8", "--w", "1,2,0,0,0,0,0,0"],
        &["mult", "e7", "--w", "0"],
        &["table", "e6"],
        &["--threads", "0", "table", "e6", "--max", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(code(args, None), EXIT_USAGE, "{args:?}");
    }
    assert_eq!(code(&["--help"], None), EXIT_OK);
    assert_eq!(code(&["--version"], None), EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_theta");
    let ok = Command::new(bin).args(["mult", "e6", "--w", "0,0,0,0,0,0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["mult", "e6", "--w", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
    let capped = Command::new(bin)
        .args(["oracle", "e8", "--degree", "2"])
        .env("THETA_ORACLE_MAX_DEGREE", "1")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
}
