use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn plank(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_plank"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

const ZONES: &str = r#"{"dim": 3, "segments": [
    {"a": [1, 0, 0], "b": 0, "delta": 0.4},
    {"a": [0, 1, 0], "b": 0, "delta": 0.4},
    {"a": [0, 0, 1], "b": 0, "delta": 0.4}]}"#;

#[test]
fn theorem1_on_x1x2() {
    let out = plank(&["theorem1"], r#"{"dim": 2, "terms": [{"e": [1, 1], "c": 1.0}]}"#);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["generator"], "chacha8/rand_chacha-0.3");
    assert_eq!(r["seed"], 0);
    let q = std::f64::consts::FRAC_PI_4;
    assert!((num(&r["report"]["distance"]) - q).abs() < 1e-9);
    assert!((num(&r["report"]["bound"]) - q).abs() < 1e-15);
}

#[test]
fn refute_three_zones() {
    let out = plank(&["refute-sphere"], ZONES);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let c = 1.0 / 3f64.sqrt();
    for x in r["report"]["point"].as_array().unwrap() {
        assert!((num(x).abs() - c).abs() < 1e-8);
    }
    assert!(r["report"]["split_N"].is_null());
    assert!(num(&r["report"]["total_width"]) > 2.39);
}

#[test]
fn refute_over_budget_is_usage_error() {
    let input = r#"{"dim": 3, "segments": [
        {"a": [1, 0, 0], "delta": 0.8}, {"a": [0, 1, 0], "delta": 0.8}]}"#;
    let out = plank(&["refute-sphere"], input);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
}

#[test]
fn refute_ball_planks() {
    let input = r#"{"dim": 2, "planks": [{"a": [1, 0], "c": -0.3, "w": 0.7}, {"a": [0, 1], "c": 0.2, "w": 0.8}]}"#;
    let out = plank(&["refute-ball", "--starts", "16"], input);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let p: Vec<f64> = r["report"]["point"].as_array().unwrap().iter().map(num).collect();
    assert!(p.iter().map(|x| x * x).sum::<f64>() <= 1.0 + 1e-12);
    assert!(r["report"]["clearances"].as_array().unwrap().iter().all(|c| num(c) > 0.0));
}

#[test]
fn malformed_json_reports_position() {
    let out = plank(&["sphere-max"], "{\"dim\": 2,\n \"terms\": [ {\"e\": [1], \"c\": }]}");
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn unknown_field_and_usage_errors() {
    let out = plank(&["theorem1"], r#"{"dim": 2, "termz": []}"#);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(plank(&["no-such-command"], "").status.code(), Some(3));
    assert_eq!(plank(&["theorem1", "--tol", "-1"], "").status.code(), Some(3));
    assert_eq!(plank(&["theorem1", "--starts", "0"], "").status.code(), Some(3));
    assert_eq!(plank(&["lifted-diag", "--n", "2", "--k", "5"], "").status.code(), Some(3));
}

#[test]
fn trig_csv_for_cos_2theta() {
    let out = plank(&["trig-verify", "--format", "csv"], r#"{"n": 2, "a0": 0, "c": [[0, 0], [1, 0]]}"#);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["kind", "theta", "value", "arc"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    let events: Vec<&csv::StringRecord> = rows.iter().filter(|r| &r[0] != "sample").collect();
    assert_eq!(events.iter().filter(|r| &r[0] == "zero").count(), 4);
    assert_eq!(events.iter().filter(|r| &r[0] == "max").count(), 4);
    for r in events {
        let arc: f64 = r[3].parse().unwrap();
        assert!((arc - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    }
}

#[test]
fn cheb_table_columns() {
    let out = plank(&["cheb-table", "--n", "2", "--k", "100", "--x-max", "5", "--format", "csv"], "");
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["x", "scaled_t_k", "limit", "g_nk", "g_n", "big_g_n"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 201);
    for r in &rows {
        let x: f64 = r[0].parse().unwrap();
        let limit: f64 = r[2].parse().unwrap();
        assert!((limit - x.cos()).abs() < 1e-12);
    }
}

#[test]
fn lifted_diag_rows() {
    let out = plank(&["lifted-diag", "--n", "2", "--k", "4", "--format", "csv"], "");
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert!((r[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-9);
        assert!((r[3].parse::<f64>().unwrap() - 1.5).abs() < 1e-9);
    }
}

#[test]
fn complex_and_weighted() {
    let out = plank(&["complex-verify", "--starts", "16"], r#"{"dim": 2, "deg": 2, "terms": [{"e": [1, 1], "re": 1, "im": 0}]}"#);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!((num(&r["report"]["distances"][0]) - std::f64::consts::FRAC_PI_4).abs() < 1e-8);

    let weighted = r#"{"dim": 2, "items": [
        {"forms": [{"re": [1, 0]}], "delta": 0.6},
        {"forms": [{"re": [0, 1]}], "delta": 0.8}]}"#;
    let out = plank(&["weighted-verify", "--starts", "16"], weighted);
    assert_eq!(out.status.code(), Some(0));

    let heavy = r#"{"dim": 2, "items": [
        {"forms": [{"re": [1, 0]}], "delta": 0.9},
        {"forms": [{"re": [0, 1]}], "delta": 0.9}]}"#;
    assert_eq!(plank(&["weighted-verify"], heavy).status.code(), Some(3));
}

#[test]
fn ball_commands() {
    let poly = r#"{"dim": 2, "forms": [{"a": [1, 0], "b": 0.2}, {"a": [0.6, 0.8], "b": -0.1}]}"#;
    let out = plank(&["ball-pair", "--starts", "16"], poly);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!((num(&r["report"]["norm_sq"]) - 1.0).abs() < 1e-10);

    let out = plank(&["ball-multiplier", "--starts", "16"], poly);
    assert_eq!(out.status.code(), Some(0));
    assert!(num(&report(&out)["report"]["distance"]) >= 0.5 - 1e-6);
}

#[test]
fn output_is_deterministic() {
    let poly = r#"{"dim": 3, "terms": [{"e": [1, 1, 0], "c": 1.0}, {"e": [0, 0, 2], "c": -0.5}, {"e": [1, 0, 0], "c": 0.3}]}"#;
    let a = plank(&["theorem1", "--seed", "11", "--starts", "24"], poly);
    let b = plank(&["theorem1", "--seed", "11", "--starts", "24"], poly);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["seed"], 11);
}
