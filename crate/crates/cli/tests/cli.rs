use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn dmr(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dmr"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: Option<&str>) -> Value {
    let out = dmr(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("dmr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn x_series(n: u32, trunc: usize, terms: Value) -> String {
    json!({"N": n, "alphabet": "X", "truncation": trunc, "mode": "rational", "terms": terms}).to_string()
}

fn terms(v: &Value) -> usize {
    v["terms"].as_array().unwrap().len()
}

#[test]
fn shuffle_of_two_letters() {
    let a = temp_file("x0.json", &x_series(1, 2, json!([{"word": [-1], "coeff": "1"}])));
    let b = temp_file("x1.json", &x_series(1, 2, json!([{"word": [0], "coeff": "1"}])));
    let v = ok_json(&["product", "--shuffle", a.to_str().unwrap(), b.to_str().unwrap()], None);
    assert_eq!(v["terms"], json!([{"word": [-1, 0], "coeff": "1/1"}, {"word": [0, -1], "coeff": "1/1"}]));
}

#[test]
fn delta_star_has_three_terms() {
    let y2 = json!({"N": 1, "alphabet": "Y", "truncation": 2, "mode": "rational", "terms": [{"word": [[2, 0]], "coeff": "1"}]});
    let v = ok_json(&["coproduct", "--delta-star"], Some(&y2.to_string()));
    assert_eq!(v["kind"], "tensor");
    assert_eq!(terms(&v), 3);
}

#[test]
fn delta_star_on_x_is_a_usage_error() {
    let s = x_series(1, 2, json!([{"word": [-1, 0], "coeff": "1"}]));
    assert_eq!(dmr(&["coproduct", "--delta-star"], Some(&s)).status.code(), Some(2));
}

#[test]
fn series_round_trip() {
    let s = x_series(
        2,
        3,
        json!([{"word": [], "coeff": "1"}, {"word": [1, -1], "coeff": "-2/3"}, {"word": [0, 0, 1], "coeff": "5"}]),
    );
    let v = ok_json(&["log"], Some(&s));
    let back = ok_json(&["exp"], Some(&v.to_string()));
    let orig: Value = serde_json::from_str(&s).unwrap();
    assert_eq!(back["terms"].as_array().unwrap().len(), orig["terms"].as_array().unwrap().len());
    assert_eq!(back["terms"][1]["coeff"], "-2/3");
}

#[test]
fn ps_qs_round_trip_is_byte_identical() {
    let y = json!({"N": 3, "alphabet": "Y", "truncation": 4, "mode": "rational",
        "terms": [{"word": [[1, 1], [2, 2]], "coeff": "3/4"}, {"word": [[1, 2], [1, 2], [1, 1]], "coeff": "-1"}]});
    let first = dmr(&["ps"], Some(&y.to_string()));
    let canonical = dmr(&["qs"], Some(std::str::from_utf8(&first.stdout).unwrap()));
    let again = dmr(
        &["qs"],
        Some(std::str::from_utf8(&dmr(&["ps"], Some(std::str::from_utf8(&canonical.stdout).unwrap())).stdout).unwrap()),
    );
    assert_eq!(canonical.stdout, again.stdout);
    assert_eq!(canonical.status.code(), Some(0));
}

#[test]
fn lift_then_check() {
    let point = dmr(&["lift", "--weight", "4", "--N", "1"], None);
    assert_eq!(point.status.code(), Some(0));
    let text = String::from_utf8(point.stdout).unwrap();
    let r = ok_json(&["check", "--lambda", "1"], Some(&text));
    assert_eq!(r["passed"], true);
    let wrong = dmr(&["check", "--lambda", "2"], Some(&text));
    assert_eq!(wrong.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&wrong.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn identity_fails_over_one() {
    let one = x_series(1, 2, json!([{"word": [], "coeff": "1"}]));
    assert_eq!(dmr(&["check", "--lambda", "0"], Some(&one)).status.code(), Some(0));
    assert_eq!(dmr(&["check", "--lambda", "1"], Some(&one)).status.code(), Some(1));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(dmr(&["exp"], Some("{bad")).status.code(), Some(2));
    let one = x_series(1, 2, json!([{"word": [], "coeff": "1"}]));
    assert_eq!(dmr(&["check"], Some(&one)).status.code(), Some(2));
    let bad_letter = x_series(1, 2, json!([{"word": [3], "coeff": "1"}]));
    assert_eq!(dmr(&["antipode"], Some(&bad_letter)).status.code(), Some(2));
    assert_eq!(dmr(&["numeric", "zeta", "1", "2"], None).status.code(), Some(2));
}

#[test]
fn dmr0_weight_three() {
    let v = ok_json(&["dmr0", "--weight", "3", "--N", "1"], None);
    assert_eq!(v["basis"].as_array().unwrap().len(), 1);
    assert_eq!(v["dim"], 1);
    let v = ok_json(&["dmr0", "--weight", "4", "--n", "3", "--variant", "dmrd0"], None);
    assert_eq!(v["dim"], 3);
}

#[test]
fn numeric_zeta_two_one() {
    let v = ok_json(&["numeric", "zeta", "2", "1"], None);
    let re: f64 = v["value"][0].as_str().unwrap().parse().unwrap();
    assert!((re - 1.202_056_903_159_594_3).abs() < 1e-9);
    assert!(v["error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn connect_and_ihara() {
    let a = dmr(&["lift", "--weight", "3", "--N", "3"], None);
    let b = dmr(&["lift", "--weight", "3", "--N", "3", "--free", "ones"], None);
    let pa = temp_file("a.json", std::str::from_utf8(&a.stdout).unwrap());
    let pb = temp_file("b.json", std::str::from_utf8(&b.stdout).unwrap());
    let psi = ok_json(&["connect", pa.to_str().unwrap(), pb.to_str().unwrap()], None);
    assert!(terms(&psi) > 0);
    let pp = temp_file("psi.json", &psi.to_string());
    let br = ok_json(&["ihara", pp.to_str().unwrap(), pp.to_str().unwrap()], None);
    assert_eq!(terms(&br), 0);
}
