use std::process::{Command, Output};

use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semigroup-forge"))
        .args(args)
        .env_remove("SEMIGROUP_FORGE_TRUNC_MAX")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = forge(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn stdout(args: &[&str]) -> (i32, String) {
    let out = forge(args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn me_negative_example() {
    let (code, v) = json(&["me", "--gens", "4,7,9,10"]);
    assert_eq!(code, 0);
    assert_eq!(v["me"], 4);
    assert_eq!(v["exact"], true);
    assert_eq!(v["method"], "Theorem1");
}

#[test]
fn me_with_witness() {
    let (code, v) = json(&["me", "--gens", "4,9,14,19"]);
    assert_eq!(code, 0);
    assert_eq!(v["me"], 3);
    assert_eq!(v["witness"]["curve"], "x = t^4; y = t^9 + t^10; z = t^14");
    assert_eq!(v["witness"]["certificate"], "-x*z + y^2");
    assert_eq!(v["witness"]["order"], 19);
}

#[test]
fn me_bounds_exit_advisory() {
    let (code, v) = json(&["me", "--gens", "5,6,7,8,9"]);
    assert_eq!(code, 3);
    assert_eq!(v["exact"], false);
    assert_eq!(v["me"], Value::Null);
    assert_eq!(v["lower"], 3);
}

#[test]
fn curve_semigroup() {
    let (code, v) = json(&["curve-sg", "--curve", "x=t^4; y=t^6+t^7"]);
    assert_eq!(code, 0);
    assert_eq!(v["min_gens"], serde_json::json!([4, 6, 13]));
    assert_eq!(v["conductor"], 16);
}

#[test]
fn planar_failure() {
    let (code, v) = json(&["planar", "--gens", "9,21,22"]);
    assert_eq!(code, 0);
    assert_eq!(v["planar"], false);
    assert_eq!(v["failed"], "condition3");
    assert_eq!(v["value"], 63);
    let (_, v) = json(&["planar", "--gens", "4 6 13"]);
    assert_eq!(v["planar"], true);
}

#[test]
fn puiseux_round_trip() {
    assert_eq!(
        stdout(&["--format", "text", "puiseux2sg", "8,20,22,27"]),
        (0, "[8, 20, 42, 89]\n".to_string())
    );
    assert_eq!(
        stdout(&["--format", "text", "sg2puiseux", "8,20,42,89"]),
        (0, "[8; 20, 22, 27]\n".to_string())
    );
    for lambda in ["4,6,7", "2,3", "6,8,9", "8,20,22,27", "9,12,14"] {
        let (_, v) = json(&["puiseux2sg", lambda]);
        let gens: Vec<String> = v["min_gens"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| g.to_string())
            .collect();
        let (code, back) = json(&["sg2puiseux", &gens.join(",")]);
        assert_eq!(code, 0);
        assert_eq!(back["characteristic"], v["characteristic"], "{lambda}");
    }
}

#[test]
fn sorted_keys() {
    let (_, text) = stdout(&["info", "--gens", "4,6,13"]);
    assert_eq!(
        text.trim(),
        r#"{"apery":[0,13,6,19],"conductor":16,"e":3,"frobenius":15,"gaps":[1,2,3,5,7,9,11,15],"gens":[4,6,13],"genus":8,"min_gens":[4,6,13],"multiplicity":4,"self_dual":true}"#
    );
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["info", "--gens", "4,0,6"][..],
        &["info", "--gens", "4,6"],
        &["curve-sg", "--curve", "x=1+t^2"],
        &["curve-sg", "--curve", "x=t^4; y=t^6"],
        &["witness", "--gens", "4,5,6,7"],
        &["sg2puiseux", "9,21,22"],
        &["puiseux2sg", "4,6"],
        &["kunz-classify", "--point", "9,10"],
        &["kunz-classify", "--point", "5,14,3"],
        &["info", "--gens", "3,2000000"],
    ] {
        let out = forge(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error"), "{args:?}");
    }
    let out = forge(&["--max-generator", "3000000", "info", "--gens", "3,2000000"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn trunc_max_from_env_and_flag() {
    let curve = "x=t^8; y=t^20+t^22+t^27";
    let out = Command::new(env!("CARGO_BIN_EXE_semigroup-forge"))
        .args(["curve-sg", "--curve", curve])
        .env("SEMIGROUP_FORGE_TRUNC_MAX", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let (code, v) = json(&["--trunc-max", "400", "curve-sg", "--curve", curve]);
    assert_eq!(code, 0);
    assert_eq!(v["min_gens"], serde_json::json!([8, 20, 42, 89]));
}

#[test]
fn kunz_classify() {
    let (_, v) = json(&["kunz-classify", "--point", "9,10,7"]);
    assert_eq!(v["face"], "interior");
    assert_eq!(v["me"], 4);
    assert_eq!(v["ordering"], 4);
    assert_eq!(v["theorem1"], false);
    let (_, v) = json(&["kunz-classify", "--point", "5,10,15"]);
    assert_eq!(v["face"], "ray");
    assert_eq!(v["e"], 2);
    let (code, v) = json(&["kunz-classify", "--point", "5,18,7"]);
    assert_eq!(code, 0);
    assert_eq!(v["face"], "outside");
    assert_eq!(v["violated"], serde_json::json!(["2x1=x2", "2x3=x2"]));
}

#[test]
fn kunz_enumerate() {
    let (_, v) = json(&["kunz-enumerate", "--bound", "11"]);
    assert_eq!(v["count"], 8);
    assert_eq!(v["counts"], serde_json::json!({"interior": 5, "facet": 3, "ray": 0}));
    assert_eq!(
        v["points"][0],
        serde_json::json!({"x": [5, 6, 7], "face": "interior", "binding": [], "e": 4, "me": 4})
    );
}

#[test]
fn kite_svg_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let (code, v) = json(&["kite-svg", "--bound", "11", "--out", a.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["points"], 8);
    json(&["kite-svg", "--bound", "11", "--out", b.to_str().unwrap()]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn text_format() {
    let (_, t) = stdout(&["--format", "text", "me", "--gens", "4,6,13,15"]);
    assert!(t.starts_with("me<4, 6, 13, 15> = 3 (Theorem1)"), "{t}");
    assert!(t.contains("-x^3 + y^2 has order 15"));
}
