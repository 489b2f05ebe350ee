use serde_json::{json, Value};
use std::process::{Command, Output};

fn siegel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siegel")).args(args).env_remove("SIEGEL_PREC").output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn construct_chi12_2() {
    let v = json_of(&siegel(&["construct", "--name", "chi12_2", "--prec", "10"]));
    assert_eq!(v["coeffs"]["1,1,1"], json!(["0", "0", "0", "2", "9", "12", "0", "-12", "-9", "-2", "0", "0", "0"]));
    assert_eq!(v["prec"], json!(10));
    assert_eq!(v["provenance"][0], json!("named form chi12_2"));
}

#[test]
fn hecke_eigenvalue() {
    let v = json_of(&siegel(&["hecke", "--name", "chi12_2", "--p", "3"]));
    assert_eq!(v["lambda"], json!("-600"));
    let v = json_of(&siegel(&["hecke", "--name", "chi12_2", "--p", "3", "--square", "--prec", "9"]));
    assert_eq!(v["lambda"], json!("-1090791"));
}

#[test]
fn conjecture_table_is_zero_below_twelve() {
    let v = json_of(&siegel(&["dims", "--table", "conjecture", "--jmax", "10"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for r in rows {
        assert!(r.as_array().unwrap()[1..].iter().all(|x| x == "0"), "{r}");
    }
    let out = siegel(&["dims", "--table", "yoshida", "--jmax", "24", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("j,"));
    assert_eq!(text.lines().count(), 14);
}

#[test]
fn restriction_decomposition() {
    let v = json_of(&siegel(&["restrict", "--name", "chi14_7", "--prec", "8", "--decompose"]));
    let l5 = v["components"].as_array().unwrap().iter().find(|c| c["l"] == json!(5)).unwrap();
    assert_eq!(l5["terms"], json!([{"coeff": "-56/225", "left": "e4 Delta", "right": "Delta"}]));
    let v = json_of(&siegel(&["restrict", "--name", "chi5", "--prec", "8"]));
    assert_eq!(v["cells"], json!({}));
}

#[test]
fn base_and_mu() {
    let v = json_of(&siegel(&["base", "--form", "chi10", "--prec", "2"]));
    assert_eq!(v["k"], json!(10));
    let v = json_of(&siegel(&["mu", "--expr", "C_{3,12}", "--prec", "3"]));
    assert_eq!(v["j"], json!(12));
}

#[test]
fn exit_codes() {
    assert_eq!(siegel(&["bogus"]).status.code(), Some(2));
    assert_eq!(siegel(&["construct", "--name", "nope"]).status.code(), Some(2));
    assert_eq!(siegel(&["construct", "--name", "chi12_2", "--prec", "1"]).status.code(), Some(2));
    assert_eq!(siegel(&["construct", "--name", "chi36_3"]).status.code(), Some(2));
    assert_eq!(siegel(&["mu", "--expr", "C_{2,0} + C_{1,6}"]).status.code(), Some(2));
    assert_eq!(siegel(&["hecke", "--name", "chi12_2", "--p", "7", "--prec", "3"]).status.code(), Some(1));
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_siegel"))
        .args(["base", "--form", "psi4"])
        .env("SIEGEL_PREC", "3")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["prec"], json!(3));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("siegel-cli-test-{}.csv", std::process::id()));
    let out = siegel(&["base", "--form", "chi5", "--prec", "2", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("n1,n2,n3,c0\n"));
}

#[test]
fn core_suite_passes_and_is_deterministic() {
    let a = siegel(&["check", "--suite", "core"]);
    let b = siegel(&["check", "--suite", "core"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 9);
    assert_eq!(v["ok"], json!(true));
}
