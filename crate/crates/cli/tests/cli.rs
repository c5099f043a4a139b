use std::process::Command;

use ncgeo_core::parser::parse_element;
use ncgeo_core::Presentation;

fn ncgeo(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ncgeo")).args(args).env_remove("NCGEO_FOCK_DIM").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn fuzzy_symbolic_zero_connection_passes() {
    let (code, out) = ncgeo(&["verify", "fuzzy", "--mode", "symbolic", "--connection", "zero"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["summary"]["failed"], 0);
}

#[test]
fn enneper_report_contains_display_metric() {
    let (code, out) = ncgeo(&["minimal", "--F", "1", "--fock-dim", "16"]);
    assert_eq!(code, 0);
    let p = Presentation::weyl_lambda();
    let s = parse_element("2*(1 + Ls^2*L^2 + 2*Ls*L)", &p).unwrap();
    assert_eq!(json(&out)["data"]["S"], s.to_text());
}

#[test]
fn invalid_options_exit_two() {
    assert_eq!(ncgeo(&["verify", "monopole", "--t", "1"]).0, 2);
    assert_eq!(ncgeo(&["verify", "monopole", "--t", "1/2"]).0, 2);
    assert_eq!(ncgeo(&["verify", "fuzzy", "--mode", "symbolic", "--spin", "1"]).0, 2);
    assert_eq!(ncgeo(&["eval", "X +", "-p", "fuzzy"]).0, 2);
    assert_eq!(ncgeo(&["minimal", "--F", "Ls"]).0, 2);
    assert_eq!(ncgeo(&["frobnicate"]).0, 2);
}

#[test]
fn monopole_three_halves_passes() {
    assert_eq!(ncgeo(&["verify", "monopole", "--t", "3/2"]).0, 0);
}

#[test]
fn eval_examples() {
    let nf = |args: &[&str]| json(&ncgeo(args).1)["data"]["normal-form"].as_str().unwrap().to_string();
    assert_eq!(nf(&["eval", "L*Ls - Ls*L"]), "2*hbar");
    assert_eq!(nf(&["eval", "-p", "weyl-uv", "adj(U*V)"]), "-i*hbar + U*V");
    assert_eq!(nf(&["eval", "-p", "fuzzy", "X^2 + Y^2 + Z^2"]), "1");
}

#[test]
fn reports_are_deterministic_and_can_be_written() {
    let args = ["verify", "fuzzy", "--mode", "matrix", "--spin", "1"];
    assert_eq!(ncgeo(&args).1, ncgeo(&args).1);
    let dir = std::env::temp_dir().join(format!("ncgeo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let (code, out) = ncgeo(&["verify", "monopole", "--format", "text", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("monopole/idempotent"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fock_dimension_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ncgeo"))
        .args(["minimal", "--F", "1"])
        .env("NCGEO_FOCK_DIM", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&String::from_utf8(out.stdout).unwrap())["data"]["fock-dims"], "12,24");
}
