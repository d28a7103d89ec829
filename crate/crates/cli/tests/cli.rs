use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tks_core::workbench::{corpus, FanSpec};

fn fans_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fans")
}

fn fan(name: &str) -> String {
    fans_dir().join(name).to_string_lossy().into_owned()
}

fn tks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tks"))
        .args(args)
        .env_remove("TKS_ORACLE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn shipped_fan_files_match_builtin_corpus() {
    let mut found = 0;
    for entry in std::fs::read_dir(fans_dir()).unwrap() {
        let path = entry.unwrap().path();
        let spec = FanSpec::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let builtin = corpus::by_name(&spec.name).unwrap_or_else(|| panic!("{} not built in", spec.name));
        assert_eq!(spec, builtin, "{}", path.display());
        found += 1;
    }
    assert_eq!(found, corpus::corpus().len());
}

#[test]
fn beta_on_weighted_projective_plane() {
    let out = tks(&["beta", &fan("p123.json"), "--w", "-1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["A"], "2/1");
    assert_eq!(v["tau"], "3/1");
    assert_eq!(v["eps"], "3/1");
    assert_eq!(v["S"], "12/1");
    assert_eq!(v["beta"], "0/1");
}

#[test]
fn alpha_command() {
    let out = tks(&["alpha", &fan("p123.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["alpha"], "1/6");
    let out = tks(&["alpha", &fan("p1.json")]);
    assert_eq!(json(&out)["alpha"], "1/2");
}

#[test]
fn analyze_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = tks(&["analyze", &fan("p123.json"), "--radius", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdicts"]["toric_divisorial_semistable"], false);
    assert_eq!(v["verdicts"]["destabilizing_witness"]["beta"], "-2/1");

    // Byte-identical on rerun.
    let a = tks(&["analyze", &fan("p2.json"), "--radius", "2"]);
    let b = tks(&["analyze", &fan("p2.json"), "--radius", "2"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["verdicts"]["toric_divisorial_semistable"], true);
}

#[test]
fn screen_command() {
    let out = tks(&["screen", &fan("p123.json"), "--radius", "2"]);
    assert_eq!(json(&out)["verdict"], "singular counterexample");
    let out = tks(&["screen", &fan("p2.json"), "--radius", "1"]);
    assert_eq!(json(&out)["verdict"], "projective space recognized");
}

#[test]
fn volfn_csv_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vol.csv");
    let out = tks(&["volfn", &fan("p123.json"), "--w", "-1,0", "--samples", "4", "--csv", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["vol"]["pieces"][0], serde_json::json!(["6/1", "0/1", "-2/3"]));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("x,vol,Q"));
    assert!(text.lines().nth(2).unwrap().ends_with("1/1;16/3;2/3"));

    let out = tks(&["volfn", &fan("p123.json"), "--w", "-1,0", "--csv", "/nonexistent/dir/v.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };

    let malformed = write("bad.json", "{ not json");
    assert_eq!(tks(&["alpha", &malformed]).status.code(), Some(2));
    assert_eq!(tks(&["beta", &fan("p123.json"), "--w", "1,x"]).status.code(), Some(2));
    assert_eq!(tks(&["analyze", &fan("p2.json"), "--radius", "0"]).status.code(), Some(2));

    let gap = write(
        "gap.json",
        r#"{"name":"gap","dim":2,"rays":[[1,0],[0,1],[-1,0],[0,-1]],"cones":[[0,1],[1,2],[2,3]]}"#,
    );
    let out = tks(&["alpha", &gap]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fan not complete"));

    let dup = write(
        "dup.json",
        r#"{"name":"dup","dim":2,"rays":[[1,0],[0,1],[1,0]],"cones":[[0,1],[1,2]]}"#,
    );
    assert_eq!(tks(&["alpha", &dup]).status.code(), Some(3));

    let not_fano = write(
        "f2.json",
        r#"{"name":"F2","dim":2,"rays":[[1,0],[0,1],[-1,2],[0,-1]],"cones":[[0,1],[1,2],[2,3],[3,0]]}"#,
    );
    assert_eq!(tks(&["alpha", &not_fano]).status.code(), Some(3));

    let out = Command::new(env!("CARGO_BIN_EXE_tks"))
        .args(["beta", &fan("p123.json"), "--w", "-1,0", "--lattice-k", "10"])
        .env("TKS_ORACLE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn lattice_estimate_approaches_s() {
    let out = tks(&["beta", &fan("p123.json"), "--w", "-1,0", "--lattice-k", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let est = tks_core::lattice::parse_rat(v["S_lattice"]["value"].as_str().unwrap()).unwrap();
    let err = (est - tks_core::lattice::rat(12)) / tks_core::lattice::rat(12);
    assert!(err < tks_core::lattice::frac(1, 10), "{err}");
}

#[test]
fn unknown_field_warns() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p2.json");
    std::fs::write(
        &p,
        r#"{"name":"P2","dim":2,"rays":[[1,0],[0,1],[-1,-1]],"cones":[[0,1],[1,2],[2,0]],"colour":"red"}"#,
    )
    .unwrap();
    let out = tks(&["alpha", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn verify_passes() {
    let out = tks(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains(" 0 failed"));
}
