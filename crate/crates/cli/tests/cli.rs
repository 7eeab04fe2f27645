use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_maxmod-lab");

fn lab(dir: &Path, args: &[&str], config: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.current_dir(dir).env_remove("MAXMOD_LAB_OUT").args(args);
    if let Some(text) = config {
        let path = dir.join("job.json");
        fs::write(&path, text).unwrap();
        cmd.arg("--config").arg(path);
    }
    cmd.output().unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<f64>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn invalid_order_exits_2() {
    let tmp = TempDir::new().unwrap();
    let out = lab(tmp.path(), &["zeros"], Some(r#"{"spec":{"forward":[]}}"#));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("order"), "{err}");
    assert_eq!(err.matches("invalid input").count(), 1, "{err}");
}

#[test]
fn unknown_field_and_bad_tol_exit_2() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(lab(tmp.path(), &["zeros"], Some(r#"{"levls":[3]}"#)).status.code(), Some(2));
    assert_eq!(lab(tmp.path(), &["zeros", "--tol", "-1"], None).status.code(), Some(2));
    assert_eq!(lab(tmp.path(), &["zeros"], Some(r#"{"spec":"nosuchpreset"}"#)).status.code(), Some(2));
}

#[test]
fn fig2_zeros_lie_near_the_interval() {
    let tmp = TempDir::new().unwrap();
    let out = lab(tmp.path(), &["zeros", "--out", "o"], Some(r#"{"spec":"fig2","levels":[41]}"#));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&tmp.path().join("o/zeros_41.csv"));
    assert!(!rows.is_empty());
    for r in &rows {
        let (x, y) = (r[1], r[2]);
        let d = (x.clamp(-4.0, 1.0) - x).hypot(y);
        assert!(d < 0.15, "zero {x}+{y}i is {d} from [-4, 1]");
    }
}

#[test]
fn fig1_sigma_i_has_four_points() {
    let tmp = TempDir::new().unwrap();
    let out = lab(tmp.path(), &["zeros", "--out", "o"], Some(r#"{"spec":"fig1","levels":[45,55,64]}"#));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&tmp.path().join("o/sigma_i.json"));
    assert_eq!(doc["data"]["sigma_i"]["points"].as_array().unwrap().len(), 4, "{doc}");
}

#[test]
fn fig3_circle_fit() {
    let tmp = TempDir::new().unwrap();
    let out = lab(tmp.path(), &["discriminant", "--out", "o"], Some(r#"{"spec":"fig3"}"#));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let fit = &json(&tmp.path().join("o/curve.json"))["data"]["circle_fit"];
    let c = &fit["center"];
    assert!((c[0].as_f64().unwrap() - 1.0).abs() < 1e-3);
    assert!(c[1].as_f64().unwrap().abs() < 1e-3);
    assert!((fit["radius"].as_f64().unwrap() - 1.0).abs() < 1e-3);
}

fn all_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn outputs_are_deterministic_across_runs_and_threads() {
    let tmp = TempDir::new().unwrap();
    let cfg = r#"{"spec":"fig2","grid":{"x":[-5,2],"y":[-1.5,1.5],"nx":40,"ny":30},"n":60}"#;
    for cmd in ["ratio-field", "discriminant", "zeros", "measure"] {
        let a = lab(tmp.path(), &[cmd, "--out", "a", "--jobs", "1"], Some(cfg));
        let b = lab(tmp.path(), &[cmd, "--out", "b", "--jobs", "4"], Some(cfg));
        assert!(a.status.success() && b.status.success(), "{cmd}");
    }
    let a = all_files(&tmp.path().join("a"));
    let b = all_files(&tmp.path().join("b"));
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn audit_is_reproducible_for_a_seed() {
    let tmp = TempDir::new().unwrap();
    let cfg = r#"{"k":[2],"samples":40}"#;
    assert!(lab(tmp.path(), &["maxmod-audit", "--out", "a", "--seed", "7"], Some(cfg)).status.success());
    assert!(lab(tmp.path(), &["maxmod-audit", "--out", "b", "--seed", "7"], Some(cfg)).status.success());
    assert_eq!(all_files(&tmp.path().join("a")), all_files(&tmp.path().join("b")));
    let doc = json(&tmp.path().join("a/maxmod_audit.json"));
    assert_eq!(doc["seed"], 7);
}

#[test]
fn every_file_carries_hash_and_seed() {
    let tmp = TempDir::new().unwrap();
    let cfg = r#"{"spec":"fig2","grid":{"x":[-5,2],"y":[-1.5,1.5],"nx":20,"ny":20},"seed":99}"#;
    for cmd in ["zeros", "discriminant", "ratio-field", "measure", "perron-sweep"] {
        let out = lab(tmp.path(), &[cmd, "--out", "o"], Some(cfg));
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let files = all_files(&tmp.path().join("o"));
    assert!(files.len() >= 8);
    for (name, body) in files {
        let text = String::from_utf8(body).unwrap();
        if name.ends_with(".json") {
            let v: Value = serde_json::from_str(&text).unwrap();
            assert_eq!(v["schema"], 1, "{name}");
            assert_eq!(v["seed"], 99, "{name}");
            assert_eq!(v["config_hash"].as_str().unwrap().len(), 64, "{name}");
        } else {
            let head = text.lines().next().unwrap();
            assert!(head.starts_with("# maxmod-lab ") && head.contains("config_hash=") && head.contains("seed=99"), "{name}: {head}");
        }
    }
}

#[test]
fn env_overrides_out_dir() {
    let tmp = TempDir::new().unwrap();
    let target = tmp.path().join("from_env");
    let out = Command::new(BIN)
        .current_dir(tmp.path())
        .env("MAXMOD_LAB_OUT", &target)
        .args(["perron-sweep", "--out", "ignored"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(target.join("sweep.json").exists());
    assert!(!tmp.path().join("ignored").exists());
}

#[test]
fn report_selected_criteria() {
    let tmp = TempDir::new().unwrap();
    let out = lab(tmp.path(), &["report", "--out", "o"], Some(r#"{"criteria":["case1_mass","fibonacci_ratio"]}"#));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&tmp.path().join("o/report.json"));
    let crit = doc["data"]["criteria"].as_array().unwrap();
    assert_eq!(crit.len(), 2);
    assert!(crit.iter().all(|c| c["passed"] == true));
    let mass = crit[0]["measured"]["fig2_mass"].as_f64().unwrap();
    assert!((mass - 25.0 / 16.0).abs() < 1e-8);
}

#[test]
fn report_fails_on_branch_point_count() {
    let tmp = TempDir::new().unwrap();
    let out = lab(tmp.path(), &["report", "--out", "o"], Some(r#"{"criteria":["branch_point_count"]}"#));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn report_rejects_unknown_criterion() {
    let tmp = TempDir::new().unwrap();
    let out = lab(tmp.path(), &["report"], Some(r#"{"criteria":["nope"]}"#));
    assert_eq!(out.status.code(), Some(2));
}
