use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_affhecke");

fn affhecke(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("AFFHECKE_KL_CACHE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = affhecke(&all);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn spec_examples() {
    let (v, code) = json(&["--group", "GL2", "adm", "--mu", "1,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 3);

    let (v, code) = json(&["--group", "GL2", "verify-thm1", "--mu", "1,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let tau = v["result"]["elements"].as_array().unwrap().iter().find(|e| e["length"] == 0).unwrap();
    assert_eq!(tau["multiplicity"], "q + 1");

    let o = affhecke(&["--group", "SL2affine", "kl", "--x", "e", "--w", "s1 * s0 * s1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");

    let o = affhecke(&["--group", "GL2", "length", "--x", "t[1,0] * s1"]);
    assert_eq!(stdout(&o).trim(), "2");
    let o = affhecke(&["--group", "GL2", "length", "--x", "t[0,1] * s1"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| affhecke(args).status.code().unwrap();
    assert_eq!(code(&["--group", "GL2", "length", "--x", "e"]), 0);
    assert_eq!(code(&["length", "--x", "e"]), 2);
    assert_eq!(code(&["--group", "GL2", "frobnicate"]), 2);
    assert_eq!(code(&["--group", "GL2", "adm", "--mu", "0,1"]), 2);
    assert_eq!(code(&["--group", "GL2", "length", "--x", "t[1,0,0]"]), 2);
    assert_eq!(code(&["--group", "GL2", "length", "--x", "s1 * q"]), 3);
    assert_eq!(code(&["--group", "GL2", "adm", "--mu", "1,x"]), 3);
    assert_eq!(code(&["--group", "E9", "length", "--x", "e"]), 4);
    assert_eq!(code(&["--config", "/nonexistent/datum.toml", "length", "--x", "e"]), 4);
    assert_eq!(code(&["--group", "GL2", "sweep", "--max-len", "0"]), 2);

    let o = affhecke(&["--group", "GL2", "length", "--x", "s1 * q"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("position 5"));
}

#[test]
fn config_file_datum() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.toml");
    std::fs::write(&path, "name = \"A2\"\ncartan = [[2, -1], [-1, 2]]\nlattice = \"sc\"\n").unwrap();
    let p = path.to_str().unwrap();
    let o = affhecke(&["--config", p, "kl", "--x", "e", "--w", "s1 * s2 * s1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "1");

    std::fs::write(&path, "name = \"A2\"\ncartan = [[2, -1], [-1, 2]]\nflavour = 1\n").unwrap();
    assert_eq!(affhecke(&["--config", p, "length", "--x", "e"]).status.code(), Some(4));
}

#[test]
fn json_validates_against_schema() {
    let v = validator();
    let runs: &[&[&str]] = &[
        &["--group", "GL2", "length", "--x", "t[1,0]"],
        &["--group", "GL2", "word", "--x", "t[1,0]"],
        &["--group", "GL2", "bruhat", "--x", "omega(1)", "--y", "t[1,0]"],
        &["--group", "GL3", "adm", "--mu", "1,0,0"],
        &["--group", "GL3", "omega-set", "--mu", "2,1,0"],
        &["--group", "GL3", "weight-mult", "--mu", "2,1,0", "--lambda", "1,1,1"],
        &["--group", "SL3", "hecke-mul", "--x", "s1 * s2", "--y", "s2 * s0"],
        &["--group", "SL3", "inv", "--x", "s1 * s0"],
        &["--group", "SL2", "wakimoto", "--u", "s1", "--v", "s0"],
        &["--group", "GL2", "theta", "--lambda", "-1,1"],
        &["--group", "SL3", "kl", "--x", "e", "--w", "s1 * s2 * s0 * s1"],
        &["--group", "GL2", "kottwitz", "--mu", "2,0"],
        &["--group", "GL3", "verify-thm1", "--mu", "1,1,0"],
        &["--group", "GL2", "verify-thm2", "--u", "t[1,1]", "--v", "t[-1,0]"],
        &["--group", "SL2", "sweep"],
    ];
    for args in runs {
        let (out, code) = json(args);
        assert_eq!(code, 0, "{args:?}");
        let errors: Vec<String> = v.iter_errors(&out).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let bad = serde_json::json!({"command": "sweep", "group": "SL2", "pass": true, "result": {"max_len": 0}});
    assert!(!v.is_valid(&bad));
}

#[test]
fn table_and_json_agree() {
    for args in [
        vec!["--group", "GL2", "verify-thm1", "--mu", "2,1"],
        vec!["--group", "SL3", "verify-thm2", "--u", "s1 * s0", "--v", "s2"],
        vec!["--group", "GL2", "sweep", "--max-len", "2"],
    ] {
        let table = affhecke(&args);
        let (v, code) = json(&args);
        assert_eq!(table.status.code(), Some(code));
        let last = stdout(&table).lines().last().unwrap().to_string();
        assert_eq!(last == "PASS", v["pass"].as_bool().unwrap(), "{args:?}");
    }
}

#[test]
fn sweep_is_byte_identical() {
    let a = affhecke(&["--group", "GL3", "sweep", "--format", "json"]);
    let b = affhecke(&["--group", "GL3", "sweep", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn kl_cache_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("kl.json");
    let run = || {
        Command::new(BIN)
            .args(["--group", "SL3", "kl", "--x", "e", "--w", "s1 * s2 * s0 * s1 * s2 * s1"])
            .env("AFFHECKE_KL_CACHE", &cache)
            .output()
            .unwrap()
    };
    let cold = run();
    assert!(cache.exists());
    let warm = run();
    assert_eq!(cold.stdout, warm.stdout);
    let cached: Value = serde_json::from_str(&std::fs::read_to_string(&cache).unwrap()).unwrap();
    assert_eq!(cached["group"], "SL3");
    assert!(!cached["entries"].as_array().unwrap().is_empty());
}
