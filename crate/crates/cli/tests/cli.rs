use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn ringlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlat")).args(args).output().expect("run ringlat")
}

fn ringlat_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlat"))
        .args(args)
        .env("RINGLAT_THREADS", threads)
        .output()
        .expect("run ringlat")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_truncated_example() {
    let r = json(&ringlat(&["analyze", path(&fixture("ex1_m2.json"))]));
    assert_eq!(r["pointwise"]["pw_extension"]["value"], "true");
    assert_eq!(r["pointwise"]["pw_pair"]["value"], "false");
    assert_eq!(r["case_label"]["label"], "a");
}

#[test]
fn analyze_split_cube() {
    let r = json(&ringlat(&["analyze", path(&fixture("f2_cubed.json"))]));
    for key in ["pw_extension", "pw_pair", "co_pw"] {
        assert_eq!(r["pointwise"][key]["value"], "true", "{key}");
        assert_eq!(r["pointwise"][key]["agree"], true, "{key}");
    }
    assert_eq!(r["case_label"]["label"], "b");
    assert_eq!((r["lattice"]["nodes"].as_u64(), r["lattice"]["atoms"].as_u64(), r["lattice"]["length"].as_u64()), (Some(5), Some(3), Some(2)));
}

#[test]
fn analyze_flags() {
    let r = json(&ringlat(&["analyze", "--no-lattice", path(&fixture("f2_cubed.json"))]));
    assert!(r["lattice"].is_null());
    let r = json(&ringlat(&["analyze", "--timings", path(&fixture("gf4_over_f2.json"))]));
    assert!(r["timings_ms"].is_array());
    assert_eq!(r["minimal_type"]["kind"], "inert");
}

#[test]
fn malformed_input_exits_2() {
    let out = ringlat(&["analyze", path(&fixture("malformed.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("commutative"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"id\": \"x\",\n  \"field\": \n}\n").unwrap();
    let out = ringlat(&["analyze", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    assert_eq!(ringlat(&["analyze", "/no/such/file.json"]).status.code(), Some(2));
}

#[test]
fn caps_exit_3() {
    let out = ringlat(&["analyze", "--scan-cap", "2", path(&fixture("f2_fourth.json"))]);
    assert_eq!(out.status.code(), Some(3));
    let out = ringlat(&["lattice", "--node-cap", "3", path(&fixture("f2_fourth.json"))]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn lattice_exports() {
    let out = ringlat(&["lattice", "--dot", path(&fixture("f2_cubed.json"))]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 5);

    let out = ringlat(&["lattice", path(&fixture("gf4_over_f2.json"))]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().matches("[label=").count(), 2);

    let j = json(&ringlat(&["lattice", "--json", path(&fixture("f2_fourth.json"))]));
    assert_eq!(j["nodes"].as_array().unwrap().len(), 15);

    let a = ringlat(&["lattice", "--dot", "--basis", path(&fixture("f2_fourth.json"))]);
    let b = ringlat(&["lattice", "--dot", "--basis", path(&fixture("f2_fourth.json"))]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lattice_rejects_infinite_fields() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ex5.json");
    assert!(ringlat(&["examples", "ex5", "-o", path(&f)]).status.success());
    assert_eq!(ringlat(&["lattice", path(&f)]).status.code(), Some(2));
}

#[test]
fn examples_round_trip() {
    let out = ringlat(&["examples", "list"]);
    let names = String::from_utf8(out.stdout).unwrap();
    assert!(names.lines().any(|l| l == "remark7151"));

    let j = json(&ringlat(&["examples", "ex2", "--m", "2"]));
    assert_eq!(j["dim"], 3);
    assert_eq!(j["expected"]["co_pw"], true);
    let j = json(&ringlat(&["examples", "ex5"]));
    assert_eq!(j["expected"]["case"], "d");
    let j = json(&ringlat(&["examples", "remark7151"]));
    assert_eq!(j["expected"]["pw"], false);

    assert_eq!(ringlat(&["examples", "ex9"]).status.code(), Some(2));

    // The stored fixture is exactly what the catalog emits.
    let out = ringlat(&["examples", "split", "--n", "3", "--q", "2"]);
    assert_eq!(out.stdout, std::fs::read(fixture("f2_cubed.json")).unwrap());
}

fn random_dir(seed: &str) -> (tempfile::TempDir, Vec<(String, Vec<u8>)>) {
    let dir = tempfile::tempdir().unwrap();
    let out = ringlat(&["random", "--seed", seed, "--count", "10", "--outdir", path(dir.path())]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    (dir, files)
}

#[test]
fn random_is_deterministic() {
    let (dir, a) = random_dir("1");
    let (_, b) = random_dir("1");
    assert_eq!(a.len(), 10);
    assert_eq!(a, b);
    let (_, c) = random_dir("2");
    assert_ne!(a, c);
    // Every file is a valid extension.
    for (name, _) in &a {
        assert!(ringlat(&["analyze", "--no-lattice", path(&dir.path().join(name))]).status.success(), "{name}");
    }
}

#[test]
fn verify_runs() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    let out = ringlat(&["verify", "--count", "0", "--certificates", path(&certs)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], 0);

    let args = ["verify", "--seed", "3", "--count", "12", "--builder", "5", "--certificates", path(&certs)];
    let one = ringlat_env(&args, "1");
    let four = ringlat_env(&args, "4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let s = json(&one);
    assert_eq!(s["count"], 12);
    assert_eq!(s["tallies"]["jacobson-builder"]["pass"], 5);
    assert!(!certs.exists());

    let out = ringlat(&["verify", "--catalog", "--certificates", path(&certs)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["tallies"]["catalog-expected"]["fail"], 0);
}
