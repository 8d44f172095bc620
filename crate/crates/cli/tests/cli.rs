use std::process::{Command, Output};

fn qwmds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwmds"))
        .args(args)
        .env_remove("QWMDS_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn run_a2(cmd: &str, ell: &str, extra: &[&str]) -> Output {
    let mut args = vec![cmd, "--family", "A", "--rank", "2", "--ell", ell];
    args.extend_from_slice(extra);
    qwmds(&args)
}

#[test]
fn untwisted_numerators() {
    let out = run_a2("numerator", "0,0", &[]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 + x + y - x^2 y - x y^2 - x^2 y^2");
    let out = qwmds(&["numerator", "--family", "A", "--rank", "1", "--ell", "0"]);
    assert_eq!(stdout(&out).trim(), "1 + x1");
}

#[test]
fn json_output() {
    let out = run_a2("numerator", "2,1", &["--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rootSystem"], "A2");
    assert_eq!(v["monomials"], 14);
    assert_eq!(v["ell"], serde_json::json!([2, 1]));
}

#[test]
fn verify_passes_and_reports_perturbations() {
    let out = run_a2("verify", "2,2", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("7 checks, 0 failed"));

    let out = qwmds(&["verify", "--family", "A", "--rank", "3", "--ell", "1,0,1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = run_a2("verify", "2,2", &["--perturb", "2,2:1", "--checks", "fe,support"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("FAIL fe"));
    assert!(text.contains("lambda="));
}

#[test]
fn verify_reads_a_saved_numerator() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n.json");
    let out = run_a2("numerator", "1,2", &["--format", "json"]);
    std::fs::write(&path, &out.stdout).unwrap();
    let out = run_a2("verify", "1,2", &["--input", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.to_string().contains("\"passed\":true"));
    // Supplying it under the wrong twist is a configuration error.
    let out = run_a2("verify", "2,1", &["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solver_matches_numerator() {
    let solved = qwmds(&["solve-untwisted", "--family", "A", "--rank", "3"]);
    let direct = qwmds(&["numerator", "--family", "A", "--rank", "3", "--ell", "0,0,0"]);
    assert!(solved.status.success());
    assert_eq!(solved.stdout, direct.stdout);
    let out = qwmds(&["solve-untwisted", "--family", "A", "--rank", "2", "--ell", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn global_coefficients() {
    let args = ["global", "--family", "A", "--rank", "2", "--t", "1,1", "--bound", "9", "--format", "json"];
    let out = qwmds(&args);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let find = |v: &serde_json::Value, m: [u64; 2]| {
        v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["m"] == serde_json::json!(m))
            .cloned()
            .unwrap()
    };
    assert_eq!(find(&v, [3, 5])["H"], -1);
    assert_eq!(find(&v, [1, 3])["H"], 1);

    let mut twisted = args.to_vec();
    twisted.extend_from_slice(&["--char", "mod4,triv"]);
    let w: serde_json::Value = serde_json::from_slice(&qwmds(&twisted).stdout).unwrap();
    // psi_1(3) = -1 for the character mod 4.
    assert_eq!(find(&w, [3, 1])["Z"], -find(&v, [3, 1])["Z"].as_i64().unwrap());
    assert_eq!(find(&w, [1, 3])["Z"], find(&v, [1, 3])["Z"]);

    let csv = qwmds(&["global", "--family", "A", "--rank", "2", "--t", "3,1", "--bound", "5", "--format", "csv"]);
    assert!(stdout(&csv).starts_with("m1,m2,H,psi,residue,Z"));
}

#[test]
fn output_does_not_depend_on_threads() {
    let one = qwmds(&["--threads", "1", "numerator", "--family", "D", "--rank", "4", "--ell", "1,0,0,0", "--format", "json"]);
    let two = qwmds(&["--threads", "2", "numerator", "--family", "D", "--rank", "4", "--ell", "1,0,0,0", "--format", "json"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn exit_codes() {
    let out = qwmds(&["numerator", "--family", "B", "--rank", "2", "--ell", "0,0"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run_a2("numerator", "0,0,0", &[]);
    assert_eq!(out.status.code(), Some(3));
    let out = qwmds(&["--group-cap", "100", "numerator", "--family", "E", "--rank", "6", "--ell", "0,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(4));
    let out = qwmds(&["global", "--family", "A", "--rank", "2", "--t", "2,1", "--bound", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn support_file_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let support = dir.path().join("support.json");
    let out = run_a2("numerator", "2,2", &["--emit-support", support.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&support).unwrap()).unwrap();
    assert!(v.is_object());

    let cache = dir.path().join("cache");
    std::fs::create_dir(&cache).unwrap();
    let args = ["global", "--family", "A", "--rank", "2", "--t", "3,1", "--bound", "9"];
    let first = Command::new(env!("CARGO_BIN_EXE_qwmds"))
        .args(args)
        .env("QWMDS_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert!(first.status.success());
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    let second = Command::new(env!("CARGO_BIN_EXE_qwmds"))
        .args(args)
        .env("QWMDS_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn zeta_descriptor() {
    let out = qwmds(&["zeta", "--family", "A", "--rank", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["zetaFactors"].as_array().unwrap().len(), 3);
    assert_eq!(v["functionalEquations"].as_array().unwrap().len(), 2);
}
