use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdl")).args(args).env_remove("RDL_THREADS").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_writes_specs() {
    let o = rdl(&["generate", "--scheme", "eg-upper-8-9"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["scheme"], "eg-upper-8-9");
    assert_eq!(v["num_colors"], 2);

    let v = stdout_json(&rdl(&["generate", "--scheme", "affine", "--q", "2"]));
    assert_eq!(v["num_colors"], 3);
    assert_eq!(v["directed"], false);
}

#[test]
fn generate_rejects_bad_parameters() {
    assert_eq!(code(&rdl(&["generate", "--scheme", "affine", "--q", "4"])), 2);
    assert_eq!(code(&rdl(&["generate", "--scheme", "affine"])), 2);
    assert_eq!(code(&rdl(&["generate", "--scheme", "no-such-scheme"])), 2);
    assert_eq!(code(&rdl(&["generate"])), 2);
}

#[test]
fn generated_files_carry_a_header_and_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let o = rdl(&["generate", "--scheme", "seeded-random", "--spec-seed", "9", "--materialize", "12", "--out", path_str(&spec)]);
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&spec).unwrap()).unwrap();
    for key in ["tool_version", "config_hash", "seed"] {
        assert!(doc["header"].get(key).is_some(), "missing {key}");
    }
    assert_eq!(doc["body"]["scheme"], "explicit");
    let o = rdl(&["analyze", "--spec", path_str(&spec), "--target", "path", "--n", "12"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["body"]["method"], "search");
}

#[test]
fn all_red_path_has_density_one() {
    let o = rdl(&["analyze", "--scheme", "all-red", "--target", "path", "--n", "300", "--expect-at-least", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["body"]["record"]["num"], 1);
    assert_eq!(v["body"]["record"]["den"], 1);
}

#[test]
fn strong_path_on_the_residue_example_stays_under_two_thirds() {
    let dir = tempfile::tempdir().unwrap();
    let o = rdl(&[
        "analyze", "--scheme", "eg-strong-2-3", "--target", "sud-path", "--n", "2187", "--out", path_str(dir.path()), "--recheck", "--expect-at-most", "0.6767",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["spec.json", "profile.csv", "witness.json", "trace.json"] {
        assert!(dir.path().join(f).exists(), "{f} not written");
    }
    let csv = fs::read_to_string(dir.path().join("profile.csv")).unwrap();
    assert!(csv.starts_with("# {\"tool_version\""));
    assert_eq!(csv.lines().nth(1), Some("checkpoint,value_num,value_den,flagged,value"));

    let spec = dir.path().join("spec.json");
    let ok = rdl(&["recheck", "--spec", path_str(&spec), "--trace", path_str(&dir.path().join("trace.json")), "--path", path_str(&dir.path().join("witness.json"))]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stdout));

    let wpath = dir.path().join("witness.json");
    let mut w: Value = serde_json::from_str(&fs::read_to_string(&wpath).unwrap()).unwrap();
    let verts = w["body"]["path"]["vertices"].as_array_mut().unwrap();
    verts[1] = verts[0].clone();
    fs::write(&wpath, serde_json::to_string(&w).unwrap()).unwrap();
    let bad = rdl(&["recheck", "--spec", path_str(&spec), "--path", path_str(&wpath)]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn component_witnesses_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let o = rdl(&["analyze", "--scheme", "seeded-random", "--spec-seed", "4", "--colors", "3", "--target", "component", "--n", "120", "--out", path_str(dir.path()), "--recheck"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("component.json").exists());
}

#[test]
fn directed_targets_need_directed_specs() {
    let o = rdl(&["analyze", "--scheme", "eg-upper-8-9", "--target", "directed-path", "--n", "10"]);
    assert_eq!(code(&o), 2);
    let o = rdl(&["analyze", "--scheme", "directed-residue-k", "--k", "5", "--target", "path", "--n", "10"]);
    assert_eq!(code(&o), 2);
    let o = rdl(&["analyze", "--scheme", "directed-residue-k", "--k", "5", "--target", "directed-path", "--pattern", "anti-directed", "--n", "40"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn directed_witnesses_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let o = rdl(&["analyze", "--scheme", "directed-residue-k", "--k", "3", "--target", "directed-path", "--pattern", "FFB", "--n", "9", "--out", path_str(dir.path()), "--recheck"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let w: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("witness.json")).unwrap()).unwrap();
    assert_eq!(w["body"]["path"]["pattern"], "FFB");
}

#[test]
fn analysis_output_is_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = rdl(&["analyze", "--scheme", "seeded-random", "--spec-seed", "17", "--target", "path", "--n", "3000", "--seed", "5", "--out", path_str(d.path())]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["spec.json", "profile.csv", "witness.json", "trace.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f} differs");
    }
}

#[test]
fn verify_runs_the_oracles() {
    let o = rdl(&["verify", "gg", "--n", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["body"]["oracle"]["extremal_value"], 5);

    let o = rdl(&["verify", "raynaud", "--n", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["body"]["oracle"]["extremal_value"], 3);

    let o = rdl(&["verify", "trichotomy", "--n", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["body"]["oracle"]["summary"]["instances"], 729);

    let o = rdl(&["--threads", "1", "verify", "bipartite3", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["body"]["sampled"], false);
}

#[test]
fn verify_rejects_oversized_runs() {
    assert_eq!(code(&rdl(&["verify", "gg", "--n", "12"])), 2);
    assert_eq!(code(&rdl(&["verify", "trichotomy", "--n", "7"])), 2);
    assert_eq!(code(&rdl(&["--budget", "1s", "verify", "gg", "--n", "7"])), 2);
}

#[test]
fn budget_switches_to_marked_sampling() {
    let o = rdl(&["--budget", "1s", "verify", "bipartite3", "--n", "6", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["body"]["sampled"], true);
    assert_eq!(v["body"]["oracle"]["instances"], 20000);
}

#[test]
fn experiments_write_bundles() {
    let dir = tempfile::tempdir().unwrap();
    let o = rdl(&["experiment", "criterion-3", "--out", path_str(dir.path())]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let bundle: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("bundle.json")).unwrap()).unwrap();
    assert_eq!(bundle["body"]["criteria"][0]["passed"], true);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("PASS criterion  3"));
    assert_eq!(code(&rdl(&["experiment", "criterion-14"])), 2);
    assert_eq!(code(&rdl(&["experiment", "nonsense"])), 2);
}

#[test]
fn exploratory_run_always_exits_zero() {
    let o = rdl(&["--budget", "0s", "experiment", "conjecture-89"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["body"]["exploratory"], true);
    assert_eq!(v["body"]["budget_exhausted"], true);
}
