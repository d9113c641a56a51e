//! End-to-end tests of the command-line interface: subcommands, exit codes,
//! and byte-identical reports across runs and thread counts.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn rvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rvlab"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const TINY_CONFIG: &str = r#"
name = "tiny_pareto"
analysis = "tail_index"
seed = 42
n = 4000
alpha = 1.0

[generator]
kind = "pareto"
alpha = 1.0

[modulus]
kind = { kind = "norm", p = 2.0 }
scaling = { kind = "linear" }
"#;

#[test]
fn list_names_every_bundled_experiment() {
    let out = rvlab(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["moduli2_ladder", "breiman_uniform", "frechet_mda", "hull_set_pipeline"] {
        assert!(text.contains(name), "list output missing {name}:\n{text}");
    }
}

#[test]
fn validate_accepts_good_and_rejects_bad_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.toml");
    fs::write(&good, TINY_CONFIG).unwrap();
    let out = rvlab(&["validate", "--config", good.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("ok: tiny_pareto (tail_index)"));

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, TINY_CONFIG.replace("seed = 42", "")).unwrap();
    let out = rvlab(&["validate", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("'seed'"), "{}", stderr(&out));

    let out = rvlab(&["validate", "--name", "not_a_bundle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not_a_bundle"));
}

fn run_into(config: &Path, out_dir: &Path, extra: &[&str]) -> Output {
    let mut args =
        vec!["run", "--config", config.to_str().unwrap(), "--out-dir", out_dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    rvlab(&args)
}

#[test]
fn run_reports_are_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("tiny.toml");
    fs::write(&config, TINY_CONFIG).unwrap();

    let d1 = dir.path().join("a");
    let d2 = dir.path().join("b");
    let d3 = dir.path().join("c");
    for (d, extra) in
        [(&d1, &[][..]), (&d2, &[][..]), (&d3, &["--threads", "2"][..])]
    {
        let out = run_into(&config, d, extra);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(stdout(&out).contains("[PASS]"), "{}", stdout(&out));
    }
    let json = fs::read(d1.join("tiny_pareto.json")).unwrap();
    assert_eq!(json, fs::read(d2.join("tiny_pareto.json")).unwrap());
    assert_eq!(json, fs::read(d3.join("tiny_pareto.json")).unwrap());
    let csv = fs::read(d1.join("tiny_pareto.csv")).unwrap();
    assert_eq!(csv, fs::read(d2.join("tiny_pareto.csv")).unwrap());
    assert_eq!(csv, fs::read(d3.join("tiny_pareto.csv")).unwrap());

    // The JSON embeds the provenance triple: config hash, seed, version.
    let report: serde_json::Value = serde_json::from_slice(&json).unwrap();
    assert_eq!(report["seed"], 42);
    assert_eq!(report["config_sha256"].as_str().unwrap().len(), 64);
    assert!(report["version"].is_string());
}

#[test]
fn seed_override_is_recorded_in_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("tiny.toml");
    fs::write(&config, TINY_CONFIG).unwrap();
    let out = run_into(&config, dir.path(), &["--seed-override", "999"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("tiny_pareto.json")).unwrap()).unwrap();
    assert_eq!(report["seed"], 999);
}

#[test]
fn statistical_preconditions_fail_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("starved.toml");
    // A deep level with almost no exceedances: structural config is fine,
    // the statistics are not.
    fs::write(
        &config,
        r#"
name = "starved"
analysis = "conditional_limit"
seed = 1
n = 2000
t_ladder = [1000.0]

[generator]
kind = "pareto_pair_iid"

[modulus]
kind = { kind = "max_abs_coord" }
scaling = { kind = "linear" }

[[probes]]
label = "|x1| > 1"
level = 1.0

[probes.tau]
kind = { kind = "coord_abs", index = 0 }
scaling = { kind = "linear" }
"#,
    )
    .unwrap();
    let out = run_into(&config, dir.path(), &[]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("insufficient"), "{}", stderr(&out));
}

#[test]
fn dump_samples_is_a_deterministic_prefix_stream() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("tiny.toml");
    fs::write(&config, TINY_CONFIG).unwrap();

    let five = rvlab(&["dump-samples", "--config", config.to_str().unwrap(), "--count", "5"]);
    let ten = rvlab(&["dump-samples", "--config", config.to_str().unwrap(), "--count", "10"]);
    assert!(five.status.success() && ten.status.success());
    let five_lines: Vec<_> = stdout(&five).lines().map(str::to_owned).collect();
    let ten_lines: Vec<_> = stdout(&ten).lines().map(str::to_owned).collect();
    assert_eq!(five_lines.len(), 5);
    assert_eq!(ten_lines.len(), 10);
    assert_eq!(five_lines[..], ten_lines[..5], "sample stream is not prefix-stable");
    for line in &ten_lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["kind"], "vector");
    }

    // Writing to a file produces the same bytes as stdout.
    let out_file = dir.path().join("samples.jsonl");
    let out = rvlab(&[
        "dump-samples",
        "--config",
        config.to_str().unwrap(),
        "--count",
        "5",
        "--out",
        out_file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read(out_file).unwrap(), five.stdout);
}
