use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use airbench::error::{EXIT_PREDICTOR, EXIT_REJECTED, EXIT_VALIDATION};

fn airbench(args: &[&str], store: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_airbench")).args(args).env("AIRBENCH_STORE", store).output().unwrap()
}

fn generate(dir: &Path) -> String {
    let config = dir.join("gen.json");
    fs::write(&config, r#"{"n_train": 2, "n_test": 2, "n_ood": 2, "nodes_per_sample": 96}"#).unwrap();
    let bench = dir.join("bench");
    let out = airbench(&["generate", "--config", config.to_str().unwrap(), "--out", bench.to_str().unwrap()], &dir.join("s"));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    bench.to_str().unwrap().into()
}

#[test]
fn evaluate_then_score_matches_run() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("lb.jsonl");
    let bench = generate(dir.path());
    let metrics = dir.path().join("metrics.json");
    let out = airbench(&["evaluate", &bench, "--predictor", "constant", "--fixed-time", "2", "--out", metrics.to_str().unwrap()], &store);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let score = dir.path().join("score.json");
    let out = airbench(&["score", metrics.to_str().unwrap(), "--out", score.to_str().unwrap()], &store);
    assert!(out.status.success());
    let scored = String::from_utf8(out.stdout).unwrap();

    let run_dir = dir.path().join("run");
    let out = airbench(&["run", &bench, "--predictor", "constant", "--fixed-time", "2", "--out", run_dir.to_str().unwrap()], &store);
    assert!(out.status.success());
    assert_eq!(fs::read(&score).unwrap(), fs::read(run_dir.join("score.json")).unwrap());
    assert_eq!(fs::read_to_string(run_dir.join("report.txt")).unwrap(), scored);

    // The run appended to the store named by the environment.
    let out = airbench(&["leaderboard"], &store);
    let listing = String::from_utf8(out.stdout).unwrap();
    assert_eq!(listing.lines().count(), 1, "{listing}");
    assert!(listing.contains("constant"));
    let out = airbench(&["report", score.to_str().unwrap()], &store);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), scored);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("lb.jsonl");
    let bench = generate(dir.path());

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n_train": 0}"#).unwrap();
    let out = airbench(&["generate", "--config", bad.to_str().unwrap(), "--out", dir.path().join("x").to_str().unwrap()], &store);
    assert_eq!(out.status.code(), Some(EXIT_VALIDATION));

    let out = airbench(&["run", &bench, "--predictor", "knn:zero"], &store);
    assert_eq!(out.status.code(), Some(EXIT_VALIDATION));

    let out = airbench(&["run", &bench, "--external", "sh -c 'exit 9'"], &store);
    assert_eq!(out.status.code(), Some(EXIT_PREDICTOR));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exit code 9"));

    let out = airbench(
        &["run", &bench, "--predictor", "oracle", "--train-cmd", "sh -c 'sleep 30'", "--train-budget", "0.3", "--no-timestamp"],
        &store,
    );
    assert_eq!(out.status.code(), Some(EXIT_REJECTED));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("REJECTED: training budget exceeded"));
    let line = fs::read_to_string(&store).unwrap();
    assert!(line.contains("\"global\":0.0") && !line.contains("timestamp_ms"), "{line}");
}
