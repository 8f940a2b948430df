use std::fs;
use std::path::{Path, PathBuf};

use airbench::core::scoring::ScoringConfig;
use airbench::core::synthflow::GenerationConfig;
use airbench::io::{load_generation_config, load_scoring_config};
use airbench::Error;

fn shipped(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

#[test]
fn shipped_configs_are_the_defaults() {
    assert_eq!(load_scoring_config(&shipped("scoring_default.json")).unwrap(), ScoringConfig::default());
    assert_eq!(load_generation_config(&shipped("generation_default.json")).unwrap(), GenerationConfig::default());
}

#[test]
fn partial_generation_config_fills_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.json");
    fs::write(&p, r#"{"n_train": 4, "seed": 9}"#).unwrap();
    let c = load_generation_config(&p).unwrap();
    assert_eq!((c.n_train, c.seed, c.n_test), (4, 9, 200));
}

#[test]
fn unknown_key_is_a_format_error_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.json");
    fs::write(&p, "{\n  \"n_train\": 4,\n  \"n_trian\": 5\n}").unwrap();
    match load_generation_config(&p) {
        Err(Error::Format { line: Some(3), message, .. }) => assert!(message.contains("n_trian"), "{message}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn overlapping_speed_ranges_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.json");
    fs::write(&p, r#"{"ood_u_inf": {"lo": 1.0, "hi": 1.5}}"#).unwrap();
    let e = load_generation_config(&p).unwrap_err();
    assert!(matches!(e, Error::Core(airbench::core::Error::Config(_))), "{e}");
    assert_eq!(e.exit_code(), airbench::error::EXIT_VALIDATION);
}

#[test]
fn scoring_weights_must_sum_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.json");
    let mut v: serde_json::Value = serde_json::to_value(ScoringConfig::default()).unwrap();
    v["alpha_ml"] = 0.5.into();
    fs::write(&p, v.to_string()).unwrap();
    assert!(matches!(load_scoring_config(&p), Err(Error::Core(airbench::core::Error::Config(_)))));
}
