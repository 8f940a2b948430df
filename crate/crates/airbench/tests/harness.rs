use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use airbench::core::model::Split;
use airbench::core::scoring::ScoringConfig;
use airbench::core::synthflow::GenerationConfig;
use airbench::error::{Stage, EXIT_PREDICTOR};
use airbench::harness::{
    run_benchmark, run_inference, run_training, Builtin, Event, InferenceOptions, PredictorSpec, RunOptions, Runner,
    TrainingOutcome, TrainingSpec, BUDGET_EXCEEDED,
};
use airbench::io::{generate_benchmark, read_dataset, split_dir};
use airbench::Error;
use tempfile::TempDir;

fn bench(n: usize) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let c = GenerationConfig { n_train: n, n_test: n, n_ood: n, nodes_per_sample: 128, seed: 3, ..Default::default() };
    generate_benchmark(&c, dir.path()).unwrap();
    dir
}

fn bin() -> String {
    env!("CARGO_BIN_EXE_airbench").into()
}

fn sh(script: &str) -> Vec<String> {
    vec!["sh".into(), "-c".into(), script.into(), "sh".into()]
}

fn builtin(name: &str, bench: &Path) -> Runner {
    let train = read_dataset(&split_dir(bench, Split::Train)).unwrap();
    Runner::Builtin(Builtin::parse(name).unwrap().fit(&train).unwrap())
}

fn listing(dir: &Path) -> Vec<(String, Vec<u8>)> {
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
fn oracle_writes_one_file_per_sample() {
    let b = bench(5);
    let pred = b.path().join("pred");
    let r = run_inference(&builtin("oracle", b.path()), &split_dir(b.path(), Split::Test), &pred, &Default::default())
        .unwrap();
    assert!(r.seconds > 0.0);
    assert_eq!(r.predictions.len(), 5);
    assert_eq!(listing(&pred).len(), 5);
}

#[test]
fn builtin_predictions_are_byte_identical_across_runs() {
    let b = bench(3);
    let runner = builtin("knn:4", b.path());
    let test = split_dir(b.path(), Split::Test);
    for d in ["p1", "p2"] {
        run_inference(&runner, &test, &b.path().join(d), &Default::default()).unwrap();
    }
    assert_eq!(listing(&b.path().join("p1")), listing(&b.path().join("p2")));
}

#[test]
fn external_protocol_matches_builtin_output() {
    let b = bench(3);
    let test = split_dir(b.path(), Split::Test);
    let ext = Runner::External { command: vec![bin(), "predict".into(), "knn:2".into()], working_dir: None };
    let r = run_inference(&ext, &test, &b.path().join("ext"), &Default::default()).unwrap();
    assert!(r.seconds > 0.0);
    run_inference(&builtin("knn:2", b.path()), &test, &b.path().join("own"), &Default::default()).unwrap();
    assert_eq!(listing(&b.path().join("ext")), listing(&b.path().join("own")));
}

#[test]
fn missing_prediction_file_is_a_coverage_error_naming_the_id() {
    let b = bench(3);
    let script = format!("\"{}\" predict oracle \"$1\" \"$2\" && rm \"$2/test-0001.csv\"", bin());
    let ext = Runner::External { command: sh(&script), working_dir: None };
    match run_inference(&ext, &split_dir(b.path(), Split::Test), &b.path().join("pred"), &Default::default()) {
        Err(e @ Error::Coverage { .. }) => {
            let Error::Coverage { ids, .. } = &e else { unreachable!() };
            assert_eq!(ids, &["test-0001"]);
            assert_eq!(e.exit_code(), EXIT_PREDICTOR);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn short_prediction_is_a_coverage_error() {
    let b = bench(2);
    let script = format!(
        "\"{}\" predict oracle \"$1\" \"$2\" && head -n 5 \"$2/test-0000.csv\" > \"$2/t\" && mv \"$2/t\" \"$2/test-0000.csv\"",
        bin()
    );
    let ext = Runner::External { command: sh(&script), working_dir: None };
    match run_inference(&ext, &split_dir(b.path(), Split::Test), &b.path().join("pred"), &Default::default()) {
        Err(Error::Coverage { ids, detail }) => {
            assert_eq!(ids, ["test-0000"]);
            assert!(detail.contains("4 rows"), "{detail}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn failing_inference_command() {
    let b = bench(2);
    let ext = Runner::External { command: sh("exit 7"), working_dir: None };
    let e = run_inference(&ext, &split_dir(b.path(), Split::Test), &b.path().join("pred"), &Default::default());
    assert!(matches!(e, Err(Error::PredictorExit { stage: Stage::Inference, code: Some(7) })), "{e:?}");
}

fn recorder() -> (Arc<Mutex<Vec<Event>>>, InferenceOptions) {
    let events = Arc::new(Mutex::new(Vec::new()));
    let sink = events.clone();
    let options = InferenceOptions {
        repeat: 3,
        fixed_time_s: None,
        observer: Some(Arc::new(move |e| sink.lock().unwrap().push(e))),
    };
    (events, options)
}

/// No verification or metric work may happen while the timer runs.
fn assert_isolated(events: &[Event]) {
    let mut timing = false;
    for e in events {
        match e {
            Event::TimerStarted => {
                assert!(!timing, "nested timer in {events:?}");
                timing = true;
            }
            Event::TimerStopped => timing = false,
            other => assert!(!timing, "{other:?} inside the timed window: {events:?}"),
        }
    }
    assert!(!timing);
}

#[test]
fn timer_excludes_verification_and_metrics() {
    let b = bench(2);
    let (events, inference) = recorder();
    let options = RunOptions { inference, ..Default::default() };
    run_benchmark(&PredictorSpec::builtin("constant"), b.path(), &ScoringConfig::default(), &options).unwrap();
    let events = events.lock().unwrap().clone();
    assert_isolated(&events);
    // Three timed repetitions, then one verification and one metric pass, per split.
    let per_split = [
        Event::TimerStarted,
        Event::TimerStopped,
        Event::TimerStarted,
        Event::TimerStopped,
        Event::TimerStarted,
        Event::TimerStopped,
        Event::VerificationStarted,
        Event::VerificationFinished,
        Event::MetricsStarted,
        Event::MetricsFinished,
    ];
    assert_eq!(events, [per_split.clone(), per_split].concat());
}

#[test]
fn timer_isolation_for_external_predictors() {
    let b = bench(2);
    let (events, options) = recorder();
    let ext = Runner::External { command: vec![bin(), "predict".into(), "oracle".into()], working_dir: None };
    run_inference(&ext, &split_dir(b.path(), Split::OodTest), &b.path().join("pred"), &options).unwrap();
    assert_isolated(&events.lock().unwrap());
}

#[test]
fn training_outcomes() {
    let b = bench(1);
    let train = split_dir(b.path(), Split::Train);
    let mut spec = PredictorSpec::builtin("knn:1");
    assert_eq!(run_training(&spec, &train).unwrap(), TrainingOutcome::Trained { elapsed_s: 0.0 });

    spec.training = Some(TrainingSpec { command: sh("test -f \"$1/manifest.json\""), budget_s: 5.0, working_dir: None });
    assert!(matches!(run_training(&spec, &train).unwrap(), TrainingOutcome::Trained { .. }));

    spec.training = Some(TrainingSpec { command: sh("exit 3"), budget_s: 5.0, working_dir: None });
    let e = run_training(&spec, &train).unwrap_err();
    assert!(matches!(e, Error::PredictorExit { stage: Stage::Training, code: Some(3) }), "{e:?}");
    assert_eq!(e.exit_code(), EXIT_PREDICTOR);

    spec.training = Some(TrainingSpec { command: sh("sleep 30"), budget_s: 0.3, working_dir: None });
    match run_training(&spec, &train).unwrap() {
        TrainingOutcome::Rejected { reason, elapsed_s } => {
            assert_eq!(reason, BUDGET_EXCEEDED);
            assert!(elapsed_s < 5.0, "{elapsed_s}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn rejection_zeroes_a_perfect_predictor() {
    let b = bench(2);
    let mut spec = PredictorSpec::builtin("oracle");
    spec.training = Some(TrainingSpec { command: sh("sleep 30"), budget_s: 0.2, working_dir: None });
    let out = run_benchmark(&spec, b.path(), &ScoringConfig::default(), &RunOptions::default()).unwrap();
    assert_eq!(out.report.global, 0.0);
    assert_eq!(out.entry.rejection.as_deref(), Some(BUDGET_EXCEEDED));
    assert!(out.evaluation.metrics.splits.is_empty());
}

#[test]
fn oracle_with_capped_speedup_scores_one_and_with_unit_speedup_scores_0_825() {
    let b = bench(4);
    let run = |t: f64| {
        let options = RunOptions {
            inference: InferenceOptions { fixed_time_s: Some(t), ..Default::default() },
            ..Default::default()
        };
        run_benchmark(&PredictorSpec::builtin("oracle"), b.path(), &ScoringConfig::default(), &options).unwrap()
    };
    // 4 samples at 1500 s each per split.
    let capped = run(6000.0 / 10000.0);
    assert_eq!(capped.report.global, 1.0);
    assert_eq!(capped.entry.speedups.values().copied().collect::<Vec<_>>(), [10000.0, 10000.0]);
    let reference = run(6000.0);
    assert!((reference.report.global - 0.825).abs() < 1e-15, "{}", reference.report.global);
    assert_eq!((reference.report.ml.score, reference.report.ood.score), (0.75, 0.75));
}

#[test]
fn entry_pins_digests() {
    let b = bench(2);
    let out = run_benchmark(&PredictorSpec::builtin("constant"), b.path(), &ScoringConfig::default(), &RunOptions::default())
        .unwrap();
    let digests: serde_json::Value = serde_json::from_slice(&fs::read(b.path().join("digests.json")).unwrap()).unwrap();
    for split in Split::ALL {
        assert_eq!(out.entry.dataset_digests[&split], digests["splits"][split.name()].as_str().unwrap());
    }
    assert_eq!(out.entry.generation_config_digest, digests["config"].as_str().unwrap());
    assert_eq!(out.entry.scoring_config_digest.len(), 64);
}

#[test]
fn work_dir_keeps_predictions() {
    let b = bench(2);
    let work: PathBuf = b.path().join("work");
    let options = RunOptions { work_dir: Some(work.clone()), ..Default::default() };
    run_benchmark(&PredictorSpec::builtin("oracle"), b.path(), &ScoringConfig::default(), &options).unwrap();
    assert_eq!(listing(&work.join("test")).len(), 2);
    assert_eq!(listing(&work.join("ood_test")).len(), 2);
}
