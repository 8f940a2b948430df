//! The full pipeline: training, inference on the test and OOD splits,
//! metrics, scores and the leaderboard entry.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use airbench_core::metrics::{evaluate_split, FieldCriteria, MetricsReport};
use airbench_core::model::{Dataset, Split};
use airbench_core::scoring::{score_metrics, ScoreReport, ScoringConfig};
use serde::{Deserialize, Serialize};

use super::inference::{notify, run_inference_on, Event, InferenceOptions, Runner, TimingMode};
use super::leaderboard::{append_entry, now_ms, LeaderboardEntry};
use super::spec::{Builtin, PredictorKind, PredictorSpec};
use super::training::{run_training, TrainingOutcome};
use crate::error::{Error, Result};
use crate::io::{dataset_digest, json_digest, read_dataset, split_dir};

#[derive(Clone, Default)]
pub struct RunOptions {
    pub inference: InferenceOptions,
    /// Where prediction files go, one sub-directory per split. A temporary
    /// directory is used when unset.
    pub work_dir: Option<PathBuf>,
    /// Leaderboard file to append to, if any.
    pub store: Option<PathBuf>,
    pub record_timestamp: bool,
}

/// Raw metrics of one predictor together with what they were computed on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub label: String,
    pub timing: TimingMode,
    pub generation_config_digest: String,
    pub dataset_digests: BTreeMap<Split, String>,
    pub metrics: MetricsReport,
}

#[derive(Clone, Debug)]
pub struct BenchmarkOutcome {
    pub evaluation: Evaluation,
    pub report: ScoreReport,
    pub entry: LeaderboardEntry,
}

fn load_splits(bench_dir: &Path) -> Result<BTreeMap<Split, Dataset>> {
    let mut out = BTreeMap::new();
    for split in Split::ALL {
        let d = read_dataset(&split_dir(bench_dir, split))?;
        if d.split != split {
            return Err(Error::format(split_dir(bench_dir, split).join("manifest.json"), None, format!("split is `{}`, expected `{split}`", d.split)));
        }
        out.insert(split, d);
    }
    Ok(out)
}

/// Training, inference and metrics. A training rejection is recorded in the
/// metrics and skips inference.
pub fn evaluate_benchmark(
    spec: &PredictorSpec,
    bench_dir: &Path,
    criteria: &FieldCriteria,
    options: &RunOptions,
) -> Result<Evaluation> {
    spec.validate()?;
    criteria.validate()?;
    let splits = load_splits(bench_dir)?;
    let digests: BTreeMap<Split, String> = splits.iter().map(|(&s, d)| (s, dataset_digest(d))).collect();
    let generation_config_digest = splits[&Split::Test].generation_config_digest.clone();
    let mut evaluation = Evaluation {
        label: spec.label.clone(),
        timing: TimingMode::Loop,
        generation_config_digest,
        dataset_digests: digests,
        metrics: MetricsReport::default(),
    };

    if let TrainingOutcome::Rejected { reason, .. } = run_training(spec, &split_dir(bench_dir, Split::Train))? {
        evaluation.metrics.training_rejection = Some(reason);
        return Ok(evaluation);
    }
    let runner = match &spec.kind {
        PredictorKind::Builtin(name) => Runner::Builtin(Builtin::parse(name)?.fit(&splits[&Split::Train])?),
        PredictorKind::External { command, working_dir } => {
            Runner::External { command: command.clone(), working_dir: working_dir.clone() }
        }
    };
    evaluation.timing = match options.inference.fixed_time_s {
        Some(_) => TimingMode::Fixed,
        None => runner.timing_mode(),
    };

    let temp;
    let work_dir = match &options.work_dir {
        Some(d) => d.clone(),
        None => {
            temp = tempfile::tempdir().map_err(|e| Error::io(std::env::temp_dir(), e))?;
            temp.path().to_path_buf()
        }
    };
    let observer = &options.inference.observer;
    for split in [Split::Test, Split::OodTest] {
        let dataset = &splits[&split];
        let pred_dir = work_dir.join(split.name());
        let inference =
            run_inference_on(&runner, dataset, &split_dir(bench_dir, split), &pred_dir, &options.inference)?;
        notify(observer, Event::MetricsStarted);
        let m = evaluate_split(dataset, &inference.predictions, criteria, inference.seconds)?;
        notify(observer, Event::MetricsFinished);
        evaluation.metrics.splits.insert(split, m);
    }
    Ok(evaluation)
}

/// Scores an evaluation and builds its leaderboard entry.
pub fn score_evaluation(evaluation: &Evaluation, scoring: &ScoringConfig) -> Result<(ScoreReport, LeaderboardEntry)> {
    let report = score_metrics(&evaluation.metrics, scoring)?;
    let mut entry = LeaderboardEntry::from_report(&report, &evaluation.label, evaluation.timing);
    entry.scoring_config_digest = json_digest(scoring);
    entry.generation_config_digest = evaluation.generation_config_digest.clone();
    entry.dataset_digests = evaluation.dataset_digests.clone();
    Ok((report, entry))
}

/// Runs the whole pipeline and appends the entry to `options.store`.
pub fn run_benchmark(
    spec: &PredictorSpec,
    bench_dir: &Path,
    scoring: &ScoringConfig,
    options: &RunOptions,
) -> Result<BenchmarkOutcome> {
    scoring.validate()?;
    let evaluation = evaluate_benchmark(spec, bench_dir, &scoring.field_criteria, options)?;
    let (report, mut entry) = score_evaluation(&evaluation, scoring)?;
    if options.record_timestamp {
        entry.timestamp_ms = Some(now_ms());
    }
    if let Some(store) = &options.store {
        append_entry(store, &entry)?;
    }
    Ok(BenchmarkOutcome { evaluation, report, entry })
}
