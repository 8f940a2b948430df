//! Timed inference over one dataset directory.
//!
//! Builtins are timed around the prediction loop only; external commands
//! from process start to exit. Reading inputs happens before the timer starts
//! and writing or checking prediction files after it stops.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::Arc;
use std::time::Instant;

use airbench_core::baselines::Predictor;
use airbench_core::model::{Dataset, FieldSet, Prediction};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Stage};
use crate::io::{read_dataset, read_predictions, write_prediction};

/// Milestones of a run, reported to an [`Observer`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    TimerStarted,
    TimerStopped,
    VerificationStarted,
    VerificationFinished,
    MetricsStarted,
    MetricsFinished,
}

pub type Observer = Arc<dyn Fn(Event) + Send + Sync>;

pub(crate) fn notify(observer: &Option<Observer>, event: Event) {
    if let Some(o) = observer {
        o(event);
    }
}

/// How the inference time is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimingMode {
    /// Wall clock around the in-process prediction loop.
    Loop,
    /// Wall clock from process start to exit.
    Process,
    /// A fixed time supplied by the caller; the predictor still runs.
    Fixed,
}

#[derive(Clone, Default)]
pub struct InferenceOptions {
    /// Number of timed runs; the minimum is kept. Zero counts as one.
    pub repeat: u32,
    /// Report this many seconds per split instead of measuring.
    pub fixed_time_s: Option<f64>,
    pub observer: Option<Observer>,
}

/// A ready-to-run predictor.
pub enum Runner {
    Builtin(Box<dyn Predictor + Sync>),
    External { command: Vec<String>, working_dir: Option<PathBuf> },
}

impl Runner {
    pub fn timing_mode(&self) -> TimingMode {
        match self {
            Runner::Builtin(_) => TimingMode::Loop,
            Runner::External { .. } => TimingMode::Process,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Inference {
    pub seconds: f64,
    pub predictions: Vec<Prediction>,
}

/// The shortest measurable interval, so a speedup is always defined.
const MIN_SECONDS: f64 = 1e-9;

fn builtin_once(p: &(dyn Predictor + Sync), dataset: &Dataset, observer: &Option<Observer>) -> (f64, Vec<FieldSet>) {
    notify(observer, Event::TimerStarted);
    let start = Instant::now();
    let fields: Vec<FieldSet> = dataset.samples.iter().map(|s| p.predict(s)).collect();
    let seconds = start.elapsed().as_secs_f64();
    notify(observer, Event::TimerStopped);
    (seconds, fields)
}

fn external_once(
    command: &[String],
    working_dir: &Option<PathBuf>,
    dataset_dir: &Path,
    pred_dir: &Path,
    observer: &Option<Observer>,
) -> Result<f64> {
    let mut cmd = Command::new(&command[0]);
    cmd.args(&command[1..]).arg(dataset_dir).arg(pred_dir).stdin(Stdio::null());
    if let Some(dir) = working_dir {
        cmd.current_dir(dir);
    }
    notify(observer, Event::TimerStarted);
    let start = Instant::now();
    let status = cmd.status();
    let seconds = start.elapsed().as_secs_f64();
    notify(observer, Event::TimerStopped);
    let status = status.map_err(|source| Error::Spawn { command: command.join(" "), source })?;
    if !status.success() {
        return Err(Error::PredictorExit { stage: Stage::Inference, code: status.code() });
    }
    Ok(seconds)
}

fn absolute(path: &Path) -> Result<PathBuf> {
    std::path::absolute(path).map_err(|e| Error::io(path, e))
}

/// Runs `runner` on the dataset in `dataset_dir`, leaving one prediction
/// file per sample in `pred_dir`, and returns the timing together with the
/// predictions read back from disk.
pub fn run_inference(runner: &Runner, dataset_dir: &Path, pred_dir: &Path, options: &InferenceOptions) -> Result<Inference> {
    let dataset = read_dataset(dataset_dir)?;
    run_inference_on(runner, &dataset, dataset_dir, pred_dir, options)
}

/// [`run_inference`] for a dataset already read from `dataset_dir`.
pub fn run_inference_on(
    runner: &Runner,
    dataset: &Dataset,
    dataset_dir: &Path,
    pred_dir: &Path,
    options: &InferenceOptions,
) -> Result<Inference> {
    fs::create_dir_all(pred_dir).map_err(|e| Error::io(pred_dir, e))?;
    let observer = &options.observer;
    let mut best = f64::INFINITY;
    for _ in 0..options.repeat.max(1) {
        let seconds = match runner {
            Runner::Builtin(p) => {
                let (seconds, fields) = builtin_once(p.as_ref(), dataset, observer);
                for (s, f) in dataset.samples.iter().zip(&fields) {
                    write_prediction(pred_dir, &s.id, f)?;
                }
                seconds
            }
            Runner::External { command, working_dir } => {
                let (d, p) = (absolute(dataset_dir)?, absolute(pred_dir)?);
                external_once(command, working_dir, &d, &p, observer)?
            }
        };
        best = best.min(seconds);
    }
    notify(observer, Event::VerificationStarted);
    let predictions = read_predictions(dataset, pred_dir);
    notify(observer, Event::VerificationFinished);
    let seconds = options.fixed_time_s.unwrap_or(best).max(MIN_SECONDS);
    Ok(Inference { seconds, predictions: predictions? })
}
