//! What to run: a builtin baseline or an external command, with an optional
//! training step.

use std::path::PathBuf;

use airbench_core::baselines::{knn_fit, ChannelMeans, Oracle, Predictor, Weighting};
use airbench_core::model::Dataset;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictorKind {
    /// `oracle`, `constant` or `knn:<k>`.
    Builtin(String),
    /// Invoked as `command… <dataset_dir> <pred_dir>`.
    External { command: Vec<String>, working_dir: Option<PathBuf> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainingSpec {
    /// Invoked as `command… <train_dir>`.
    pub command: Vec<String>,
    pub budget_s: f64,
    pub working_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictorSpec {
    pub kind: PredictorKind,
    pub training: Option<TrainingSpec>,
    pub label: String,
}

impl PredictorSpec {
    pub fn builtin(name: &str) -> Self {
        PredictorSpec { kind: PredictorKind::Builtin(name.into()), training: None, label: name.into() }
    }

    pub fn external(command: Vec<String>, label: &str) -> Self {
        PredictorSpec { kind: PredictorKind::External { command, working_dir: None }, training: None, label: label.into() }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.kind {
            PredictorKind::Builtin(name) => {
                Builtin::parse(name)?;
            }
            PredictorKind::External { command, .. } if command.is_empty() => {
                return Err(Error::Spec("external command is empty".into()));
            }
            PredictorKind::External { .. } => {}
        }
        if let Some(t) = &self.training {
            if t.command.is_empty() {
                return Err(Error::Spec("training command is empty".into()));
            }
            if !(t.budget_s > 0.0) {
                return Err(Error::Spec(format!("training budget must be positive, got {}", t.budget_s)));
            }
        }
        if self.label.is_empty() {
            return Err(Error::Spec("label is empty".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Oracle,
    Constant,
    Knn(usize),
}

impl Builtin {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "oracle" => Ok(Builtin::Oracle),
            "constant" => Ok(Builtin::Constant),
            _ => match name.strip_prefix("knn:").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 1 => Ok(Builtin::Knn(k)),
                _ => Err(Error::UnknownPredictor(name.into())),
            },
        }
    }

    pub fn fit(self, train: &Dataset) -> Result<Box<dyn Predictor + Sync>> {
        Ok(match self {
            Builtin::Oracle => Box::new(Oracle),
            Builtin::Constant => Box::new(ChannelMeans::fit(train)?),
            Builtin::Knn(k) => Box::new(knn_fit(train, k, Weighting::Inverse)?),
        })
    }
}
