//! Per-split assembly of every raw criterion value.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::criteria::{Criterion, FieldCriteria, NodeSubset};
use super::field::{mean_relative_error, ErrorAccumulator};
use super::forces::SurfaceContour;
use super::spearman::{spearman, Spearman};
use crate::model::{Dataset, Prediction, Sample, Split};
use crate::{Error, Result};

/// True and predicted force coefficients, one entry per sample.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSeries {
    pub sample_ids: Vec<String>,
    pub drag_true: Vec<f64>,
    pub drag_pred: Vec<f64>,
    pub lift_true: Vec<f64>,
    pub lift_pred: Vec<f64>,
}

/// Force coefficients from truth and from prediction, through the same
/// post-treatment. `predictions[i]` must belong to `dataset.samples[i]`.
pub fn coefficient_series(dataset: &Dataset, predictions: &[Prediction]) -> Result<CoefficientSeries> {
    let pairs: Vec<(&Sample, &Prediction)> = align_positional(dataset, predictions)?;
    series_of(&pairs)
}

fn align_positional<'a>(dataset: &'a Dataset, predictions: &'a [Prediction]) -> Result<Vec<(&'a Sample, &'a Prediction)>> {
    let mut out = Vec::with_capacity(dataset.samples.len());
    for (i, sample) in dataset.samples.iter().enumerate() {
        match predictions.get(i) {
            Some(p) if p.sample_id == sample.id => out.push((sample, p)),
            _ => return Err(Error::Coverage(sample.id.clone())),
        }
    }
    if let Some(extra) = predictions.get(dataset.samples.len()) {
        return Err(Error::Coverage(extra.sample_id.clone()));
    }
    Ok(out)
}

fn series_of(pairs: &[(&Sample, &Prediction)]) -> Result<CoefficientSeries> {
    let mut s = CoefficientSeries::default();
    for (sample, pred) in pairs {
        pred.check_shape(sample)?;
        let contour = SurfaceContour::from_sample(sample)?;
        let truth = contour.coefficients(&sample.truth_fields.p_s);
        let guess = contour.coefficients(&pred.fields.p_s);
        s.sample_ids.push(sample.id.clone());
        s.drag_true.push(truth.c_d);
        s.drag_pred.push(guess.c_d);
        s.lift_true.push(truth.c_l);
        s.lift_pred.push(guess.c_l);
    }
    Ok(s)
}

/// Raw criterion values for one split.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitMetrics {
    pub n_samples: usize,
    #[serde(with = "crate::serde_real::map")]
    pub field_errors: BTreeMap<Criterion, f64>,
    #[serde(with = "crate::serde_real")]
    pub c_d_rel_err: f64,
    #[serde(with = "crate::serde_real")]
    pub c_l_rel_err: f64,
    pub spearman_d: Spearman,
    pub spearman_l: Spearman,
    pub total_inference_time_s: f64,
    pub total_solver_time_s: f64,
}

impl SplitMetrics {
    /// Raw value of any of the nine criteria.
    pub fn value(&self, c: Criterion) -> f64 {
        match c {
            Criterion::Drag => self.c_d_rel_err,
            Criterion::Lift => self.c_l_rel_err,
            Criterion::SpearmanDrag => self.spearman_d.rho,
            Criterion::SpearmanLift => self.spearman_l.rho,
            field => self.field_errors.get(&field).copied().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub splits: BTreeMap<Split, SplitMetrics>,
    /// Set when the training phase was rejected; scoring then yields zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub training_rejection: Option<String>,
}

/// Spearman of a coefficient series; fewer than two samples or any
/// non-finite value collapse to the degenerate result.
fn series_spearman(truth: &[f64], pred: &[f64]) -> Result<Spearman> {
    let finite = truth.iter().chain(pred).all(|v| v.is_finite());
    if truth.len() < 2 || !finite {
        return Ok(Spearman { rho: 0.0, degenerate: true });
    }
    spearman(truth, pred)
}

/// Computes every criterion of one split. Predictions may come in any order
/// but must cover each sample exactly once. Samples are reduced in id order,
/// so the result does not depend on the order of either input.
pub fn evaluate_split(
    dataset: &Dataset,
    predictions: &[Prediction],
    criteria: &FieldCriteria,
    inference_time_s: f64,
) -> Result<SplitMetrics> {
    criteria.validate()?;
    if !(inference_time_s > 0.0 && inference_time_s.is_finite()) {
        return Err(Error::Parameter(format!("inference time must be positive, got {inference_time_s}")));
    }
    if dataset.samples.is_empty() {
        return Err(Error::Parameter(format!("split `{}` has no samples", dataset.split)));
    }
    let mut by_id: BTreeMap<&str, &Prediction> = BTreeMap::new();
    for p in predictions {
        if by_id.insert(p.sample_id.as_str(), p).is_some() {
            return Err(Error::Coverage(p.sample_id.clone()));
        }
    }
    let mut samples: Vec<&Sample> = dataset.samples.iter().collect();
    samples.sort_by(|a, b| a.id.cmp(&b.id));
    let mut pairs = Vec::with_capacity(samples.len());
    for s in samples {
        let p = by_id.remove(s.id.as_str()).ok_or_else(|| Error::Coverage(s.id.clone()))?;
        pairs.push((s, p));
    }
    if let Some((&extra, _)) = by_id.iter().next() {
        return Err(Error::Coverage(extra.into()));
    }

    let series = series_of(&pairs)?;

    let mut field_errors = BTreeMap::new();
    for (&criterion, def) in &criteria.0 {
        let mut acc = ErrorAccumulator::new(def.kind);
        for (sample, pred) in &pairs {
            let truth = sample.truth_fields.channel(def.channel);
            let guess = pred.fields.channel(def.channel);
            match def.subset {
                NodeSubset::All => acc.add(guess, truth, |_| true),
                NodeSubset::Surface => acc.add(guess, truth, |i| sample.is_surface[i]),
            }
        }
        field_errors.insert(criterion, acc.finish() / def.normalization);
    }

    Ok(SplitMetrics {
        n_samples: pairs.len(),
        field_errors,
        c_d_rel_err: mean_relative_error(&series.drag_pred, &series.drag_true)?,
        c_l_rel_err: mean_relative_error(&series.lift_pred, &series.lift_true)?,
        spearman_d: series_spearman(&series.drag_true, &series.drag_pred)?,
        spearman_l: series_spearman(&series.lift_true, &series.lift_pred)?,
        total_inference_time_s: inference_time_s,
        total_solver_time_s: dataset.total_solver_time(),
    })
}
