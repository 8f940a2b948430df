use alloc::format;

use serde::{Deserialize, Serialize};

use crate::math;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Mae,
    Rmse,
}

/// Mean absolute or root-mean-square error between two equal-length vectors.
pub fn field_error(pred: &[f64], truth: &[f64], kind: ErrorKind) -> Result<f64> {
    if pred.len() != truth.len() {
        return Err(Error::Shape(format!("pred has {} values, truth has {}", pred.len(), truth.len())));
    }
    if pred.is_empty() {
        return Err(Error::Shape("field error needs at least one value".into()));
    }
    let mut acc = ErrorAccumulator::new(kind);
    acc.add(pred, truth, |_| true);
    Ok(acc.finish())
}

/// Pools absolute or squared errors over many samples, so the result is a
/// node-weighted mean over the whole split.
#[derive(Clone, Copy, Debug)]
pub struct ErrorAccumulator {
    kind: ErrorKind,
    sum: f64,
    count: usize,
}

impl ErrorAccumulator {
    pub fn new(kind: ErrorKind) -> Self {
        ErrorAccumulator { kind, sum: 0.0, count: 0 }
    }

    /// Adds nodes `i` with `keep(i)`. Lengths must already agree.
    pub fn add(&mut self, pred: &[f64], truth: &[f64], keep: impl Fn(usize) -> bool) {
        for (i, (&p, &t)) in pred.iter().zip(truth).enumerate() {
            if !keep(i) {
                continue;
            }
            let e = p - t;
            self.sum += match self.kind {
                ErrorKind::Mae => math::abs(e),
                ErrorKind::Rmse => e * e,
            };
            self.count += 1;
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// NaN when nothing was added.
    pub fn finish(&self) -> f64 {
        if self.count == 0 {
            return f64::NAN;
        }
        let mean = self.sum / self.count as f64;
        match self.kind {
            ErrorKind::Mae => mean,
            ErrorKind::Rmse => math::sqrt(mean),
        }
    }
}

/// Guard for near-zero reference values in relative errors.
pub const RELATIVE_ERROR_EPSILON: f64 = 1e-12;

/// Mean over pairs of `|pred − true| / max(|true|, ε)`.
pub fn mean_relative_error(pred: &[f64], truth: &[f64]) -> Result<f64> {
    if pred.len() != truth.len() {
        return Err(Error::Shape(format!("pred has {} values, truth has {}", pred.len(), truth.len())));
    }
    if pred.is_empty() {
        return Err(Error::Shape("relative error needs at least one pair".into()));
    }
    let sum: f64 = pred
        .iter()
        .zip(truth)
        .map(|(&p, &t)| math::abs(p - t) / math::abs(t).max(RELATIVE_ERROR_EPSILON))
        .sum();
    Ok(sum / pred.len() as f64)
}
