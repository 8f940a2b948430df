use alloc::format;

use serde::{Deserialize, Serialize};

use crate::metrics::Criterion;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "min")]
    MinimizeBetter,
    #[serde(rename = "max")]
    MaximizeBetter,
}

/// Two thresholds splitting a criterion's range into three grades.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdSpec {
    pub t1: f64,
    pub t2: f64,
    pub direction: Direction,
}

impl ThresholdSpec {
    pub const fn min(t1: f64, t2: f64) -> Self {
        ThresholdSpec { t1, t2, direction: Direction::MinimizeBetter }
    }

    pub const fn max(t1: f64, t2: f64) -> Self {
        ThresholdSpec { t1, t2, direction: Direction::MaximizeBetter }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t1.is_finite() && self.t2.is_finite() && self.t1 < self.t2) {
            return Err(Error::Config(format!("thresholds must satisfy t1 < t2, got {} / {}", self.t1, self.t2)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grade {
    Unacceptable = 0,
    Acceptable = 1,
    Great = 2,
}

impl Grade {
    pub fn points(self) -> u32 {
        self as u32
    }

    /// One-letter marker used in text reports.
    pub fn marker(self) -> char {
        match self {
            Grade::Unacceptable => 'U',
            Grade::Acceptable => 'A',
            Grade::Great => 'G',
        }
    }
}

/// Grades `value` against `spec`.
///
/// Minimise: `v < t1` great, `t1 ≤ v < t2` acceptable, `v ≥ t2` unacceptable.
/// Maximise: `v > t2` great, `t1 < v ≤ t2` acceptable, `v ≤ t1` unacceptable.
/// Non-finite values are unacceptable.
pub fn classify(value: f64, spec: &ThresholdSpec) -> Grade {
    if !value.is_finite() {
        return Grade::Unacceptable;
    }
    match spec.direction {
        Direction::MinimizeBetter => {
            if value < spec.t1 {
                Grade::Great
            } else if value < spec.t2 {
                Grade::Acceptable
            } else {
                Grade::Unacceptable
            }
        }
        Direction::MaximizeBetter => {
            if value > spec.t2 {
                Grade::Great
            } else if value > spec.t1 {
                Grade::Acceptable
            } else {
                Grade::Unacceptable
            }
        }
    }
}

/// A graded criterion together with its raw value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub criterion: Criterion,
    #[serde(with = "crate::serde_real")]
    pub value: f64,
    pub grade: Grade,
    /// The raw value was NaN or infinite.
    #[serde(default, skip_serializing_if = "core::ops::Not::not")]
    pub non_finite: bool,
}

impl Classification {
    pub fn new(criterion: Criterion, value: f64, spec: &ThresholdSpec) -> Self {
        Classification { criterion, value, grade: classify(value, spec), non_finite: !value.is_finite() }
    }
}
