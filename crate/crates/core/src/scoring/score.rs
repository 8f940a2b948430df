//! Category and global scores.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::classify::{Classification, Grade};
use super::config::{Category, ScoringConfig, SolverTimeSource};
use crate::math;
use crate::metrics::{Criterion, MetricsReport, SplitMetrics};
use crate::model::Split;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeCounts {
    pub great: u32,
    pub acceptable: u32,
    pub unacceptable: u32,
}

impl GradeCounts {
    pub fn from_grades(grades: impl IntoIterator<Item = Grade>) -> Self {
        let mut c = GradeCounts::default();
        for g in grades {
            match g {
                Grade::Great => c.great += 1,
                Grade::Acceptable => c.acceptable += 1,
                Grade::Unacceptable => c.unacceptable += 1,
            }
        }
        c
    }

    pub fn total(&self) -> u32 {
        self.great + self.acceptable + self.unacceptable
    }

    pub fn points(&self) -> u32 {
        2 * self.great + self.acceptable
    }
}

/// `(2·Ng + No) / (2·N)`.
pub fn accuracy_score(counts: GradeCounts) -> Result<f64> {
    let n = counts.total();
    if n == 0 {
        return Err(Error::Config("empty criterion set".into()));
    }
    Ok(counts.points() as f64 / (2 * n) as f64)
}

/// `min(log10(speedup) / log10(speedup_max), 1)`, floored at 0.
pub fn speed_score(speedup: f64, speedup_max: f64) -> Result<f64> {
    if !(speedup > 0.0) || speedup.is_nan() {
        return Err(Error::Parameter(format!("speedup must be positive, got {speedup}")));
    }
    if !(speedup_max > 1.0 && speedup_max.is_finite()) {
        return Err(Error::Parameter(format!("speedup_max must exceed 1, got {speedup_max}")));
    }
    let s = math::log10(speedup) / math::log10(speedup_max);
    Ok(s.clamp(0.0, 1.0))
}

/// Reference solver time over inference time.
pub fn compute_speedup(solver_time_s: f64, inference_time_s: f64) -> Result<f64> {
    if !(solver_time_s > 0.0 && solver_time_s.is_finite()) {
        return Err(Error::Parameter(format!("solver time must be positive, got {solver_time_s}")));
    }
    if !(inference_time_s > 0.0 && inference_time_s.is_finite()) {
        return Err(Error::Parameter(format!("inference time must be positive, got {inference_time_s}")));
    }
    Ok(solver_time_s / inference_time_s)
}

/// `alpha_a · accuracy + alpha_s · speed`.
pub fn category_score(accuracy: f64, speed: f64, alpha_a: f64, alpha_s: f64) -> f64 {
    alpha_a * accuracy + alpha_s * speed
}

/// `α_ML·ml + α_OOD·ood + α_PH·physics`.
pub fn global_score(ml: f64, ood: f64, physics: f64, config: &ScoringConfig) -> f64 {
    config.alpha_ml * ml + config.alpha_ood * ood + config.alpha_ph * physics
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CategoryReport {
    pub category: Category,
    pub classifications: Vec<Classification>,
    pub counts: GradeCounts,
    pub accuracy: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speedup: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speed: Option<f64>,
    pub score: f64,
}

impl CategoryReport {
    fn empty(category: Category) -> Self {
        CategoryReport {
            category,
            classifications: Vec::new(),
            counts: GradeCounts::default(),
            accuracy: 0.0,
            speedup: None,
            speed: None,
            score: 0.0,
        }
    }

    /// Grade markers in criterion order, e.g. `"U A U G U"`.
    pub fn markers(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.classifications.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push(c.grade.marker());
        }
        s
    }

    pub fn grade_of(&self, criterion: Criterion) -> Option<Grade> {
        self.classifications.iter().find(|c| c.criterion == criterion).map(|c| c.grade)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub ml: CategoryReport,
    pub ood: CategoryReport,
    pub physics: CategoryReport,
    pub global: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rejection: Option<String>,
}

impl ScoreReport {
    pub fn category(&self, c: Category) -> &CategoryReport {
        match c {
            Category::Ml => &self.ml,
            Category::Ood => &self.ood,
            Category::Physics => &self.physics,
        }
    }

    /// A report for a run rejected before producing metrics.
    pub fn rejected(reason: impl Into<String>) -> Self {
        ScoreReport {
            ml: CategoryReport::empty(Category::Ml),
            ood: CategoryReport::empty(Category::Ood),
            physics: CategoryReport::empty(Category::Physics),
            global: 0.0,
            rejection: Some(reason.into()),
        }
    }
}

/// Grades one category from raw values; `speedup` is ignored for physics.
pub fn score_category(
    category: Category,
    value_of: impl Fn(Criterion) -> f64,
    speedup: Option<f64>,
    config: &ScoringConfig,
) -> Result<CategoryReport> {
    let specs = config.thresholds.get(category);
    let classifications: Vec<Classification> = category
        .criteria()
        .iter()
        .map(|&c| {
            let spec = specs
                .get(&c)
                .ok_or_else(|| Error::Config(format!("{category}: no thresholds for `{c}`")))?;
            Ok(Classification::new(c, value_of(c), spec))
        })
        .collect::<Result<_>>()?;
    let counts = GradeCounts::from_grades(classifications.iter().map(|c| c.grade));
    let accuracy = accuracy_score(counts)?;
    let (speedup, speed, score) = if category.has_speed() {
        let speedup = speedup.ok_or_else(|| Error::Parameter(format!("{category}: speedup missing")))?;
        let speed = speed_score(speedup, config.speedup_max)?;
        (Some(speedup), Some(speed), category_score(accuracy, speed, config.alpha_a, config.alpha_s))
    } else {
        (None, None, accuracy)
    };
    Ok(CategoryReport { category, classifications, counts, accuracy, speedup, speed, score })
}

/// Combines three category reports; a rejection forces the global score to 0.
pub fn assemble_report(
    ml: CategoryReport,
    ood: CategoryReport,
    physics: CategoryReport,
    config: &ScoringConfig,
    rejection: Option<String>,
) -> ScoreReport {
    let global = match rejection {
        Some(_) => 0.0,
        None => global_score(ml.score, ood.score, physics.score, config),
    };
    ScoreReport { ml, ood, physics, global, rejection }
}

/// Reference solver time of a split under the configured source.
pub fn split_solver_time(split: &SplitMetrics, config: &ScoringConfig) -> f64 {
    match config.solver_time {
        SolverTimeSource::PerSampleSum => split.total_solver_time_s,
        SolverTimeSource::FixedPerSample(t) => t * split.n_samples as f64,
    }
}

/// Scores a metrics report: ML and physics from the test split, OOD from
/// the out-of-distribution split.
pub fn score_metrics(metrics: &MetricsReport, config: &ScoringConfig) -> Result<ScoreReport> {
    config.validate()?;
    let test = metrics.splits.get(&Split::Test);
    let ood = metrics.splits.get(&Split::OodTest);
    let (test, ood) = match (test, ood, &metrics.training_rejection) {
        (Some(t), Some(o), _) => (t, o),
        (_, _, Some(reason)) => return Ok(ScoreReport::rejected(reason.clone())),
        (None, _, None) => return Err(Error::Parameter("metrics lack the test split".into())),
        (_, None, None) => return Err(Error::Parameter("metrics lack the ood_test split".into())),
    };
    let speedup = |s: &SplitMetrics| compute_speedup(split_solver_time(s, config), s.total_inference_time_s);
    let ml = score_category(Category::Ml, |c| test.value(c), Some(speedup(test)?), config)?;
    let ood_report = score_category(Category::Ood, |c| ood.value(c), Some(speedup(ood)?), config)?;
    let physics = score_category(Category::Physics, |c| test.value(c), None, config)?;
    Ok(assemble_report(ml, ood_report, physics, config, metrics.training_rejection.clone()))
}
