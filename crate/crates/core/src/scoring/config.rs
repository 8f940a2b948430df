//! Weights, thresholds and speed settings for the three-category score.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::classify::ThresholdSpec;
use crate::math;
use crate::metrics::{Criterion, FieldCriteria};
use crate::{Error, Result};

pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;
/// Training wall-clock budget: 72 hours.
pub const DEFAULT_TRAINING_BUDGET_S: f64 = 72.0 * 3600.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    #[serde(rename = "ml")]
    Ml,
    #[serde(rename = "ood")]
    Ood,
    #[serde(rename = "physics")]
    Physics,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Ml, Category::Ood, Category::Physics];

    /// The criteria graded in this category.
    pub fn criteria(self) -> &'static [Criterion] {
        match self {
            Category::Ml => &Criterion::FIELDS,
            Category::Ood => &Criterion::ALL,
            Category::Physics => &Criterion::PHYSICS,
        }
    }

    /// Whether the category score carries a speed term.
    pub fn has_speed(self) -> bool {
        !matches!(self, Category::Physics)
    }

    pub fn label(self) -> &'static str {
        match self {
            Category::Ml => "ML-related",
            Category::Ood => "OOD generalization",
            Category::Physics => "Physics",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where the reference solver time of a split comes from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverTimeSource {
    /// Sum of each sample's `solver_time_s`.
    PerSampleSum,
    /// A fixed time per sample, times the number of samples.
    FixedPerSample(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryThresholds {
    pub ml: BTreeMap<Criterion, ThresholdSpec>,
    pub ood: BTreeMap<Criterion, ThresholdSpec>,
    pub physics: BTreeMap<Criterion, ThresholdSpec>,
}

impl CategoryThresholds {
    pub fn get(&self, category: Category) -> &BTreeMap<Criterion, ThresholdSpec> {
        match category {
            Category::Ml => &self.ml,
            Category::Ood => &self.ood,
            Category::Physics => &self.physics,
        }
    }
}

/// Threshold pairs of the reference airfoil configuration.
pub fn reference_thresholds() -> BTreeMap<Criterion, ThresholdSpec> {
    use Criterion::*;
    [
        (VelocityX, ThresholdSpec::min(0.1, 0.2)),
        (VelocityY, ThresholdSpec::min(0.1, 0.2)),
        (Pressure, ThresholdSpec::min(0.02, 0.1)),
        (TurbulentViscosity, ThresholdSpec::min(0.5, 1.0)),
        (SurfacePressure, ThresholdSpec::min(0.08, 0.2)),
        (Drag, ThresholdSpec::min(1.0, 10.0)),
        (Lift, ThresholdSpec::min(0.2, 0.5)),
        (SpearmanDrag, ThresholdSpec::max(0.5, 0.8)),
        (SpearmanLift, ThresholdSpec::max(0.94, 0.98)),
    ]
    .into_iter()
    .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoringConfig {
    pub alpha_ml: f64,
    pub alpha_ood: f64,
    pub alpha_ph: f64,
    pub alpha_a: f64,
    pub alpha_s: f64,
    pub speedup_max: f64,
    pub thresholds: CategoryThresholds,
    #[serde(default = "default_budget")]
    pub training_budget_s: f64,
    #[serde(default = "default_solver_time")]
    pub solver_time: SolverTimeSource,
    #[serde(default)]
    pub field_criteria: FieldCriteria,
    /// Reserved for a skin-friction force term; only `false` is supported.
    #[serde(default)]
    pub friction_term: bool,
}

fn default_budget() -> f64 {
    DEFAULT_TRAINING_BUDGET_S
}

fn default_solver_time() -> SolverTimeSource {
    SolverTimeSource::PerSampleSum
}

impl Default for ScoringConfig {
    /// α_ML = 0.4, α_OOD = 0.3, α_PH = 0.3, α_A = 0.75, α_S = 0.25,
    /// SpeedUpMax = 10000 and the reference thresholds in every category.
    fn default() -> Self {
        let all = reference_thresholds();
        let pick = |cat: Category| -> BTreeMap<Criterion, ThresholdSpec> {
            cat.criteria().iter().map(|c| (*c, all[c])).collect()
        };
        ScoringConfig {
            alpha_ml: 0.4,
            alpha_ood: 0.3,
            alpha_ph: 0.3,
            alpha_a: 0.75,
            alpha_s: 0.25,
            speedup_max: 10000.0,
            thresholds: CategoryThresholds {
                ml: pick(Category::Ml),
                ood: pick(Category::Ood),
                physics: pick(Category::Physics),
            },
            training_budget_s: DEFAULT_TRAINING_BUDGET_S,
            solver_time: SolverTimeSource::PerSampleSum,
            field_criteria: FieldCriteria::default(),
            friction_term: false,
        }
    }
}

impl ScoringConfig {
    pub fn validate(&self) -> Result<()> {
        let weights = [self.alpha_ml, self.alpha_ood, self.alpha_ph, self.alpha_a, self.alpha_s];
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::Config("weights must be finite and non-negative".into()));
        }
        let categories = self.alpha_ml + self.alpha_ood + self.alpha_ph;
        if math::abs(categories - 1.0) > WEIGHT_SUM_TOLERANCE {
            return Err(Error::Config(format!("alpha_ml + alpha_ood + alpha_ph = {categories}, expected 1")));
        }
        let inner = self.alpha_a + self.alpha_s;
        if math::abs(inner - 1.0) > WEIGHT_SUM_TOLERANCE {
            return Err(Error::Config(format!("alpha_a + alpha_s = {inner}, expected 1")));
        }
        if !(self.speedup_max > 1.0 && self.speedup_max.is_finite()) {
            return Err(Error::Config("speedup_max must exceed 1".into()));
        }
        if !(self.training_budget_s > 0.0) {
            return Err(Error::Config("training_budget_s must be positive".into()));
        }
        if let SolverTimeSource::FixedPerSample(t) = self.solver_time {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config("fixed solver time must be positive".into()));
            }
        }
        if self.friction_term {
            return Err(Error::Config("friction_term is reserved and not implemented".into()));
        }
        for cat in Category::ALL {
            let specs = self.thresholds.get(cat);
            let expected: Vec<Criterion> = cat.criteria().to_vec();
            let got: Vec<Criterion> = specs.keys().copied().collect();
            if got != expected {
                return Err(Error::Config(format!(
                    "{cat} thresholds must cover exactly {:?}, got {:?}",
                    names(&expected),
                    names(&got)
                )));
            }
            for (c, spec) in specs {
                spec.validate().map_err(|e| Error::Config(format!("{cat} / {c}: {e}")))?;
            }
        }
        self.field_criteria.validate()
    }
}

fn names(c: &[Criterion]) -> Vec<&'static str> {
    c.iter().map(|c| c.name()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        ScoringConfig::default().validate().unwrap();
    }

    #[test]
    fn weights_must_sum_to_one() {
        let c = ScoringConfig { alpha_ml: 0.5, ..Default::default() };
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        let c = ScoringConfig { alpha_s: 0.3, ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn criterion_sets_are_fixed() {
        let mut c = ScoringConfig::default();
        c.thresholds.physics.remove(&Criterion::SpearmanLift);
        assert!(c.validate().is_err());
        let mut c = ScoringConfig::default();
        c.thresholds.ml.insert(Criterion::Lift, ThresholdSpec::min(0.2, 0.5));
        assert!(c.validate().is_err());
    }

    #[test]
    fn friction_hook_is_reserved() {
        let c = ScoringConfig { friction_term: true, ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn speed_cap_must_exceed_one() {
        let c = ScoringConfig { speedup_max: 1.0, ..Default::default() };
        assert!(c.validate().is_err());
    }
}
