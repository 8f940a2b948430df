//! Threshold grading and the weighted three-category score.
//!
//! Each criterion earns 0, 1 or 2 points against two thresholds. A category's
//! accuracy is its points over the maximum; ML and OOD add a log-scaled
//! speed-up term, physics does not. The global score is the weighted sum of
//! the three categories, or zero for a rejected run.

pub mod classify;
pub mod config;
pub mod score;

pub use classify::{classify, Classification, Direction, Grade, ThresholdSpec};
pub use config::{
    reference_thresholds, Category, CategoryThresholds, ScoringConfig, SolverTimeSource, DEFAULT_TRAINING_BUDGET_S,
};
pub use score::{
    accuracy_score, assemble_report, category_score, compute_speedup, global_score, score_category, score_metrics,
    speed_score, split_solver_time, CategoryReport, GradeCounts, ScoreReport,
};
