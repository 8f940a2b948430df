//! Running predictors against a benchmark directory and recording results.

mod benchmark;
mod inference;
mod leaderboard;
mod report;
mod spec;
mod training;

pub use benchmark::{evaluate_benchmark, run_benchmark, score_evaluation, BenchmarkOutcome, Evaluation, RunOptions};
pub use inference::{run_inference, run_inference_on, Event, Inference, InferenceOptions, Observer, Runner, TimingMode};
pub use leaderboard::{
    append_entry, default_store_path, leaderboard_list, now_ms, LeaderboardEntry, DEFAULT_STORE, STORE_ENV,
};
pub use report::render_report;
pub use spec::{Builtin, PredictorKind, PredictorSpec, TrainingSpec};
pub use training::{run_training, TrainingOutcome, BUDGET_EXCEEDED};
