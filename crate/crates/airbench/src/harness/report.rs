//! Plain-text rendering of a score report, one row per category with a
//! U/A/G cell per criterion.

use std::fmt::Write;

use airbench_core::metrics::Criterion;
use airbench_core::scoring::{Category, CategoryReport, ScoreReport};

const LABEL_WIDTH: usize = 20;
const CELL_WIDTH: usize = 6;

fn optional(v: Option<f64>, precision: usize) -> String {
    v.map(|x| format!("{x:.precision$}")).unwrap_or_else(|| "-".into())
}

fn row(out: &mut String, r: &CategoryReport) {
    let _ = write!(out, "{:<LABEL_WIDTH$}", r.category.label());
    for c in Criterion::ALL {
        let cell = r.grade_of(c).map(|g| g.marker().to_string()).unwrap_or_default();
        let _ = write!(out, "{cell:<CELL_WIDTH$}");
    }
    let (accuracy, score) = if r.classifications.is_empty() {
        ("-".to_string(), "-".to_string())
    } else {
        (format!("{:.4}", r.accuracy), format!("{:.4}", r.score))
    };
    let _ = writeln!(
        out,
        "{:>14}  {accuracy:>8}  {:>6}  {score:>6}",
        optional(r.speedup, 1),
        optional(r.speed, 4)
    );
}

/// Deterministic text table: criteria grades, speedups, sub-scores and the
/// global score as a percentage.
pub fn render_report(report: &ScoreReport) -> String {
    let mut out = String::new();
    if let Some(reason) = &report.rejection {
        let _ = writeln!(out, "REJECTED: {reason}");
    }
    let _ = write!(out, "{:<LABEL_WIDTH$}", "category");
    for c in Criterion::ALL {
        let _ = write!(out, "{:<CELL_WIDTH$}", c.name());
    }
    let _ = writeln!(out, "{:>14}  {:>8}  {:>6}  {:>6}", "speedup", "accuracy", "speed", "score");
    for c in [Category::Ml, Category::Ood, Category::Physics] {
        row(&mut out, report.category(c));
    }
    let _ = writeln!(out, "global score: {:.1}%", 100.0 * report.global);
    out
}
