use std::collections::BTreeMap;
use std::fs;

use airbench::core::metrics::{Criterion, MetricsReport, Spearman, SplitMetrics};
use airbench::core::model::Split;
use airbench::core::scoring::{score_metrics, ScoreReport, ScoringConfig};
use airbench::harness::{append_entry, leaderboard_list, render_report, LeaderboardEntry, TimingMode};

fn entry(label: &str, global: f64, timestamp_ms: Option<u64>) -> LeaderboardEntry {
    let mut e = LeaderboardEntry::from_report(&ScoreReport::rejected("placeholder"), label, TimingMode::Loop);
    e.global = global;
    e.rejection = None;
    e.timestamp_ms = timestamp_ms;
    e
}

#[test]
fn missing_or_empty_store_lists_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("lb.jsonl");
    assert!(leaderboard_list(&store).unwrap().is_empty());
    fs::write(&store, "").unwrap();
    assert!(leaderboard_list(&store).unwrap().is_empty());
}

#[test]
fn ordered_by_score_then_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("lb.jsonl");
    append_entry(&store, &entry("FC", 0.3285, Some(10))).unwrap();
    append_entry(&store, &entry("OpenFOAM", 0.825, Some(20))).unwrap();
    append_entry(&store, &entry("late", 0.5, Some(300))).unwrap();
    append_entry(&store, &entry("early", 0.5, Some(100))).unwrap();
    let labels: Vec<String> = leaderboard_list(&store).unwrap().into_iter().map(|e| e.label).collect();
    assert_eq!(labels, ["OpenFOAM", "early", "late", "FC"]);
}

#[test]
fn appends_never_rewrite_existing_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("sub").join("lb.jsonl");
    assert_eq!(append_entry(&store, &entry("a", 0.1, None)).unwrap(), 0);
    let before = fs::read(&store).unwrap();
    let offset = append_entry(&store, &entry("b", 0.2, Some(1))).unwrap();
    let after = fs::read(&store).unwrap();
    assert_eq!(offset, before.len() as u64);
    assert_eq!(&after[..before.len()], &before[..]);
    assert_eq!(after.iter().filter(|&&b| b == b'\n').count(), 2);
}

#[test]
fn corrupt_lines_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("lb.jsonl");
    append_entry(&store, &entry("good", 0.4, Some(1))).unwrap();
    let mut text = fs::read_to_string(&store).unwrap();
    text.push_str("{\"label\": \"half");
    fs::write(&store, &text).unwrap();
    // The truncated line stays intact and the next entry starts on its own line.
    let offset = append_entry(&store, &entry("next", 0.6, Some(2))).unwrap();
    assert_eq!(offset, text.len() as u64 + 1);
    let labels: Vec<String> = leaderboard_list(&store).unwrap().into_iter().map(|e| e.label).collect();
    assert_eq!(labels, ["next", "good"]);
}

fn split(values: [f64; 9], n: usize, inference: f64) -> SplitMetrics {
    let mut field_errors = BTreeMap::new();
    for (c, v) in Criterion::FIELDS.into_iter().zip(values) {
        field_errors.insert(c, v);
    }
    SplitMetrics {
        n_samples: n,
        field_errors,
        c_d_rel_err: values[5],
        c_l_rel_err: values[6],
        spearman_d: Spearman { rho: values[7], degenerate: false },
        spearman_l: Spearman { rho: values[8], degenerate: false },
        total_inference_time_s: inference,
        total_solver_time_s: 1500.0 * n as f64,
    }
}

fn report(test: [f64; 9], ood: [f64; 9], inference: f64) -> ScoreReport {
    let mut m = MetricsReport::default();
    m.splits.insert(Split::Test, split(test, 10, inference));
    m.splits.insert(Split::OodTest, split(ood, 10, inference));
    score_metrics(&m, &ScoringConfig::default()).unwrap()
}

#[test]
fn perfect_report_renders_all_great() {
    let perfect = [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0];
    let text = render_report(&report(perfect, perfect, 1e-3));
    assert!(text.ends_with("global score: 100.0%\n"), "{text}");
    assert!(!text.contains(" U ") && !text.contains(" A "), "{text}");
    assert_eq!(text.matches('G').count(), 18, "{text}");
}

#[test]
fn worksheet_report_shows_ml_markers() {
    let test = [0.208965, 0.144508, 0.193066, 0.277285, 0.425576, 16.345740, 0.365903, -0.043079, 0.957070];
    let ood = [0.322766, 0.199635, 0.333169, 0.431288, 0.805426, 21.793367, 0.711271, -0.043979, 0.917206];
    let r = report(test, ood, 15000.0 / 750.0);
    assert_eq!(r.ml.markers(), "U A U G U");
    let text = render_report(&r);
    let ml_row = text.lines().find(|l| l.starts_with("ML")).unwrap();
    let cells: Vec<&str> = ml_row.split_whitespace().skip(1).take(5).collect();
    assert_eq!(cells, ["U", "A", "U", "G", "U"]);
    assert!(text.contains("750.0"), "{text}");
    // Rendering is a pure function of the report.
    assert_eq!(text, render_report(&r));
}

#[test]
fn rejected_report_has_banner_and_zero() {
    let text = render_report(&ScoreReport::rejected("training budget exceeded"));
    assert!(text.starts_with("REJECTED: training budget exceeded\n"), "{text}");
    assert!(text.ends_with("global score: 0.0%\n"), "{text}");
}
