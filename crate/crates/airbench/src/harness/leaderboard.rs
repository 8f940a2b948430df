//! Append-only leaderboard: one JSON object per line, appended under an
//! exclusive file lock.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use airbench_core::metrics::Criterion;
use airbench_core::model::Split;
use airbench_core::scoring::{Category, Grade, ScoreReport};
use serde::{Deserialize, Serialize};

use super::inference::TimingMode;
use crate::error::{Error, Result};

pub const STORE_ENV: &str = "AIRBENCH_STORE";
pub const DEFAULT_STORE: &str = "leaderboard.jsonl";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeaderboardEntry {
    pub label: String,
    /// Milliseconds since the Unix epoch; absent when recording was disabled.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp_ms: Option<u64>,
    pub timing: TimingMode,
    pub scoring_config_digest: String,
    pub generation_config_digest: String,
    pub dataset_digests: BTreeMap<Split, String>,
    pub global: f64,
    pub ml: f64,
    pub ood: f64,
    pub physics: f64,
    pub classifications: BTreeMap<Category, BTreeMap<Criterion, Grade>>,
    pub speedups: BTreeMap<Category, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rejection: Option<String>,
}

impl LeaderboardEntry {
    pub fn from_report(report: &ScoreReport, label: &str, timing: TimingMode) -> Self {
        let mut classifications = BTreeMap::new();
        let mut speedups = BTreeMap::new();
        for c in [Category::Ml, Category::Ood, Category::Physics] {
            let r = report.category(c);
            classifications.insert(c, r.classifications.iter().map(|k| (k.criterion, k.grade)).collect());
            if let Some(s) = r.speedup {
                speedups.insert(c, s);
            }
        }
        LeaderboardEntry {
            label: label.into(),
            timestamp_ms: None,
            timing,
            scoring_config_digest: String::new(),
            generation_config_digest: String::new(),
            dataset_digests: BTreeMap::new(),
            global: report.global,
            ml: report.ml.score,
            ood: report.ood.score,
            physics: report.physics.score,
            classifications,
            speedups,
            rejection: report.rejection.clone(),
        }
    }
}

/// `$AIRBENCH_STORE`, or `leaderboard.jsonl` in the working directory.
pub fn default_store_path() -> PathBuf {
    std::env::var_os(STORE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_STORE))
}

pub fn now_ms() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// Appends one line and returns the byte offset it starts at.
pub fn append_entry(store: &Path, entry: &LeaderboardEntry) -> Result<u64> {
    if let Some(parent) = store.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let io = |e| Error::io(store, e);
    let mut file = OpenOptions::new().read(true).append(true).create(true).open(store).map_err(io)?;
    file.lock().map_err(io)?;
    let len = file.seek(SeekFrom::End(0)).map_err(io)?;
    let mut line = serde_json::to_string(entry).expect("plain data always serializes");
    line.push('\n');
    let mut offset = len;
    if len > 0 {
        // Never glue a new entry onto a truncated last line.
        let mut last = [0u8];
        file.seek(SeekFrom::Start(len - 1)).map_err(io)?;
        file.read_exact(&mut last).map_err(io)?;
        if last[0] != b'\n' {
            line.insert(0, '\n');
            offset += 1;
        }
    }
    file.write_all(line.as_bytes()).map_err(io)?;
    file.flush().map_err(io)?;
    file.unlock().map_err(io)?;
    Ok(offset)
}

/// All readable entries, best global score first; equal scores keep the
/// earlier timestamp first. Unparseable lines are skipped with a warning.
pub fn leaderboard_list(store: &Path) -> Result<Vec<LeaderboardEntry>> {
    let text = match fs::read_to_string(store) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::io(store, e)),
    };
    let mut entries: Vec<LeaderboardEntry> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .filter_map(|(i, l)| match serde_json::from_str(l) {
            Ok(e) => Some(e),
            Err(err) => {
                log::warn!("{}:{}: skipping unreadable entry: {err}", store.display(), i + 1);
                None
            }
        })
        .collect();
    entries.sort_by(|a, b| {
        b.global
            .total_cmp(&a.global)
            .then(a.timestamp_ms.unwrap_or(u64::MAX).cmp(&b.timestamp_ms.unwrap_or(u64::MAX)))
    });
    Ok(entries)
}
