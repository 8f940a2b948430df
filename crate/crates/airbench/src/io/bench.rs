//! A benchmark directory holds one dataset directory per split plus the
//! generation config and the digest of every split.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use airbench_core::model::{Dataset, Split};
use airbench_core::synthflow::{generate_sample, GenerationConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::json_digest;
use super::dataset::{dataset_digest, write_dataset};
use crate::error::{Error, Result};

pub const CONFIG_FILE: &str = "generation_config.json";
pub const DIGEST_FILE: &str = "digests.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchDigests {
    pub config: String,
    pub splits: BTreeMap<Split, String>,
}

pub fn split_dir(bench_dir: &Path, split: Split) -> PathBuf {
    bench_dir.join(split.name())
}

/// Generates and writes all three splits. Samples are drawn in parallel;
/// each depends only on its own seed, so the output does not depend on
/// scheduling.
pub fn generate_benchmark(config: &GenerationConfig, bench_dir: &Path) -> Result<BenchDigests> {
    config.validate()?;
    let config_digest = json_digest(config);
    let mut splits = BTreeMap::new();
    for split in Split::ALL {
        let samples = (0..config.count(split))
            .into_par_iter()
            .map(|i| generate_sample(config, split, i))
            .collect::<Result<Vec<_>, _>>()?;
        let dataset = Dataset { split, samples, generation_config_digest: config_digest.clone() };
        write_dataset(&dataset, &split_dir(bench_dir, split))?;
        splits.insert(split, dataset_digest(&dataset));
        log::info!("wrote {} samples to {}", dataset.samples.len(), split_dir(bench_dir, split).display());
    }
    let digests = BenchDigests { config: config_digest, splits };
    write_pretty(&bench_dir.join(CONFIG_FILE), config)?;
    write_pretty(&bench_dir.join(DIGEST_FILE), &digests)?;
    Ok(digests)
}

pub(crate) fn write_pretty<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("plain data always serializes");
    bytes.push(b'\n');
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}
