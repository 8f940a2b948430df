//! JSON configuration files and their digests.

use std::path::Path;

use airbench_core::scoring::ScoringConfig;
use airbench_core::synthflow::GenerationConfig;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::dataset::read_json;
use crate::error::Result;

pub fn load_generation_config(path: &Path) -> Result<GenerationConfig> {
    let c: GenerationConfig = read_json(path)?;
    c.validate()?;
    Ok(c)
}

pub fn load_scoring_config(path: &Path) -> Result<ScoringConfig> {
    let c: ScoringConfig = read_json(path)?;
    c.validate()?;
    Ok(c)
}

/// SHA-256 of the compact JSON form of `value`, hex encoded.
pub fn json_digest<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("plain data always serializes");
    hex::encode(Sha256::digest(bytes))
}
