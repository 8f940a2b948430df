//! On-disk formats: datasets, predictions, configuration and benchmark
//! directories.

mod bench;
mod config;
mod dataset;
mod predictions;

pub use bench::{generate_benchmark, split_dir, BenchDigests, CONFIG_FILE, DIGEST_FILE};
pub use config::{json_digest, load_generation_config, load_scoring_config};
pub use dataset::{
    dataset_digest, encode_dataset, format_float, read_dataset, read_manifest, write_dataset, Manifest, ManifestEntry,
    MANIFEST, SAMPLE_DIR, SAMPLE_HEADER,
};
pub use predictions::{
    encode_prediction, prediction_path, read_prediction_fields, read_predictions, write_prediction, PREDICTION_HEADER,
};

