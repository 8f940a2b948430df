//! Dataset directories: `manifest.json`, one `samples/<id>.csv` per sample
//! and a `samples/<id>.meta.json` sidecar for the non-tabular fields.
//!
//! Floats are written with 17 significant digits, which round-trips every
//! finite `f64` exactly. Encoding is canonical, so the digest of a dataset is
//! the SHA-256 of the bytes that would be written.

use std::fs;
use std::path::{Path, PathBuf};

use airbench_core::model::{AnalyticForces, Dataset, FieldSet, Sample, SampleMeta, Split, Vec2};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const MANIFEST: &str = "manifest.json";
pub const SAMPLE_DIR: &str = "samples";
pub const SAMPLE_HEADER: [&str; 10] = ["x", "y", "dist", "nx", "ny", "is_surf", "u_x", "u_y", "p_s", "nu_t"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub split: Split,
    pub generation_config_digest: String,
    pub samples: Vec<ManifestEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub id: String,
    pub csv: String,
    pub meta: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Sidecar {
    id: String,
    inlet_velocity: Vec2,
    surface_order: Vec<usize>,
    meta: SampleMeta,
    oracle: Option<AnalyticForces>,
}

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_float(s: &str) -> Option<f64> {
    s.trim().parse().ok()
}

/// Sample ids double as file names.
fn check_id(id: &str) -> Result<()> {
    let bad = id.is_empty() || id.starts_with('.') || id.chars().any(|c| matches!(c, '/' | '\\' | '\0'));
    if bad {
        return Err(airbench_core::Error::Validation { sample: id.into(), message: "id is not a valid file name".into() }.into());
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("plain data always serializes");
    out.push(b'\n');
    out
}

fn sample_csv(s: &Sample) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SAMPLE_HEADER).expect("in-memory write");
    for i in 0..s.node_count() {
        let p = s.positions[i];
        let n = s.normals[i];
        let f = s.truth_fields.row(i);
        let surf = if s.is_surface[i] { "1" } else { "0" };
        let mut row: Vec<String> = [p[0], p[1], s.distance[i], n[0], n[1]].into_iter().map(format_float).collect();
        row.push(surf.into());
        row.extend(f.into_iter().map(format_float));
        w.write_record(&row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Every file of the dataset as `(relative path, bytes)`, manifest first.
pub fn encode_dataset(dataset: &Dataset) -> Vec<(PathBuf, Vec<u8>)> {
    let mut entries = Vec::with_capacity(dataset.samples.len());
    let mut files = Vec::with_capacity(2 * dataset.samples.len() + 1);
    for s in &dataset.samples {
        let csv_rel = format!("{SAMPLE_DIR}/{}.csv", s.id);
        let meta_rel = format!("{SAMPLE_DIR}/{}.meta.json", s.id);
        let sidecar = Sidecar {
            id: s.id.clone(),
            inlet_velocity: s.inlet_velocity,
            surface_order: s.surface_order.clone(),
            meta: s.meta,
            oracle: s.oracle,
        };
        files.push((PathBuf::from(&csv_rel), sample_csv(s)));
        files.push((PathBuf::from(&meta_rel), to_json(&sidecar)));
        entries.push(ManifestEntry { id: s.id.clone(), csv: csv_rel, meta: meta_rel });
    }
    let manifest = Manifest {
        split: dataset.split,
        generation_config_digest: dataset.generation_config_digest.clone(),
        samples: entries,
    };
    files.insert(0, (PathBuf::from(MANIFEST), to_json(&manifest)));
    files
}

/// SHA-256 over the canonical encoding, hex encoded.
pub fn dataset_digest(dataset: &Dataset) -> String {
    let mut h = Sha256::new();
    for (path, bytes) in encode_dataset(dataset) {
        let name = path.to_string_lossy();
        h.update((name.len() as u64).to_le_bytes());
        h.update(name.as_bytes());
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(&bytes);
    }
    hex::encode(h.finalize())
}

/// Validates, then writes `dataset` under `dir`.
pub fn write_dataset(dataset: &Dataset, dir: &Path) -> Result<()> {
    for s in &dataset.samples {
        check_id(&s.id)?;
    }
    dataset.validate()?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    if !dataset.samples.is_empty() {
        let samples = dir.join(SAMPLE_DIR);
        fs::create_dir_all(&samples).map_err(|e| Error::io(&samples, e))?;
    }
    for (rel, bytes) in encode_dataset(dataset) {
        let path = dir.join(rel);
        fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::format(path, Some(e.line() as u64), e.to_string()))
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    let path = dir.join(MANIFEST);
    if !path.is_file() {
        return Err(Error::format(&path, None, "manifest not found"));
    }
    read_json(&path)
}

/// Opens a CSV file and checks its header row.
pub(crate) fn csv_reader(path: &Path, header: &[&str]) -> Result<csv::Reader<fs::File>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let found = r.headers().map_err(|e| csv_error(path, e))?;
    if found.iter().map(str::trim).ne(header.iter().copied()) {
        return Err(Error::format(path, Some(1), format!("expected header `{}`", header.join(","))));
    }
    Ok(r)
}

pub(crate) fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line());
    Error::format(path, line, e.to_string())
}

/// Parses one record of `width` floats, reporting the column on failure.
pub(crate) fn parse_row(path: &Path, record: &csv::StringRecord, header: &[&str]) -> Result<Vec<f64>> {
    let line = record.position().map(|p| p.line());
    if record.len() != header.len() {
        return Err(Error::format(path, line, format!("expected {} columns, found {}", header.len(), record.len())));
    }
    record
        .iter()
        .zip(header)
        .map(|(v, name)| parse_float(v).ok_or_else(|| Error::format(path, line, format!("{name}: `{v}` is not a number"))))
        .collect()
}

fn read_sample(dir: &Path, entry: &ManifestEntry) -> Result<Sample> {
    let csv_path = dir.join(&entry.csv);
    let meta_path = dir.join(&entry.meta);
    for p in [&csv_path, &meta_path] {
        if !p.is_file() {
            return Err(Error::format(dir.join(MANIFEST), None, format!("sample `{}`: missing file {}", entry.id, p.display())));
        }
    }
    let sidecar: Sidecar = read_json(&meta_path)?;
    if sidecar.id != entry.id {
        return Err(Error::format(&meta_path, None, format!("sidecar id `{}` does not match `{}`", sidecar.id, entry.id)));
    }
    let mut r = csv_reader(&csv_path, &SAMPLE_HEADER)?;
    let mut positions = Vec::new();
    let mut distance = Vec::new();
    let mut normals = Vec::new();
    let mut is_surface = Vec::new();
    let mut fields = FieldSet::default();
    for rec in r.records() {
        let rec = rec.map_err(|e| csv_error(&csv_path, e))?;
        let v = parse_row(&csv_path, &rec, &SAMPLE_HEADER)?;
        let surf = match rec[5].trim() {
            "1" => true,
            "0" => false,
            other => {
                let line = rec.position().map(|p| p.line());
                return Err(Error::format(&csv_path, line, format!("is_surf: `{other}` is not 0 or 1")));
            }
        };
        positions.push([v[0], v[1]]);
        distance.push(v[2]);
        normals.push([v[3], v[4]]);
        is_surface.push(surf);
        fields.push([v[6], v[7], v[8], v[9]]);
    }
    Ok(Sample {
        id: entry.id.clone(),
        positions,
        inlet_velocity: sidecar.inlet_velocity,
        distance,
        normals,
        is_surface,
        surface_order: sidecar.surface_order,
        truth_fields: fields,
        meta: sidecar.meta,
        oracle: sidecar.oracle,
    })
}

/// Reads and validates the dataset stored under `dir`.
pub fn read_dataset(dir: &Path) -> Result<Dataset> {
    let manifest = read_manifest(dir)?;
    let samples = manifest.samples.iter().map(|e| read_sample(dir, e)).collect::<Result<Vec<_>>>()?;
    let dataset = Dataset { split: manifest.split, samples, generation_config_digest: manifest.generation_config_digest };
    dataset.validate()?;
    Ok(dataset)
}
