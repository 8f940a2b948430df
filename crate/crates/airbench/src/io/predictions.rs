//! Prediction files: `<pred_dir>/<id>.csv` with header `u_x,u_y,p_s,nu_t`,
//! one row per node in the sample's order. Non-finite values are accepted
//! and graded downstream.

use std::fs;
use std::path::{Path, PathBuf};

use airbench_core::model::{Dataset, FieldSet, Prediction};

use super::dataset::{csv_error, csv_reader, format_float, parse_row};
use crate::error::{Error, Result};

pub const PREDICTION_HEADER: [&str; 4] = ["u_x", "u_y", "p_s", "nu_t"];

pub fn prediction_path(pred_dir: &Path, sample_id: &str) -> PathBuf {
    pred_dir.join(format!("{sample_id}.csv"))
}

pub fn encode_prediction(fields: &FieldSet) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(PREDICTION_HEADER).expect("in-memory write");
    for i in 0..fields.u_x.len() {
        w.write_record(fields.row(i).map(format_float)).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn write_prediction(pred_dir: &Path, sample_id: &str, fields: &FieldSet) -> Result<()> {
    let path = prediction_path(pred_dir, sample_id);
    fs::write(&path, encode_prediction(fields)).map_err(|e| Error::io(&path, e))
}

pub fn read_prediction_fields(path: &Path) -> Result<FieldSet> {
    let mut r = csv_reader(path, &PREDICTION_HEADER)?;
    let mut fields = FieldSet::default();
    for rec in r.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let v = parse_row(path, &rec, &PREDICTION_HEADER)?;
        fields.push([v[0], v[1], v[2], v[3]]);
    }
    Ok(fields)
}

/// Reads one prediction per sample of `dataset`. Every sample whose file is
/// missing, unreadable or of the wrong length is listed in the error.
pub fn read_predictions(dataset: &Dataset, pred_dir: &Path) -> Result<Vec<Prediction>> {
    let mut out = Vec::with_capacity(dataset.samples.len());
    let mut bad = Vec::new();
    let mut detail = String::new();
    for s in &dataset.samples {
        let path = prediction_path(pred_dir, &s.id);
        let checked = if path.is_file() {
            read_prediction_fields(&path).and_then(|fields| {
                let p = Prediction { sample_id: s.id.clone(), fields, inference_time_s: 0.0 };
                p.check_shape(s)?;
                Ok(p)
            })
        } else {
            Err(Error::format(&path, None, "file not found"))
        };
        match checked {
            Ok(p) => out.push(p),
            Err(e) => {
                if detail.is_empty() {
                    detail = e.to_string();
                }
                bad.push(s.id.clone());
            }
        }
    }
    if !bad.is_empty() {
        return Err(Error::Coverage { ids: bad, detail });
    }
    Ok(out)
}
