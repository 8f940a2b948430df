//! Reference predictors: an oracle echoing the truth, a per-channel constant
//! and a k-nearest-neighbour field transfer.

pub mod kdtree;
mod knn;

use alloc::format;
use alloc::string::String;

use crate::model::{Channel, Dataset, FieldSet, Sample};
use crate::{Error, Result};

pub use knn::{knn_fit, knn_predict, KnnModel, Weighting, FEATURES};

/// Anything that maps a sample's inputs to predicted fields.
pub trait Predictor {
    fn name(&self) -> String;
    fn predict(&self, sample: &Sample) -> FieldSet;
}

/// Returns the ground truth; perfect accuracy by construction.
#[derive(Clone, Copy, Debug, Default)]
pub struct Oracle;

pub fn oracle_predict(sample: &Sample) -> FieldSet {
    sample.truth_fields.clone()
}

impl Predictor for Oracle {
    fn name(&self) -> String {
        "oracle".into()
    }

    fn predict(&self, sample: &Sample) -> FieldSet {
        oracle_predict(sample)
    }
}

/// Node-pooled mean of each output channel over a training split.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelMeans(pub [f64; 4]);

impl ChannelMeans {
    pub fn fit(train: &Dataset) -> Result<Self> {
        let mut sums = [0.0; 4];
        let mut count = 0usize;
        for s in &train.samples {
            for (k, ch) in Channel::ALL.into_iter().enumerate() {
                sums[k] += s.truth_fields.channel(ch).iter().sum::<f64>();
            }
            count += s.node_count();
        }
        if count == 0 {
            return Err(Error::Fit(format!("training split `{}` has no nodes", train.split)));
        }
        Ok(ChannelMeans(sums.map(|v| v / count as f64)))
    }
}

pub fn constant_predict(stats: &ChannelMeans, sample: &Sample) -> FieldSet {
    FieldSet::uniform(sample.node_count(), stats.0)
}

impl Predictor for ChannelMeans {
    fn name(&self) -> String {
        "constant".into()
    }

    fn predict(&self, sample: &Sample) -> FieldSet {
        constant_predict(self, sample)
    }
}
