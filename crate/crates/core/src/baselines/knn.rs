//! Inverse-distance k-nearest-neighbour transfer of training fields.
//!
//! Each node is described by `(x, y, d, u_in,x, u_in,y)`, every coordinate
//! divided by its standard deviation over the training nodes. Neighbour ties
//! resolve to the lowest training index and weights are summed in neighbour
//! order, so predictions are reproducible bit for bit.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::kdtree::KdTree;
use super::Predictor;
use crate::math;
use crate::model::{Dataset, FieldSet, Sample};
use crate::{Error, Result};

pub const FEATURES: usize = 5;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    #[default]
    Inverse,
    Uniform,
}

#[derive(Clone, Debug)]
pub struct KnnModel {
    k: usize,
    weighting: Weighting,
    scale: [f64; FEATURES],
    tree: KdTree<FEATURES>,
    targets: Vec<[f64; 4]>,
}

fn raw_features(sample: &Sample, i: usize) -> [f64; FEATURES] {
    let p = sample.positions[i];
    [p[0], p[1], sample.distance[i], sample.inlet_velocity[0], sample.inlet_velocity[1]]
}

/// Builds the search structure over every training node.
pub fn knn_fit(train: &Dataset, k: usize, weighting: Weighting) -> Result<KnnModel> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let n: usize = train.samples.iter().map(Sample::node_count).sum();
    if n == 0 {
        return Err(Error::Fit(format!("training split `{}` has no nodes", train.split)));
    }
    let mut raw = Vec::with_capacity(n);
    let mut targets = Vec::with_capacity(n);
    for s in &train.samples {
        for i in 0..s.node_count() {
            raw.push(raw_features(s, i));
            targets.push(s.truth_fields.row(i));
        }
    }
    let mut mean = [0.0; FEATURES];
    for f in &raw {
        for j in 0..FEATURES {
            mean[j] += f[j];
        }
    }
    mean = mean.map(|m| m / n as f64);
    let mut var = [0.0; FEATURES];
    for f in &raw {
        for j in 0..FEATURES {
            var[j] += (f[j] - mean[j]) * (f[j] - mean[j]);
        }
    }
    let scale = var.map(|v| {
        let sd = math::sqrt(v / n as f64);
        if sd > 0.0 { 1.0 / sd } else { 1.0 }
    });
    let points = raw.into_iter().map(|f| scaled(f, &scale)).collect();
    Ok(KnnModel { k, weighting, scale, tree: KdTree::build(points), targets })
}

fn scaled(f: [f64; FEATURES], scale: &[f64; FEATURES]) -> [f64; FEATURES] {
    core::array::from_fn(|j| f[j] * scale[j])
}

impl KnnModel {
    pub fn k(&self) -> usize {
        self.k
    }

    fn predict_node(&self, query: &[f64; FEATURES]) -> [f64; 4] {
        let neighbours = self.tree.nearest(query, self.k);
        let exact: Vec<_> = neighbours.iter().filter(|n| n.dist2 == 0.0).collect();
        let mut acc = [0.0; 4];
        let mut total = 0.0;
        let mut add = |index: usize, w: f64| {
            let t = &self.targets[index];
            for c in 0..4 {
                acc[c] += w * t[c];
            }
            total += w;
        };
        if !exact.is_empty() {
            exact.iter().for_each(|n| add(n.index, 1.0));
        } else {
            for n in &neighbours {
                let w = match self.weighting {
                    Weighting::Inverse => 1.0 / math::sqrt(n.dist2),
                    Weighting::Uniform => 1.0,
                };
                add(n.index, w);
            }
        }
        acc.map(|v| v / total)
    }
}

pub fn knn_predict(model: &KnnModel, sample: &Sample) -> FieldSet {
    let mut out = FieldSet::with_capacity(sample.node_count());
    for i in 0..sample.node_count() {
        out.push(model.predict_node(&scaled(raw_features(sample, i), &model.scale)));
    }
    out
}

impl Predictor for KnnModel {
    fn name(&self) -> String {
        format!("knn:{}", self.k)
    }

    fn predict(&self, sample: &Sample) -> FieldSet {
        knn_predict(self, sample)
    }
}
