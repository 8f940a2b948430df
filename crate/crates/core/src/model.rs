//! Samples, datasets and predictions.
//!
//! A [`Sample`] is one steady airfoil case given as a point cloud: the node
//! inputs (position, distance to the wall, wall normal, freestream) and the
//! four ground-truth output channels. Values are immutable once built; the
//! generator and the file readers are the only producers.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry;

pub type Vec2 = [f64; 2];

/// Tolerance on the unit norm of surface normals.
pub const NORMAL_TOLERANCE: f64 = 1e-9;
/// Distances at or below this value count as "on the wall".
pub const WALL_DISTANCE_TOLERANCE: f64 = 1e-12;

/// One of the four regressed output channels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Channel {
    #[serde(rename = "u_x")]
    VelocityX,
    #[serde(rename = "u_y")]
    VelocityY,
    #[serde(rename = "p_s")]
    Pressure,
    #[serde(rename = "nu_t")]
    TurbulentViscosity,
}

impl Channel {
    pub const ALL: [Channel; 4] = [
        Channel::VelocityX,
        Channel::VelocityY,
        Channel::Pressure,
        Channel::TurbulentViscosity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Channel::VelocityX => "u_x",
            Channel::VelocityY => "u_y",
            Channel::Pressure => "p_s",
            Channel::TurbulentViscosity => "nu_t",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-node output fields: velocity (m/s), pressure over density (m²/s²)
/// and turbulent kinematic viscosity (m²/s).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FieldSet {
    pub u_x: Vec<f64>,
    pub u_y: Vec<f64>,
    pub p_s: Vec<f64>,
    pub nu_t: Vec<f64>,
}

impl FieldSet {
    pub fn with_capacity(n: usize) -> Self {
        FieldSet {
            u_x: Vec::with_capacity(n),
            u_y: Vec::with_capacity(n),
            p_s: Vec::with_capacity(n),
            nu_t: Vec::with_capacity(n),
        }
    }

    /// Every node receives the same four values.
    pub fn uniform(n: usize, values: [f64; 4]) -> Self {
        FieldSet {
            u_x: alloc::vec![values[0]; n],
            u_y: alloc::vec![values[1]; n],
            p_s: alloc::vec![values[2]; n],
            nu_t: alloc::vec![values[3]; n],
        }
    }

    pub fn push(&mut self, values: [f64; 4]) {
        self.u_x.push(values[0]);
        self.u_y.push(values[1]);
        self.p_s.push(values[2]);
        self.nu_t.push(values[3]);
    }

    /// Row `i` as `[u_x, u_y, p_s, nu_t]`.
    pub fn row(&self, i: usize) -> [f64; 4] {
        [self.u_x[i], self.u_y[i], self.p_s[i], self.nu_t[i]]
    }

    pub fn channel(&self, channel: Channel) -> &[f64] {
        match channel {
            Channel::VelocityX => &self.u_x,
            Channel::VelocityY => &self.u_y,
            Channel::Pressure => &self.p_s,
            Channel::TurbulentViscosity => &self.nu_t,
        }
    }

    pub fn channel_mut(&mut self, channel: Channel) -> &mut Vec<f64> {
        match channel {
            Channel::VelocityX => &mut self.u_x,
            Channel::VelocityY => &mut self.u_y,
            Channel::Pressure => &mut self.p_s,
            Channel::TurbulentViscosity => &mut self.nu_t,
        }
    }

    /// Node count, or `None` when the four channels disagree.
    pub fn len(&self) -> Option<usize> {
        let n = self.u_x.len();
        (self.u_y.len() == n && self.p_s.len() == n && self.nu_t.len() == n).then_some(n)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Appends one violation per channel-level rule that fails, expecting `n` nodes.
    pub fn check(&self, n: usize, out: &mut Vec<Violation>) {
        for channel in Channel::ALL {
            let values = self.channel(channel);
            if values.len() != n {
                out.push(Violation::new(
                    channel.name(),
                    format!("length {} does not match node count {}", values.len(), n),
                ));
                continue;
            }
            if let Some(i) = values.iter().position(|v| !v.is_finite()) {
                out.push(Violation::at(channel.name(), "non-finite value", i));
            }
        }
        if let Some(i) = self.nu_t.iter().position(|&v| v < 0.0) {
            out.push(Violation::at("nu_t", "negative value", i));
        }
    }
}

/// Scalar case metadata.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleMeta {
    pub alpha_rad: f64,
    pub u_inf: f64,
    pub chord: f64,
    pub rho: f64,
    pub solver_time_s: f64,
}

impl SampleMeta {
    /// Unit vector along the freestream.
    pub fn freestream_direction(&self) -> Vec2 {
        [crate::math::cos(self.alpha_rad), crate::math::sin(self.alpha_rad)]
    }
}

/// Closed-form force values known for analytic ground truth.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticForces {
    /// Kutta circulation (m²/s), positive for upward lift.
    pub circulation: f64,
    /// Kutta–Joukowski lift coefficient `2Γ / (u_inf · chord)`.
    pub c_l: f64,
    /// Zero for inviscid potential flow.
    pub c_d: f64,
}

/// One simulated airfoil case.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub id: String,
    pub positions: Vec<Vec2>,
    pub inlet_velocity: Vec2,
    pub distance: Vec<f64>,
    pub normals: Vec<Vec2>,
    pub is_surface: Vec<bool>,
    /// Surface node indices, counter-clockwise around the contour.
    pub surface_order: Vec<usize>,
    pub truth_fields: FieldSet,
    pub meta: SampleMeta,
    pub oracle: Option<AnalyticForces>,
}

impl Sample {
    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn surface_count(&self) -> usize {
        self.is_surface.iter().filter(|&&s| s).count()
    }

    /// Surface polygon vertices in contour order.
    pub fn contour(&self) -> Vec<Vec2> {
        self.surface_order.iter().map(|&i| self.positions[i]).collect()
    }
}

/// A single failed invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub field: String,
    pub rule: String,
    pub index: Option<usize>,
}

impl Violation {
    pub fn new(field: &str, rule: impl Into<String>) -> Self {
        Violation { field: field.into(), rule: rule.into(), index: None }
    }

    pub fn at(field: &str, rule: impl Into<String>, index: usize) -> Self {
        Violation { field: field.into(), rule: rule.into(), index: Some(index) }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}: {} at index {}", self.field, self.rule, i),
            None => write!(f, "{}: {}", self.field, self.rule),
        }
    }
}

fn finite2(v: Vec2) -> bool {
    v[0].is_finite() && v[1].is_finite()
}

/// Lists every broken invariant of `sample`; empty means valid.
pub fn validate_sample(sample: &Sample) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = sample.positions.len();
    if n < 3 {
        out.push(Violation::new("positions", format!("need at least 3 nodes, got {n}")));
    }
    if let Some(i) = sample.positions.iter().position(|&p| !finite2(p)) {
        out.push(Violation::at("positions", "non-finite value", i));
    }
    if !finite2(sample.inlet_velocity) {
        out.push(Violation::new("inlet_velocity", "non-finite value"));
    }

    let mut lengths_ok = true;
    for (name, len) in [
        ("distance", sample.distance.len()),
        ("normals", sample.normals.len()),
        ("is_surface", sample.is_surface.len()),
    ] {
        if len != n {
            lengths_ok = false;
            out.push(Violation::new(name, format!("length {len} does not match node count {n}")));
        }
    }

    if lengths_ok {
        for i in 0..n {
            let d = sample.distance[i];
            if !d.is_finite() || d < 0.0 {
                out.push(Violation::at("distance", "negative or non-finite value", i));
                break;
            }
            let on_wall = d <= WALL_DISTANCE_TOLERANCE;
            if on_wall != sample.is_surface[i] {
                out.push(Violation::at("distance", "zero distance must coincide with surface flag", i));
                break;
            }
        }
        for i in 0..n {
            let nrm = sample.normals[i];
            if sample.is_surface[i] {
                let len = crate::math::hypot(nrm[0], nrm[1]);
                if !(crate::math::abs(len - 1.0) <= NORMAL_TOLERANCE) {
                    out.push(Violation::at("normals", "not unit norm", i));
                    break;
                }
            } else if nrm != [0.0, 0.0] {
                out.push(Violation::at("normals", "non-zero at non-surface node", i));
                break;
            }
        }
        check_surface_order(sample, &mut out);
    }

    sample.truth_fields.check(n, &mut out);

    let m = &sample.meta;
    if !(m.solver_time_s > 0.0 && m.solver_time_s.is_finite()) {
        out.push(Violation::new("solver_time_s", "must be positive"));
    }
    if !(m.u_inf > 0.0 && m.u_inf.is_finite()) {
        out.push(Violation::new("u_inf", "must be positive"));
    }
    if !(m.chord > 0.0 && m.chord.is_finite()) {
        out.push(Violation::new("chord", "must be positive"));
    }
    if !(m.rho > 0.0 && m.rho.is_finite()) {
        out.push(Violation::new("rho", "must be positive"));
    }
    if !m.alpha_rad.is_finite() {
        out.push(Violation::new("alpha_rad", "non-finite value"));
    }
    out
}

fn check_surface_order(sample: &Sample, out: &mut Vec<Violation>) {
    let n = sample.positions.len();
    let mut seen = alloc::vec![false; n];
    for &i in &sample.surface_order {
        if i >= n {
            out.push(Violation::new("surface_order", format!("index {i} out of range")));
            return;
        }
        if !sample.is_surface[i] {
            out.push(Violation::at("surface_order", "references a non-surface node", i));
            return;
        }
        if seen[i] {
            out.push(Violation::at("surface_order", "repeats a node", i));
            return;
        }
        seen[i] = true;
    }
    if let Some(i) = (0..n).find(|&i| sample.is_surface[i] && !seen[i]) {
        out.push(Violation::at("surface_order", "misses a surface node", i));
        return;
    }
    if sample.surface_order.is_empty() {
        return;
    }
    if let Some((i, j)) = geometry::first_self_intersection(&sample.contour()) {
        out.push(Violation::new(
            "surface_order",
            format!("contour is not a simple polygon (edges {i} and {j})"),
        ));
    }
}

/// Which benchmark split a dataset belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Split {
    #[serde(rename = "train")]
    Train,
    #[serde(rename = "test")]
    Test,
    #[serde(rename = "ood_test")]
    OodTest,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Test, Split::OodTest];

    pub fn name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
            Split::OodTest => "ood_test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub split: Split,
    pub samples: Vec<Sample>,
    pub generation_config_digest: String,
}

impl Dataset {
    /// Checks every sample and id uniqueness, failing on the first problem.
    pub fn validate(&self) -> crate::Result<()> {
        let mut ids: Vec<&str> = self.samples.iter().map(|s| s.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(crate::Error::Validation {
                sample: w[0].into(),
                message: "duplicate sample id".into(),
            });
        }
        for s in &self.samples {
            if let Some(v) = validate_sample(s).into_iter().next() {
                return Err(crate::Error::Validation { sample: s.id.clone(), message: format!("{v}") });
            }
        }
        Ok(())
    }

    pub fn total_solver_time(&self) -> f64 {
        self.samples.iter().map(|s| s.meta.solver_time_s).sum()
    }

    pub fn sample(&self, id: &str) -> Option<&Sample> {
        self.samples.iter().find(|s| s.id == id)
    }
}

/// Predicted fields for one sample, in that sample's node order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub sample_id: String,
    pub fields: FieldSet,
    pub inference_time_s: f64,
}

impl Prediction {
    /// Shape check against the referenced sample. Non-finite values are
    /// allowed here; they surface later as unacceptable metrics.
    pub fn check_shape(&self, sample: &Sample) -> crate::Result<()> {
        let n = sample.node_count();
        match self.fields.len() {
            Some(len) if len == n => {}
            Some(len) => {
                return Err(crate::Error::Shape(format!(
                    "prediction for `{}` has {len} rows, sample has {n} nodes",
                    self.sample_id
                )))
            }
            None => {
                return Err(crate::Error::Shape(format!(
                    "prediction for `{}` has channels of unequal length",
                    self.sample_id
                )))
            }
        }
        if !(self.inference_time_s >= 0.0) {
            return Err(crate::Error::Shape(format!(
                "prediction for `{}` has negative inference time",
                self.sample_id
            )));
        }
        Ok(())
    }
}
