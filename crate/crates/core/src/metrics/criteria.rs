//! Criterion names and the declarative definition of the five field criteria.

use alloc::collections::BTreeMap;
use alloc::format;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::field::ErrorKind;
use crate::model::Channel;
use crate::{Error, Result};

/// The nine scored quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Criterion {
    #[serde(rename = "u_x")]
    VelocityX,
    #[serde(rename = "u_y")]
    VelocityY,
    /// Pressure error over all nodes.
    #[serde(rename = "p")]
    Pressure,
    #[serde(rename = "nu_t")]
    TurbulentViscosity,
    /// Pressure error over wall nodes only.
    #[serde(rename = "p_s")]
    SurfacePressure,
    /// Mean relative drag-coefficient error.
    #[serde(rename = "c_d")]
    Drag,
    /// Mean relative lift-coefficient error.
    #[serde(rename = "c_l")]
    Lift,
    #[serde(rename = "rho_d")]
    SpearmanDrag,
    #[serde(rename = "rho_l")]
    SpearmanLift,
}

impl Criterion {
    pub const FIELDS: [Criterion; 5] = [
        Criterion::VelocityX,
        Criterion::VelocityY,
        Criterion::Pressure,
        Criterion::TurbulentViscosity,
        Criterion::SurfacePressure,
    ];
    pub const PHYSICS: [Criterion; 4] =
        [Criterion::Drag, Criterion::Lift, Criterion::SpearmanDrag, Criterion::SpearmanLift];
    pub const ALL: [Criterion; 9] = [
        Criterion::VelocityX,
        Criterion::VelocityY,
        Criterion::Pressure,
        Criterion::TurbulentViscosity,
        Criterion::SurfacePressure,
        Criterion::Drag,
        Criterion::Lift,
        Criterion::SpearmanDrag,
        Criterion::SpearmanLift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::VelocityX => "u_x",
            Criterion::VelocityY => "u_y",
            Criterion::Pressure => "p",
            Criterion::TurbulentViscosity => "nu_t",
            Criterion::SurfacePressure => "p_s",
            Criterion::Drag => "c_d",
            Criterion::Lift => "c_l",
            Criterion::SpearmanDrag => "rho_d",
            Criterion::SpearmanLift => "rho_l",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeSubset {
    All,
    Surface,
}

/// How one field criterion is measured.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldCriterion {
    pub channel: Channel,
    pub kind: ErrorKind,
    pub subset: NodeSubset,
    /// The pooled error is divided by this constant.
    #[serde(default = "unit")]
    pub normalization: f64,
}

fn unit() -> f64 {
    1.0
}

impl FieldCriterion {
    pub const fn mae(channel: Channel, subset: NodeSubset) -> Self {
        FieldCriterion { channel, kind: ErrorKind::Mae, subset, normalization: 1.0 }
    }
}

/// Definitions of the five field criteria, keyed by criterion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldCriteria(pub BTreeMap<Criterion, FieldCriterion>);

impl Default for FieldCriteria {
    /// Node-pooled MAE per channel; `p` over all nodes, `p_s` over wall nodes.
    fn default() -> Self {
        use Channel::*;
        let mut m = BTreeMap::new();
        m.insert(Criterion::VelocityX, FieldCriterion::mae(VelocityX, NodeSubset::All));
        m.insert(Criterion::VelocityY, FieldCriterion::mae(VelocityY, NodeSubset::All));
        m.insert(Criterion::Pressure, FieldCriterion::mae(Pressure, NodeSubset::All));
        m.insert(Criterion::TurbulentViscosity, FieldCriterion::mae(TurbulentViscosity, NodeSubset::All));
        m.insert(Criterion::SurfacePressure, FieldCriterion::mae(Pressure, NodeSubset::Surface));
        FieldCriteria(m)
    }
}

impl FieldCriteria {
    pub fn validate(&self) -> Result<()> {
        for c in Criterion::FIELDS {
            if !self.0.contains_key(&c) {
                return Err(Error::Config(format!("field criterion `{c}` is not defined")));
            }
        }
        for (c, def) in &self.0 {
            if !Criterion::FIELDS.contains(c) {
                return Err(Error::Config(format!("`{c}` is not a field criterion")));
            }
            if !(def.normalization > 0.0 && def.normalization.is_finite()) {
                return Err(Error::Config(format!("`{c}`: normalization must be positive")));
            }
        }
        Ok(())
    }

    pub fn get(&self, c: Criterion) -> Option<&FieldCriterion> {
        self.0.get(&c)
    }
}
