//! Benchmark generation settings and per-sample parameter draws.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cloud::{sample_point_cloud, DEFAULT_SOLVER_TIME_S, MIN_NODES};
use super::joukowski::{JoukowskiFlow, JoukowskiParams};
use crate::model::{Dataset, Sample, Split};
use crate::{Error, Result};

/// Closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Range { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn overlaps(&self, other: &Range) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        self.lo + (self.hi - self.lo) * rng.random::<f64>()
    }

    fn check(&self, name: &str) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi) {
            return Err(Error::Config(format!("{name}: invalid range [{}, {}]", self.lo, self.hi)));
        }
        Ok(())
    }
}

/// Airfoil shape ranges. Thickness is `−Re(mu)`, camber is `Im(mu)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeRanges {
    pub thickness: Range,
    pub camber: Range,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenerationConfig {
    pub n_train: usize,
    pub n_test: usize,
    pub n_ood: usize,
    pub nodes_per_sample: usize,
    /// Freestream speed for train and test (m/s).
    pub u_inf: Range,
    /// Freestream speed for the out-of-distribution split; must not overlap `u_inf`.
    pub ood_u_inf: Range,
    pub alpha_deg: Range,
    pub shape: ShapeRanges,
    /// Optional distinct shape ranges for the out-of-distribution split.
    pub ood_shape: Option<ShapeRanges>,
    pub seed: u64,
    pub rho: f64,
    /// Scale each airfoil to unit chord; otherwise the map parameter is `map_a`.
    pub normalize_chord: bool,
    pub map_a: f64,
    pub solver_time_s: f64,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        GenerationConfig {
            n_train: 103,
            n_test: 200,
            n_ood: 496,
            nodes_per_sample: 2000,
            u_inf: Range::new(0.8, 1.2),
            ood_u_inf: Range::new(1.3, 1.6),
            alpha_deg: Range::new(-4.0, 10.0),
            shape: ShapeRanges { thickness: Range::new(0.06, 0.14), camber: Range::new(0.0, 0.08) },
            ood_shape: None,
            seed: 0,
            rho: 1.225,
            normalize_chord: true,
            map_a: 0.25,
            solver_time_s: DEFAULT_SOLVER_TIME_S,
        }
    }
}

impl GenerationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_train == 0 || self.n_test == 0 || self.n_ood == 0 {
            return Err(Error::Config("sample counts must be at least 1".into()));
        }
        if self.nodes_per_sample < MIN_NODES {
            return Err(Error::Config(format!("nodes_per_sample must be at least {MIN_NODES}")));
        }
        self.u_inf.check("u_inf")?;
        self.ood_u_inf.check("ood_u_inf")?;
        self.alpha_deg.check("alpha_deg")?;
        if !(self.u_inf.lo > 0.0 && self.ood_u_inf.lo > 0.0) {
            return Err(Error::Config("freestream speeds must be positive".into()));
        }
        if self.u_inf.overlaps(&self.ood_u_inf) {
            return Err(Error::Config(format!(
                "ood_u_inf [{}, {}] overlaps u_inf [{}, {}]",
                self.ood_u_inf.lo, self.ood_u_inf.hi, self.u_inf.lo, self.u_inf.hi
            )));
        }
        if !(self.alpha_deg.lo > -90.0 && self.alpha_deg.hi < 90.0) {
            return Err(Error::Config("alpha_deg must lie strictly within (-90, 90)".into()));
        }
        for (name, shape) in core::iter::once(("shape", &self.shape)).chain(self.ood_shape.as_ref().map(|s| ("ood_shape", s))) {
            shape.thickness.check(name)?;
            shape.camber.check(name)?;
            if !(shape.thickness.lo > 0.0) {
                return Err(Error::Config(format!("{name}: thickness must be positive")));
            }
        }
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return Err(Error::Config("rho must be positive".into()));
        }
        if !(self.map_a > 0.0 && self.map_a.is_finite()) {
            return Err(Error::Config("map_a must be positive".into()));
        }
        if !(self.solver_time_s > 0.0 && self.solver_time_s.is_finite()) {
            return Err(Error::Config("solver_time_s must be positive".into()));
        }
        Ok(())
    }

    pub fn count(&self, split: Split) -> usize {
        match split {
            Split::Train => self.n_train,
            Split::Test => self.n_test,
            Split::OodTest => self.n_ood,
        }
    }
}

/// SplitMix64 finaliser.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of sample `index` in `split`:
/// `splitmix64(splitmix64(master) ^ (tag << 32 | index))` with tags 1, 2, 3
/// for train, test and OOD.
pub fn sample_seed(master: u64, split: Split, index: usize) -> u64 {
    let tag: u64 = match split {
        Split::Train => 1,
        Split::Test => 2,
        Split::OodTest => 3,
    };
    splitmix64(splitmix64(master) ^ ((tag << 32) | index as u64))
}

pub fn sample_id(split: Split, index: usize) -> String {
    let prefix = match split {
        Split::Train => "train",
        Split::Test => "test",
        Split::OodTest => "ood",
    };
    format!("{prefix}-{index:04}")
}

/// Airfoil parameters and point-cloud seed for one sample.
pub fn draw_params(config: &GenerationConfig, split: Split, index: usize) -> Result<(JoukowskiParams, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(config.seed, split, index));
    let (speed, shape) = match split {
        Split::OodTest => (config.ood_u_inf, config.ood_shape.unwrap_or(config.shape)),
        _ => (config.u_inf, config.shape),
    };
    let u_inf = speed.draw(&mut rng);
    let alpha_rad = config.alpha_deg.draw(&mut rng).to_radians();
    let thickness = shape.thickness.draw(&mut rng);
    let camber = shape.camber.draw(&mut rng);
    let cloud_seed: u64 = rng.random();
    let mut params = JoukowskiParams::new(-thickness, camber, config.map_a, alpha_rad, u_inf);
    params.rho = config.rho;
    if config.normalize_chord {
        // Every length scales with a, so chord(a) = a · chord(1).
        let unit = JoukowskiFlow::new(JoukowskiParams { a: 1.0, ..params })?;
        params.a = 1.0 / unit.chord();
    }
    Ok((params, cloud_seed))
}

/// Generates sample `index` of `split`. Pure in `(config, split, index)`.
pub fn generate_sample(config: &GenerationConfig, split: Split, index: usize) -> Result<Sample> {
    let (params, cloud_seed) = draw_params(config, split, index)?;
    let mut sample = sample_point_cloud(&params, config.nodes_per_sample, cloud_seed)?;
    sample.id = sample_id(split, index);
    sample.meta.solver_time_s = config.solver_time_s;
    Ok(sample)
}

/// Generates a whole split sequentially.
pub fn generate_split(config: &GenerationConfig, split: Split, config_digest: &str) -> Result<Dataset> {
    config.validate()?;
    let samples = (0..config.count(split))
        .map(|i| generate_sample(config, split, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(Dataset { split, samples, generation_config_digest: config_digest.into() })
}
