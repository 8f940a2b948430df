//! Point-cloud sampling of one analytic airfoil case.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::joukowski::{JoukowskiFlow, JoukowskiParams};
use crate::math;
use crate::model::{AnalyticForces, FieldSet, Sample, SampleMeta, Vec2};
use crate::{Error, Result};

pub const MIN_NODES: usize = 64;
/// Reference solver time attached to samples unless the caller overrides it.
pub const DEFAULT_SOLVER_TIME_S: f64 = 1500.0;

/// Mean of the exponential radial law, as a log-radius in the cylinder plane.
const RADIAL_SCALE: f64 = 0.35;
/// Outer boundary: ten cylinder radii.
const MAX_LOG_RADIUS: f64 = core::f64::consts::LN_10;
/// Smallest log-radius drawn for volume nodes, keeping them off the wall.
const MIN_LOG_RADIUS: f64 = 1e-4;

/// Number of wall nodes for a cloud of `n_nodes`.
pub fn surface_node_count(n_nodes: usize) -> usize {
    n_nodes.div_ceil(4)
}

/// Builds a sample of `n_nodes` nodes around the airfoil described by `params`.
///
/// Wall nodes come first, in counter-clockwise contour order, at circle angles
/// `θ_te + 2π(k + ½)/n_s`: the half-step offset keeps the trailing-edge cusp
/// out of the cloud with its two neighbours straddling it. Volume nodes follow,
/// with log-radius in the cylinder plane drawn from a truncated exponential so
/// density decays away from the wall.
///
/// The returned sample has id `"sample"` and [`DEFAULT_SOLVER_TIME_S`]; callers
/// overwrite both.
pub fn sample_point_cloud(params: &JoukowskiParams, n_nodes: usize, seed: u64) -> Result<Sample> {
    if n_nodes < MIN_NODES {
        return Err(Error::Parameter(format!("need at least {MIN_NODES} nodes, got {n_nodes}")));
    }
    if !(params.mu.re < 0.0) {
        return Err(Error::Parameter("sampling needs a thick airfoil, Re(mu) < 0".into()));
    }
    let flow = JoukowskiFlow::new(*params)?;
    let n_surface = surface_node_count(n_nodes);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut positions = Vec::with_capacity(n_nodes);
    let mut distance = Vec::with_capacity(n_nodes);
    let mut normals = Vec::with_capacity(n_nodes);
    let mut is_surface = Vec::with_capacity(n_nodes);
    let mut fields = FieldSet::with_capacity(n_nodes);

    for k in 0..n_surface {
        let theta = flow.trailing_edge_theta() + TAU * (k as f64 + 0.5) / n_surface as f64;
        let zeta = flow.circle_point(theta);
        let z = flow.map(zeta);
        let u = flow.velocity_at_preimage(zeta)?;
        positions.push([z.re, z.im]);
        distance.push(0.0);
        normals.push(flow.contour_normal(theta));
        is_surface.push(true);
        fields.push([u[0], u[1], flow.pressure_from_velocity(u), 0.0]);
    }

    let span = 1.0 - math::exp(-(MAX_LOG_RADIUS - MIN_LOG_RADIUS) / RADIAL_SCALE);
    let wall_tolerance = 1e-9 * flow.chord();
    while positions.len() < n_nodes {
        let theta = TAU * rng.random::<f64>();
        let v: f64 = rng.random();
        let log_r = MIN_LOG_RADIUS - RADIAL_SCALE * math::ln(1.0 - v * span);
        let zeta = flow.center() + math::cis(theta) * (flow.radius() * math::exp(log_r));
        let z = flow.map(zeta);
        let point: Vec2 = [z.re, z.im];
        let d = flow.distance_to_surface(point);
        if !(d > wall_tolerance) {
            continue;
        }
        let u = flow.velocity_at_preimage(zeta)?;
        positions.push(point);
        distance.push(d);
        normals.push([0.0, 0.0]);
        is_surface.push(false);
        fields.push([u[0], u[1], flow.pressure_from_velocity(u), flow.nu_t_from(d, u)]);
    }

    Ok(Sample {
        id: "sample".into(),
        positions,
        inlet_velocity: flow.freestream(),
        distance,
        normals,
        is_surface,
        surface_order: (0..n_surface).collect(),
        truth_fields: fields,
        meta: SampleMeta {
            alpha_rad: params.alpha_rad,
            u_inf: params.u_inf,
            chord: flow.chord(),
            rho: params.rho,
            solver_time_s: DEFAULT_SOLVER_TIME_S,
        },
        oracle: Some(AnalyticForces {
            circulation: flow.circulation(),
            c_l: flow.lift_coefficient(),
            c_d: 0.0,
        }),
    })
}
