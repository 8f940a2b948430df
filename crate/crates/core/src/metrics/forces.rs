//! Drag and lift from surface pressure.
//!
//! Pressure-only contour integral over the surface polygon:
//! `F = −ρ Σ_edges p̄_edge · n_edge · ℓ_edge`, with `p̄_edge` the mean of the
//! endpoint pressures and `n_edge` the outward edge normal. Coefficients are
//! the projections of `F` on the freestream direction and its left normal,
//! divided by `½·ρ·U²·chord`. Skin friction is not modelled.

use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::geometry;
use crate::model::{FieldSet, Sample, SampleMeta, Vec2};
use crate::{Error, Result};

pub const MIN_SURFACE_NODES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForceCoefficients {
    pub c_d: f64,
    pub c_l: f64,
}

/// A checked surface polygon, reusable for several pressure fields.
#[derive(Clone, Debug)]
pub struct SurfaceContour {
    /// Node indices in counter-clockwise order.
    order: Vec<usize>,
    /// `n_edge · ℓ_edge` for the edge leaving `order[k]`.
    scaled_normals: Vec<Vec2>,
    meta: SampleMeta,
}

impl SurfaceContour {
    pub fn from_sample(sample: &Sample) -> Result<Self> {
        let order = &sample.surface_order;
        if order.len() < MIN_SURFACE_NODES {
            return Err(Error::Geometry(format!(
                "`{}` has {} surface nodes, need at least {MIN_SURFACE_NODES}",
                sample.id,
                order.len()
            )));
        }
        if let Some(&i) = order.iter().find(|&&i| i >= sample.positions.len()) {
            return Err(Error::Geometry(format!("`{}`: surface index {i} out of range", sample.id)));
        }
        let vertices = sample.contour();
        if let Some((i, j)) = geometry::first_self_intersection(&vertices) {
            return Err(Error::Geometry(format!(
                "`{}`: surface contour is not simple (edges {i} and {j})",
                sample.id
            )));
        }
        let mut order = order.clone();
        let mut vertices = vertices;
        if geometry::signed_area(&vertices) < 0.0 {
            order.reverse();
            vertices.reverse();
        }
        let n = vertices.len();
        let scaled_normals = (0..n)
            .map(|k| {
                let a = vertices[k];
                let b = vertices[(k + 1) % n];
                [b[1] - a[1], -(b[0] - a[0])]
            })
            .collect();
        Ok(SurfaceContour { order, scaled_normals, meta: sample.meta })
    }

    /// Integrated force per unit span (N/m) for the pressure field `p_s`
    /// indexed by node.
    pub fn force(&self, p_s: &[f64]) -> Vec2 {
        let n = self.order.len();
        // A closed contour feels no net force from a uniform pressure; measuring
        // pressure relative to one wall node makes that exact in floating point.
        let gauge = p_s[self.order[0]];
        let mut f = [0.0, 0.0];
        for k in 0..n {
            let p = 0.5 * (p_s[self.order[k]] + p_s[self.order[(k + 1) % n]]) - gauge;
            let nl = self.scaled_normals[k];
            f[0] -= p * nl[0];
            f[1] -= p * nl[1];
        }
        [f[0] * self.meta.rho, f[1] * self.meta.rho]
    }

    pub fn coefficients(&self, p_s: &[f64]) -> ForceCoefficients {
        let f = self.force(p_s);
        let m = &self.meta;
        let q = 0.5 * m.rho * m.u_inf * m.u_inf * m.chord;
        let e = m.freestream_direction();
        ForceCoefficients {
            c_d: (f[0] * e[0] + f[1] * e[1]) / q,
            c_l: (-f[0] * e[1] + f[1] * e[0]) / q,
        }
    }
}

/// Drag and lift coefficients of `sample` under the pressure in `fields`.
pub fn force_coefficients(sample: &Sample, fields: &FieldSet) -> Result<ForceCoefficients> {
    let p_s = &fields.p_s;
    if p_s.len() != sample.node_count() {
        return Err(Error::Shape(format!(
            "pressure has {} values, `{}` has {} nodes",
            p_s.len(),
            sample.id,
            sample.node_count()
        )));
    }
    Ok(SurfaceContour::from_sample(sample)?.coefficients(p_s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthflow::{sample_point_cloud, JoukowskiParams};
    use core::f64::consts::TAU;

    fn circle_sample(n: usize) -> Sample {
        let mut s = crate::model::fixtures::square_sample();
        s.positions = (0..n).map(|k| {
            let t = TAU * k as f64 / n as f64;
            [t.cos(), t.sin()]
        }).collect();
        s.distance = alloc::vec![0.0; n];
        s.normals = s.positions.clone();
        s.is_surface = alloc::vec![true; n];
        s.surface_order = (0..n).collect();
        s.truth_fields = FieldSet::uniform(n, [0.0; 4]);
        s
    }

    #[test]
    fn uniform_pressure_gives_no_force() {
        let s = circle_sample(37);
        let c = force_coefficients(&s, &FieldSet::uniform(37, [0.0, 0.0, 12.5, 0.0])).unwrap();
        assert_eq!((c.c_d, c.c_l), (0.0, 0.0));
    }

    #[test]
    fn too_few_surface_nodes() {
        let s = circle_sample(7);
        assert!(matches!(force_coefficients(&s, &FieldSet::uniform(7, [0.0; 4])), Err(Error::Geometry(_))));
    }

    #[test]
    fn self_intersecting_contour() {
        let mut s = circle_sample(12);
        s.surface_order.swap(3, 8);
        assert!(matches!(force_coefficients(&s, &FieldSet::uniform(12, [0.0; 4])), Err(Error::Geometry(_))));
    }

    #[test]
    fn clockwise_order_gives_same_coefficients() {
        let s = sample_point_cloud(&JoukowskiParams::new(-0.1, 0.04, 0.25, 0.08, 1.0), 512, 4).unwrap();
        let ccw = force_coefficients(&s, &s.truth_fields).unwrap();
        let mut cw = s.clone();
        cw.surface_order.reverse();
        assert_eq!(ccw, force_coefficients(&cw, &s.truth_fields).unwrap());
    }

    #[test]
    fn symmetric_airfoil_at_zero_incidence_has_no_lift() {
        let s = sample_point_cloud(&JoukowskiParams::new(-0.1, 0.0, 0.25, 0.0, 1.0), 2048, 4).unwrap();
        let c = force_coefficients(&s, &s.truth_fields).unwrap();
        assert!(c.c_l.abs() < 1e-3, "{c:?}");
    }

    #[test]
    fn cambered_airfoil_matches_kutta_joukowski() {
        let s = sample_point_cloud(&JoukowskiParams::new(-0.1, 0.05, 0.25, 0.1, 10.0), 2048, 4).unwrap();
        let c = force_coefficients(&s, &s.truth_fields).unwrap();
        let exact = s.oracle.unwrap().c_l;
        assert!(((c.c_l - exact) / exact).abs() < 0.02, "{} vs {exact}", c.c_l);
        assert!(c.c_d.abs() < 1e-2, "{}", c.c_d);
    }

    #[test]
    fn pressure_offset_does_not_change_coefficients() {
        let s = sample_point_cloud(&JoukowskiParams::new(-0.08, 0.06, 0.25, 0.12, 2.0), 512, 9).unwrap();
        let base = force_coefficients(&s, &s.truth_fields).unwrap();
        let mut shifted = s.truth_fields.clone();
        shifted.p_s.iter_mut().for_each(|p| *p += 3.7);
        let moved = force_coefficients(&s, &shifted).unwrap();
        assert!((base.c_d - moved.c_d).abs() < 1e-10 && (base.c_l - moved.c_l).abs() < 1e-10);
    }

    #[test]
    fn rigid_rotation_leaves_coefficients_unchanged() {
        let s = sample_point_cloud(&JoukowskiParams::new(-0.08, 0.06, 0.25, 0.12, 2.0), 512, 9).unwrap();
        let base = force_coefficients(&s, &s.truth_fields).unwrap();
        for theta in [0.3f64, -1.1, 2.0] {
            let (sn, cs) = theta.sin_cos();
            let rot = |v: Vec2| [cs * v[0] - sn * v[1], sn * v[0] + cs * v[1]];
            let mut r = s.clone();
            r.positions = s.positions.iter().map(|&p| rot(p)).collect();
            r.normals = s.normals.iter().map(|&p| rot(p)).collect();
            r.inlet_velocity = rot(s.inlet_velocity);
            r.meta.alpha_rad += theta;
            let c = force_coefficients(&r, &r.truth_fields).unwrap();
            assert!((c.c_d - base.c_d).abs() < 1e-10 && (c.c_l - base.c_l).abs() < 1e-10, "{c:?} vs {base:?}");
        }
    }
}
