//! Potential flow past a Joukowski airfoil.
//!
//! The cylinder plane `ζ` carries a circle of radius `R` centred at
//! `c = a·mu`, passing through the trailing-edge preimage `ζ = a`. The map
//! `z = ζ + a²/ζ` sends its exterior onto the exterior of the airfoil. In the
//! cylinder plane the complex potential is a uniform stream at incidence `α`,
//! a doublet and a clockwise vortex whose strength is fixed by the Kutta
//! condition.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::math::{self, cabs, cis};
use crate::model::Vec2;
use crate::{Error, Result};

/// Von Kármán constant in the synthetic eddy-viscosity channel.
pub const NU_T_KAPPA: f64 = 0.41;
/// Decay length of the synthetic eddy viscosity, in chords.
pub const NU_T_DECAY_CHORDS: f64 = 0.5;

const CONTOUR_TABLE_SIZE: usize = 1024;
const GOLDEN_ITERATIONS: usize = 80;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JoukowskiParams {
    /// Cylinder-centre offset in units of `a`. `-Re` sets thickness, `Im` sets camber.
    pub mu: Complex64,
    /// Map parameter (m).
    pub a: f64,
    pub alpha_rad: f64,
    pub u_inf: f64,
    pub rho: f64,
}

impl JoukowskiParams {
    pub fn new(mu_re: f64, mu_im: f64, a: f64, alpha_rad: f64, u_inf: f64) -> Self {
        JoukowskiParams { mu: Complex64::new(mu_re, mu_im), a, alpha_rad, u_inf, rho: 1.225 }
    }

    pub fn center(&self) -> Complex64 {
        self.mu * self.a
    }

    pub fn radius(&self) -> f64 {
        cabs(Complex64::new(self.a, 0.0) - self.center())
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.mu.re.is_finite()
            && self.mu.im.is_finite()
            && self.a.is_finite()
            && self.alpha_rad.is_finite()
            && self.u_inf.is_finite()
            && self.rho.is_finite();
        if !finite {
            return Err(Error::Parameter("non-finite airfoil parameter".into()));
        }
        if !(self.a > 0.0) {
            return Err(Error::Parameter(format!("map parameter a must be positive, got {}", self.a)));
        }
        if self.mu.re > 0.0 {
            return Err(Error::Parameter(format!("Re(mu) must be <= 0, got {}", self.mu.re)));
        }
        if !(self.radius() > 0.0) {
            return Err(Error::Parameter("degenerate cylinder radius".into()));
        }
        if !(self.u_inf > 0.0) {
            return Err(Error::Parameter(format!("u_inf must be positive, got {}", self.u_inf)));
        }
        if !(math::abs(self.alpha_rad) < PI / 2.0) {
            return Err(Error::Parameter(format!("|alpha| must be below pi/2, got {}", self.alpha_rad)));
        }
        if !(self.rho > 0.0) {
            return Err(Error::Parameter(format!("rho must be positive, got {}", self.rho)));
        }
        Ok(())
    }

    /// Trailing-edge offset angle `β = asin(Im(mu)/|1 − mu|)`.
    pub fn trailing_edge_angle(&self) -> f64 {
        let r_over_a = cabs(Complex64::new(1.0, 0.0) - self.mu);
        math::asin(self.mu.im / r_over_a)
    }
}

/// Kutta circulation `Γ = 4π·U·R·sin(α + β)` (m²/s).
pub fn circulation_kutta(params: &JoukowskiParams) -> Result<f64> {
    params.validate()?;
    let r = params.radius();
    Ok(4.0 * PI * params.u_inf * r * math::sin(params.alpha_rad + params.trailing_edge_angle()))
}

/// Flow velocity at `point` (m/s).
pub fn velocity_at(params: &JoukowskiParams, point: Vec2) -> Result<Vec2> {
    JoukowskiFlow::new(*params)?.velocity_at(point)
}

/// Pressure over density at `point` with zero far-field pressure (m²/s²).
pub fn pressure_at(params: &JoukowskiParams, point: Vec2) -> Result<f64> {
    JoukowskiFlow::new(*params)?.pressure_at(point)
}

/// Synthetic eddy viscosity at `point` (m²/s).
pub fn nu_t_at(params: &JoukowskiParams, point: Vec2) -> Result<f64> {
    JoukowskiFlow::new(*params)?.nu_t_at(point)
}

/// A validated airfoil with its circulation, chord and a contour lookup table.
#[derive(Clone, Debug)]
pub struct JoukowskiFlow {
    params: JoukowskiParams,
    center: Complex64,
    radius: f64,
    te_theta: f64,
    circulation: f64,
    chord: f64,
    leading_edge_x: f64,
    /// `(θ, z(θ))` for `θ` sweeping the circle from the trailing edge.
    table: Vec<(f64, Complex64)>,
}

impl JoukowskiFlow {
    pub fn new(params: JoukowskiParams) -> Result<Self> {
        let circulation = circulation_kutta(&params)?;
        let center = params.center();
        let radius = params.radius();
        let te_theta = -params.trailing_edge_angle();
        let mut flow = JoukowskiFlow {
            params,
            center,
            radius,
            te_theta,
            circulation,
            chord: 0.0,
            leading_edge_x: 0.0,
            table: Vec::new(),
        };
        flow.table = (0..CONTOUR_TABLE_SIZE)
            .map(|k| {
                let theta = te_theta + TAU * k as f64 / CONTOUR_TABLE_SIZE as f64;
                (theta, flow.contour_point(theta))
            })
            .collect();
        let (x_min, _) = flow.refine_extreme_x(false);
        let (x_max, _) = flow.refine_extreme_x(true);
        flow.leading_edge_x = x_min;
        flow.chord = x_max - x_min;
        Ok(flow)
    }

    pub fn params(&self) -> &JoukowskiParams {
        &self.params
    }

    pub fn circulation(&self) -> f64 {
        self.circulation
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Circle angle of the trailing-edge preimage `ζ = a`.
    pub fn trailing_edge_theta(&self) -> f64 {
        self.te_theta
    }

    /// x-extent of the mapped contour (m).
    pub fn chord(&self) -> f64 {
        self.chord
    }

    pub fn leading_edge_x(&self) -> f64 {
        self.leading_edge_x
    }

    /// Kutta–Joukowski lift coefficient `2Γ/(U·chord)`.
    pub fn lift_coefficient(&self) -> f64 {
        2.0 * self.circulation / (self.params.u_inf * self.chord)
    }

    pub fn freestream(&self) -> Vec2 {
        let u = self.params.u_inf;
        [u * math::cos(self.params.alpha_rad), u * math::sin(self.params.alpha_rad)]
    }

    /// Joukowski map `z = ζ + a²/ζ`.
    pub fn map(&self, zeta: Complex64) -> Complex64 {
        zeta + self.params.a * self.params.a / zeta
    }

    /// `dz/dζ = 1 − a²/ζ²`.
    pub fn map_derivative(&self, zeta: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0) - self.params.a * self.params.a / (zeta * zeta)
    }

    /// Point on the circle at angle `theta`.
    pub fn circle_point(&self, theta: f64) -> Complex64 {
        self.center + cis(theta) * self.radius
    }

    pub fn contour_point(&self, theta: f64) -> Complex64 {
        self.map(self.circle_point(theta))
    }

    /// Outward unit normal of the airfoil at circle angle `theta`.
    ///
    /// The map is conformal, so the circle's radial direction `e^{iθ}` turns
    /// by `arg(dz/dζ)`. Undefined at the trailing edge itself.
    pub fn contour_normal(&self, theta: f64) -> Vec2 {
        let d = self.map_derivative(self.circle_point(theta));
        let n = cis(theta) * d;
        let len = cabs(n);
        [n.re / len, n.im / len]
    }

    /// Exterior preimage of `z`: of the two roots of `ζ² − zζ + a² = 0`, the one
    /// farther from the circle centre.
    pub fn preimage(&self, point: Vec2) -> Result<Complex64> {
        let z = Complex64::new(point[0], point[1]);
        let a = self.params.a;
        let disc = math::csqrt(z * z - Complex64::new(4.0 * a * a, 0.0));
        let r1 = (z + disc) * 0.5;
        let r2 = (z - disc) * 0.5;
        let (d1, d2) = (cabs(r1 - self.center), cabs(r2 - self.center));
        let (zeta, dist) = if d1 >= d2 { (r1, d1) } else { (r2, d2) };
        if dist < self.radius * (1.0 - 1e-12) {
            return Err(Error::Domain(format!("({}, {})", point[0], point[1])));
        }
        Ok(zeta)
    }

    /// Velocity at the physical image of the cylinder-plane point `zeta`.
    pub fn velocity_at_preimage(&self, zeta: Complex64) -> Result<Vec2> {
        let dz = self.map_derivative(zeta);
        if cabs(dz) < 1e-12 {
            return Err(Error::Singularity(format!("zeta = ({}, {})", zeta.re, zeta.im)));
        }
        let w = self.complex_velocity_cylinder(zeta) / dz;
        // w = u − i v
        Ok([w.re, -w.im])
    }

    /// `dW/dζ` in the cylinder plane.
    pub fn complex_velocity_cylinder(&self, zeta: Complex64) -> Complex64 {
        let p = &self.params;
        let s = zeta - self.center;
        let stream = cis(-p.alpha_rad);
        let doublet = cis(p.alpha_rad) * (self.radius * self.radius) / (s * s);
        let vortex = Complex64::new(0.0, self.circulation / TAU) / s;
        (stream - doublet) * p.u_inf + vortex
    }

    pub fn velocity_at(&self, point: Vec2) -> Result<Vec2> {
        let zeta = self.preimage(point)?;
        self.velocity_at_preimage(zeta)
    }

    /// Bernoulli with zero far-field pressure.
    pub fn pressure_from_velocity(&self, velocity: Vec2) -> f64 {
        let u = self.params.u_inf;
        0.5 * (u * u - (velocity[0] * velocity[0] + velocity[1] * velocity[1]))
    }

    pub fn pressure_at(&self, point: Vec2) -> Result<f64> {
        Ok(self.pressure_from_velocity(self.velocity_at(point)?))
    }

    /// `κ·d·|u|·exp(−d/(λ·chord))`.
    pub fn nu_t_from(&self, distance: f64, velocity: Vec2) -> f64 {
        let speed = math::hypot(velocity[0], velocity[1]);
        NU_T_KAPPA * distance * speed * math::exp(-distance / (NU_T_DECAY_CHORDS * self.chord))
    }

    pub fn nu_t_at(&self, point: Vec2) -> Result<f64> {
        let velocity = self.velocity_at(point)?;
        Ok(self.nu_t_from(self.distance_to_surface(point), velocity))
    }

    /// Euclidean distance from `point` to the airfoil contour.
    ///
    /// Nearest entry of the contour table, then golden-section refinement on
    /// the circle angle between its two neighbours.
    pub fn distance_to_surface(&self, point: Vec2) -> f64 {
        let z = Complex64::new(point[0], point[1]);
        let m = self.table.len();
        let mut best = 0;
        let mut best_d2 = f64::INFINITY;
        for (k, &(_, zk)) in self.table.iter().enumerate() {
            let d2 = (zk - z).norm_sqr();
            if d2 < best_d2 {
                best_d2 = d2;
                best = k;
            }
        }
        let step = TAU / m as f64;
        let theta0 = self.table[best].0;
        let f = |t: f64| (self.contour_point(t) - z).norm_sqr();
        let (_, d2) = golden_minimize(&f, theta0 - step, theta0 + step);
        math::sqrt(d2.min(best_d2))
    }

    fn refine_extreme_x(&self, maximize: bool) -> (f64, f64) {
        let sign = if maximize { -1.0 } else { 1.0 };
        let mut best = 0;
        for (k, &(_, zk)) in self.table.iter().enumerate() {
            if sign * zk.re < sign * self.table[best].1.re {
                best = k;
            }
        }
        let step = TAU / self.table.len() as f64;
        let theta0 = self.table[best].0;
        let f = |t: f64| sign * self.contour_point(t).re;
        let (t, v) = golden_minimize(&f, theta0 - step, theta0 + step);
        let v = v.min(sign * self.table[best].1.re);
        (sign * v, t)
    }
}

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
fn golden_minimize(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (math::sqrt(5.0) - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..GOLDEN_ITERATIONS {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
