//! Analytic ground truth: inviscid potential flow around Joukowski airfoils.
//!
//! Lift is known in closed form (Kutta–Joukowski, `C_L = 2Γ/(U·c)`) and drag
//! is exactly zero, which gives exact oracles for the force post-treatment.

pub mod cloud;
pub mod config;
pub mod joukowski;

pub use cloud::{sample_point_cloud, surface_node_count, DEFAULT_SOLVER_TIME_S, MIN_NODES};
pub use config::{
    draw_params, generate_sample, generate_split, sample_id, sample_seed, splitmix64, GenerationConfig, Range,
    ShapeRanges,
};
pub use joukowski::{circulation_kutta, nu_t_at, pressure_at, velocity_at, JoukowskiFlow, JoukowskiParams};
