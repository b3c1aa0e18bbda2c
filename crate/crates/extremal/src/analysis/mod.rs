//! Deterministic consequences of the conjectures: growth curves, moment bounds,
//! validity limits and the saddle-point convolution. Everything is a function of log T.

mod bounds;
mod curves;
mod optimize;
mod saddle;

pub use bounds::{
    contradiction_check, ks_validity_limit, leading_optimal_c, leading_upper_coefficient, moment_lower_bound,
    moment_lower_bound_with, moment_upper_bound, moment_upper_bound_with, optimize_upper_bound,
    optimize_upper_bound_with, order_scale, tau_optimal, tau_threshold, BoundReport, ContradictionCheck, Direction,
    OptimizedBound, TauOptimum,
};
pub use curves::{
    conjecture_curve, critical_density_exponent, density_large_values, ks_log_moment, ks_log_moment_with, rmt_leading_share,
    s_conjecture_curve, MomentModel, ARITH_TOL,
};
pub use optimize::{bisect_increasing, minimize_unimodal};
pub use saddle::{saddle_point_x0, ConvolutionExponent, SaddlePoint};
