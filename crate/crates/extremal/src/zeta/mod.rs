//! Riemann zeta on the critical line.

mod critical;
mod hybrid;
mod scan;
mod zeros;

pub use critical::{
    hardy_z, hardy_z_euler_maclaurin, hardy_z_riemann_siegel, zeta_critical, zeta_euler_maclaurin, RS_MIN_HEIGHT,
};
pub use hybrid::{
    big_u, big_u_with, default_dimension_constant, hybrid_residual, hybrid_residual_with, log_p_x, log_z_x, model_dimension, p_x, p_x_smoothed, u_weight,
    window_half_width, z_x, HybridDecomposition, Weight, ZeroWindow, DEFAULT_WINDOW_TOL,
};
pub use scan::{conjecture_log, scan_max, ScanRecord, DEFAULT_STEP_CONSTANT};
pub use zeros::{
    find_zeros, ingest_zero_table, parse_zero_table, s_of_t, zero_count_main, ZeroSource, ZeroTable, FIND_ZEROS_MAX,
};
