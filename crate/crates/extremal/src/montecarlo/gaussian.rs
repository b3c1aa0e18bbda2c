use crate::error::{domain, Result};

/// Extreme-value location √(2·V·L) of e^L Gaussian samples of variance V.
pub fn gaussian_sampling_max(variance: f64, log_sample_count: f64) -> Result<f64> {
    if !(variance > 0.0 && variance.is_finite()) {
        return domain(format!("variance must be positive, got {variance}"));
    }
    if !(log_sample_count > 0.0 && log_sample_count.is_finite()) {
        return domain(format!("log sample count must be positive, got {log_sample_count}"));
    }
    Ok((2.0 * variance * log_sample_count).sqrt())
}
