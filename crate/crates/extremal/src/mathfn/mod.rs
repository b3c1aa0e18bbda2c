//! Special functions and arithmetic tables.

mod arith;
mod barnes;
mod expint;
mod gamma;
pub mod quad;
mod sieve;
mod theta;

pub use arith::{arithmetic_factor_a, log_arith_factor_with_cutoff, PRIME_CUTOFF_CAP};
pub use barnes::{log_barnes_g, log_barnes_ratio, log_barnes_ratio_leading, ZETA_PRIME_MINUS_ONE};
pub use expint::exp_integral_e1;
pub(crate) use gamma::BERNOULLI_EVEN;
pub use gamma::{lgamma, log_gamma, log_gamma_complex, EULER_GAMMA, LN_SQRT_2PI};
pub use sieve::{primes_up_to, sieve_von_mangoldt, smallest_prime_factors, VonMangoldtTable, SIEVE_MAX};
pub use theta::{riemann_siegel_theta, theta_derivative, theta_direct};
