//! Numerical laboratory for the extreme values of the Riemann zeta function
//! and of quadratic Dirichlet L-functions at the central point.

pub mod analysis;
pub mod ensembles;
pub mod error;
pub mod families;
pub mod mathfn;
pub mod montecarlo;
pub mod zeta;

pub use error::{Error, Result};
