//! Quadratic Dirichlet L-functions at the central point.

mod central;
mod character;
mod scan;

pub use central::{afe_length, l_central_by_residue_classes, l_central_quadratic, MAX_CONDUCTOR, MIN_TOL};
pub use character::{is_fundamental_discriminant, kronecker_symbol};
pub use scan::{
    family_scan, family_scan_with, fundamental_discriminants, symplectic_model_dimension, FamilyScanRecord, FamilyValue, FAMILY_SCAN_MAX,
    SCAN_TOL,
};
