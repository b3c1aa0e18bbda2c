//! Haar ensembles U(N), Sp(N), SO(N) through their eigenangles and
//! Verblunsky coefficients, plus exact moment formulas.

pub mod charpoly;
mod moments;
mod spectrum;
pub mod verblunsky;

use serde::{Deserialize, Serialize};

pub use charpoly::{
    charpoly_at_one, im_log_charpoly, log_abs_charpoly, max_log_abs_charpoly, max_log_abs_from_coeffs,
};
pub use moments::{cue_log_moment, so_log_mgf, sp_log_mgf};
pub use spectrum::{angles_from_verblunsky, sample_spectrum, sample_spectrum_with};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Unitary,
    Symplectic,
    SpecialOrthogonalEven,
}

impl Kind {
    pub fn is_real(self) -> bool {
        !matches!(self, Kind::Unitary)
    }
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "unitary" | "u" | "cue" => Ok(Kind::Unitary),
            "symplectic" | "sp" => Ok(Kind::Symplectic),
            "orthogonal" | "so" | "specialorthogonaleven" => Ok(Kind::SpecialOrthogonalEven),
            other => Err(format!("unknown ensemble kind '{other}'")),
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Unitary => "unitary",
            Kind::Symplectic => "symplectic",
            Kind::SpecialOrthogonalEven => "orthogonal",
        })
    }
}

/// Eigenangles of one matrix. For the real groups only the N/2 angles in
/// [0, π] are stored; the spectrum is their closure under θ ↦ −θ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub kind: Kind,
    pub dimension: usize,
    pub angles: Vec<f64>,
}

impl Spectrum {
    pub fn new(kind: Kind, dimension: usize, angles: Vec<f64>) -> crate::Result<Self> {
        let expected = if kind.is_real() {
            if dimension % 2 != 0 {
                return crate::error::domain(format!("{kind} needs even dimension, got {dimension}"));
            }
            dimension / 2
        } else {
            dimension
        };
        if angles.len() != expected {
            return crate::error::domain(format!(
                "{kind}({dimension}) carries {expected} stored angles, got {}",
                angles.len()
            ));
        }
        Ok(Self { kind, dimension, angles })
    }

    /// All N eigenangles, closure-expanded for the real groups.
    pub fn full_angles(&self) -> Vec<f64> {
        if self.kind.is_real() {
            self.angles.iter().flat_map(|&a| [a, -a]).collect()
        } else {
            self.angles.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxResult {
    pub theta_star: f64,
    pub log_value: f64,
}
