//! Trap geometry: oscillator lengths per axis and the geometric-mean
//! quantities the isotropic formulas use.

use crate::error::{Error, Result};

/// Harmonic-trap geometry. Lengths are oscillator lengths l_α = sqrt(ħ/Mω_α)
/// in units of a_s; the incident beam travels along +z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapGeometry {
    l: [f64; 3],
}

impl TrapGeometry {
    /// Isotropic trap, l_x = l_y = l_z = l̄.
    pub fn isotropic(l: f64) -> Result<Self> {
        Self::anisotropic(l, l, l)
    }

    pub fn anisotropic(l_x: f64, l_y: f64, l_z: f64) -> Result<Self> {
        for (axis, l) in [("x", l_x), ("y", l_y), ("z", l_z)] {
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::Domain(format!(
                    "oscillator length l_{axis} must be finite and > 0, got {l}"
                )));
            }
        }
        Ok(Self { l: [l_x, l_y, l_z] })
    }

    /// Oscillator lengths `[l_x, l_y, l_z]`.
    pub fn lengths(&self) -> [f64; 3] {
        self.l
    }

    /// Geometric-mean length l̄ = (l_x l_y l_z)^{1/3}.
    pub fn mean_length(&self) -> f64 {
        (self.l[0] * self.l[1] * self.l[2]).cbrt()
    }

    /// Level spacings ω_α/ω in units of the geometric-mean frequency:
    /// r_α = (l̄/l_α)², so that r_x·r_y·r_z = 1.
    pub fn level_spacings(&self) -> [f64; 3] {
        let lbar = self.mean_length();
        [
            (lbar / self.l[0]).powi(2),
            (lbar / self.l[1]).powi(2),
            (lbar / self.l[2]).powi(2),
        ]
    }

    pub fn is_isotropic(&self) -> bool {
        self.l[0] == self.l[1] && self.l[1] == self.l[2]
    }
}
