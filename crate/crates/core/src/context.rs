//! Incident-particle / interaction parameters and the fixed-scatterer
//! amplitude every profile in the crate scales with.
//!
//! All lengths are expressed in units of the s-wave scattering length a_s,
//! wavenumbers as the dimensionless k·a_s, cross-sections in a_s².

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Incident particle and contact-interaction parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringContext {
    k_as: f64,
    mass_ratio: f64,
}

impl ScatteringContext {
    /// `k_as` is the incident wavenumber times the s-wave length (k·a_s ≥ 0);
    /// `mass_ratio` is m/M, incident over scatterer mass (> 0).
    pub fn new(k_as: f64, mass_ratio: f64) -> Result<Self> {
        if !(k_as >= 0.0 && k_as.is_finite()) {
            return Err(Error::Domain(format!("k_as must be finite and >= 0, got {k_as}")));
        }
        if !(mass_ratio > 0.0 && mass_ratio.is_finite()) {
            return Err(Error::Domain(format!(
                "mass ratio m/M must be finite and > 0, got {mass_ratio}"
            )));
        }
        Ok(Self { k_as, mass_ratio })
    }

    pub fn k_as(&self) -> f64 {
        self.k_as
    }

    pub fn mass_ratio(&self) -> f64 {
        self.mass_ratio
    }

    /// Reduced-mass factor m/μ̄ = 1 + m/M with μ̄ = mM/(m+M).
    pub fn mass_factor(&self) -> f64 {
        1.0 + self.mass_ratio
    }

    /// Unitarized amplitude scale a_k = (a_s·m/μ̄)/(1 + i·k·a_s·m/μ̄),
    /// in units of a_s. |a_k| ≤ a_s·m/μ̄ with equality at k = 0.
    pub fn unitarized_scale(&self) -> Complex64 {
        let a = self.mass_factor();
        Complex64::new(a, 0.0) / Complex64::new(1.0, self.k_as * a)
    }
}

/// Amplitude of a fixed scatterer: f = −a_k, independent of direction.
pub fn fixed_scatterer_amplitude(ctx: &ScatteringContext) -> Complex64 {
    -ctx.unitarized_scale()
}

/// Relative residual of the optical theorem for the fixed-scatterer
/// amplitude, |4π|f|² − (4π/k)·Im f| / (4π|f|²). Zero in exact arithmetic.
pub fn optical_theorem_residual(ctx: &ScatteringContext) -> Result<f64> {
    if ctx.k_as <= 0.0 {
        return Err(Error::Domain(
            "optical theorem needs k > 0 (total and forward parts both vanish at k = 0)".into(),
        ));
    }
    let f = fixed_scatterer_amplitude(ctx);
    let sigma = 4.0 * std::f64::consts::PI * f.norm_sqr();
    let forward = 4.0 * std::f64::consts::PI / ctx.k_as * f.im;
    Ok((sigma - forward).abs() / sigma)
}
