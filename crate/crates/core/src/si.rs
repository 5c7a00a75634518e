//! Thin SI bridge. Everything inside the crate is dimensionless (lengths in
//! a_s, temperatures as t = k_B T / ħω); these helpers convert laboratory
//! numbers at the boundary.

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s (2019 SI).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (exact, 2019 SI).
pub const K_B: f64 = 1.380_649e-23;

/// Dimensionless temperature t = k_B T / ħω for T in kelvin and ω in rad/s.
pub fn reduced_temperature(temperature_k: f64, omega: f64) -> Result<f64> {
    if !(temperature_k >= 0.0 && temperature_k.is_finite()) {
        return Err(Error::Domain(format!("temperature must be >= 0 K, got {temperature_k}")));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!("omega must be > 0 rad/s, got {omega}")));
    }
    Ok(K_B * temperature_k / (HBAR * omega))
}

/// Oscillator length sqrt(ħ/Mω) in metres.
pub fn oscillator_length_m(mass_kg: f64, omega: f64) -> Result<f64> {
    if !(mass_kg > 0.0 && mass_kg.is_finite()) {
        return Err(Error::Domain(format!("mass must be > 0 kg, got {mass_kg}")));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!("omega must be > 0 rad/s, got {omega}")));
    }
    Ok((HBAR / (mass_kg * omega)).sqrt())
}

/// Trap frequency in rad/s from an oscillator length in metres.
pub fn trap_frequency(mass_kg: f64, length_m: f64) -> Result<f64> {
    if !(mass_kg > 0.0 && mass_kg.is_finite()) {
        return Err(Error::Domain(format!("mass must be > 0 kg, got {mass_kg}")));
    }
    if !(length_m > 0.0 && length_m.is_finite()) {
        return Err(Error::Domain(format!("length must be > 0 m, got {length_m}")));
    }
    Ok(HBAR / (mass_kg * length_m * length_m))
}
