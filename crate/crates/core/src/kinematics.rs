//! Momentum-transfer kinematics for a beam incident along +z scattering
//! into direction (θ, φ).

use crate::error::{Error, Result};
use crate::geometry::TrapGeometry;

/// The momentum-transfer triple (q_x, q_y, q̄_z) and the Gaussian form-factor
/// exponent ‖q̄·l‖² it produces in a given trap geometry.
///
/// q̄_z = −k sin²(θ/2) is the longitudinal component picked up because the
/// incident momentum points along z (an obliquity factor); it lies in [−k, 0].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumTransfer {
    pub q_x: f64,
    pub q_y: f64,
    pub qbar_z: f64,
    /// ‖q̄·l‖² = q_x²l_x² + q_y²l_y² + q̄_z²l_z², ≥ 0; zero iff θ = 0.
    pub form_exponent: f64,
    lengths: [f64; 3],
}

impl MomentumTransfer {
    /// Laguerre arguments per axis, [2q_x²l_x², 2q_y²l_y², 2q̄_z²l_z²].
    pub fn axis_arguments(&self) -> [f64; 3] {
        [
            2.0 * self.q_x * self.q_x * self.lengths[0] * self.lengths[0],
            2.0 * self.q_y * self.q_y * self.lengths[1] * self.lengths[1],
            2.0 * self.qbar_z * self.qbar_z * self.lengths[2] * self.lengths[2],
        ]
    }
}

/// Momentum transfer for incident wavenumber `k` (in 1/a_s) into (θ, φ):
/// q_x = k sinθ cosφ / 2, q_y = k sinθ sinφ / 2, q̄_z = −k sin²(θ/2).
pub fn momentum_transfer(
    k: f64,
    theta: f64,
    phi: f64,
    geom: &TrapGeometry,
) -> Result<MomentumTransfer> {
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("wavenumber must be finite and >= 0, got {k}")));
    }
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::Domain(format!(
            "polar angle must lie in [0, pi], got {theta}"
        )));
    }
    let (sin_t, cos_p, sin_p) = (theta.sin(), phi.cos(), phi.sin());
    let q_x = 0.5 * k * sin_t * cos_p;
    let q_y = 0.5 * k * sin_t * sin_p;
    let half = 0.5 * theta;
    let qbar_z = -k * half.sin() * half.sin();
    let l = geom.lengths();
    let form_exponent =
        q_x * q_x * l[0] * l[0] + q_y * q_y * l[1] * l[1] + qbar_z * qbar_z * l[2] * l[2];
    Ok(MomentumTransfer {
        q_x,
        q_y,
        qbar_z,
        form_exponent,
        lengths: l,
    })
}
