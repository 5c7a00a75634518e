//! Closed-form scattering amplitudes for a single scatterer in a definite
//! oscillator eigenstate (1-D, 2-D, 3-D traps) and the coherent sum over a
//! fixed configuration of scatterers.
//!
//! The amplitude factorizes per axis into a Gaussian times a Laguerre
//! polynomial of the momentum-transfer argument; the overall complex scale
//! is the unitarized −a_k of [`crate::context`].

use num_complex::Complex64;

use crate::context::ScatteringContext;
use crate::error::{Error, Result};
use crate::geometry::TrapGeometry;
use crate::kinematics::momentum_transfer;
use crate::specfun::laguerre;

/// Oscillator eigenstate of the scatterer; axes not present in the trap
/// dimensionality carry no quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscillatorState {
    /// Trap along x only.
    OneD { n_x: usize },
    /// Trap in the x-y plane.
    TwoD { n_x: usize, n_y: usize },
    /// Full 3-D trap.
    ThreeD { n_x: usize, n_y: usize, n_z: usize },
}

impl OscillatorState {
    pub fn ground_3d() -> Self {
        OscillatorState::ThreeD { n_x: 0, n_y: 0, n_z: 0 }
    }

    pub fn dimensionality(&self) -> usize {
        match self {
            OscillatorState::OneD { .. } => 1,
            OscillatorState::TwoD { .. } => 2,
            OscillatorState::ThreeD { .. } => 3,
        }
    }

    /// Energy in units of ħω (geometric-mean frequency), summing
    /// (n_α + 1/2)·ω_α/ω over the axes present in the trap.
    pub fn energy(&self, geom: &TrapGeometry) -> f64 {
        let r = geom.level_spacings();
        match *self {
            OscillatorState::OneD { n_x } => (n_x as f64 + 0.5) * r[0],
            OscillatorState::TwoD { n_x, n_y } => {
                (n_x as f64 + 0.5) * r[0] + (n_y as f64 + 0.5) * r[1]
            }
            OscillatorState::ThreeD { n_x, n_y, n_z } => {
                (n_x as f64 + 0.5) * r[0] + (n_y as f64 + 0.5) * r[1] + (n_z as f64 + 0.5) * r[2]
            }
        }
    }
}

/// Amplitude for a scatterer oscillating along x in state n_x:
/// f = −a_k · e^{−q_x²l_x²} · L_{n_x}(2 q_x² l_x²).
pub fn amplitude_1d(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    n_x: usize,
    theta: f64,
    phi: f64,
) -> Result<Complex64> {
    let q = momentum_transfer(ctx.k_as(), theta, phi, geom)?;
    let x = q.axis_arguments()[0];
    let form = (-0.5 * x).exp() * laguerre(n_x, x);
    Ok(-ctx.unitarized_scale() * form)
}

/// Amplitude for a scatterer trapped in the x-y plane:
/// f = −a_k · e^{−q_x²l_x² − q_y²l_y²} · L_{n_x}(2q_x²l_x²) L_{n_y}(2q_y²l_y²).
pub fn amplitude_2d(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    n_x: usize,
    n_y: usize,
    theta: f64,
    phi: f64,
) -> Result<Complex64> {
    let q = momentum_transfer(ctx.k_as(), theta, phi, geom)?;
    let a = q.axis_arguments();
    let form = (-0.5 * (a[0] + a[1])).exp() * laguerre(n_x, a[0]) * laguerre(n_y, a[1]);
    Ok(-ctx.unitarized_scale() * form)
}

/// Amplitude for a scatterer in a 3-D trap:
/// f = −a_k · e^{−‖q̄·l‖²} · Π_α L_{n_α}(2q_α²l_α²), where the z axis enters
/// through the obliquity component q̄_z.
pub fn amplitude_3d(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    state: &OscillatorState,
    theta: f64,
    phi: f64,
) -> Result<Complex64> {
    let &OscillatorState::ThreeD { n_x, n_y, n_z } = state else {
        return Err(Error::Domain(format!(
            "amplitude_3d needs a 3-D state, got {}-D",
            state.dimensionality()
        )));
    };
    let q = momentum_transfer(ctx.k_as(), theta, phi, geom)?;
    let a = q.axis_arguments();
    let form = (-q.form_exponent).exp()
        * laguerre(n_x, a[0])
        * laguerre(n_y, a[1])
        * laguerre(n_z, a[2]);
    Ok(-ctx.unitarized_scale() * form)
}

/// Differential cross-section |f|² for any of the amplitudes, in a_s².
pub fn differential_cross_section(amplitude: Complex64) -> f64 {
    amplitude.norm_sqr()
}

/// Coherent amplitude of a fixed many-scatterer configuration (all 3-D):
/// f = −a_k e^{−‖q̄·l‖²} Σ_j Π_α L_{n_{jα}}(2q_α²l_α²).
pub fn amplitude_fixed_configuration(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    states: &[OscillatorState],
    theta: f64,
    phi: f64,
) -> Result<Complex64> {
    if states.is_empty() {
        return Err(Error::Domain("configuration must contain at least one scatterer".into()));
    }
    let q = momentum_transfer(ctx.k_as(), theta, phi, geom)?;
    let a = q.axis_arguments();
    let mut sum = 0.0;
    for state in states {
        let &OscillatorState::ThreeD { n_x, n_y, n_z } = state else {
            return Err(Error::Domain(format!(
                "fixed configurations are 3-D; got a {}-D state",
                state.dimensionality()
            )));
        };
        sum += laguerre(n_x, a[0]) * laguerre(n_y, a[1]) * laguerre(n_z, a[2]);
    }
    Ok(-ctx.unitarized_scale() * (-q.form_exponent).exp() * sum)
}
