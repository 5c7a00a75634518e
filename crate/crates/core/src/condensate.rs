//! Condensate-sector closed forms: the T→0 Bose cross-section and total
//! cross-section, trap-gas thermodynamics (condensation temperature, the
//! small-momentum polylog expansion, condensate fraction with finite-size
//! and interaction corrections), the mean-field width scaling, and the
//! double-well / optical-lattice interference profiles.

use crate::context::ScatteringContext;
use crate::error::{Error, Result};
use crate::geometry::TrapGeometry;
use crate::kinematics::momentum_transfer;
use crate::solve::newton_bracketed;
use crate::specfun::{polylog, PolylogKind, ZETA_2, ZETA_3};
use crate::thermal::{excited_capacity, excited_form_condensed};

/// Largest q²l̄² for which the truncated expansion of
/// [`expansion_series`] is considered reliable.
pub const EXPANSION_RELIABLE_MAX: f64 = 0.1;

/// Condensation temperature t_c = (N/ζ(3))^{1/3} of the isotropic trap,
/// in units of ħω/k_B.
pub fn critical_temperature(n: f64) -> Result<f64> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::Domain(format!("particle number must be > 0, got {n}")));
    }
    Ok((n / ZETA_3).cbrt())
}

/// T→0 condensate profile: D = |N a_k|² e^{−2‖q̄·l‖²}.
pub fn bec_ground_profile(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    n: f64,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    let q = momentum_transfer(ctx.k_as(), theta, phi, geom)?;
    let ak2 = ctx.unitarized_scale().norm_sqr();
    Ok(n * n * ak2 * (-2.0 * q.form_exponent).exp())
}

/// Result of the angular integration of a profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSection {
    /// σ in units of a_s².
    pub sigma: f64,
    /// Difference between the two finest quadrature levels.
    pub error_estimate: f64,
}

/// Total cross-section of the T→0 condensate profile,
/// σ = ∫₀^π dθ ∫₀^{2π} dφ D(θ,φ) sinθ, by nested quadrature with
/// refinement until the estimate stabilizes. At k→0 this approaches
/// [`total_cross_section_zero_energy`].
pub fn total_cross_section(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    n: f64,
) -> Result<CrossSection> {
    let profile = |theta: f64, phi: f64| bec_ground_profile(ctx, geom, n, theta, phi);
    integrate_profile(profile, geom.is_isotropic())
}

/// k→0 limit of the condensate cross-section: 4π |N a_s m/μ̄|² (in a_s²).
pub fn total_cross_section_zero_energy(ctx: &ScatteringContext, n: f64) -> f64 {
    let a0 = n * ctx.mass_factor();
    4.0 * std::f64::consts::PI * a0 * a0
}

/// Integrates D(θ,φ)·sinθ over the sphere. Gauss-Legendre in cosθ;
/// azimuthally symmetric profiles integrate φ analytically, others use a
/// periodic trapezoid rule in φ.
pub(crate) fn integrate_profile<F>(profile: F, azimuthally_symmetric: bool) -> Result<CrossSection>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let mut last: Option<f64> = None;
    let mut n_mu = 32usize;
    for _ in 0..6 {
        let (nodes, weights) = crate::validate::gauss_legendre(n_mu);
        let n_phi = if azimuthally_symmetric { 1 } else { n_mu.max(32) };
        let mut total = 0.0;
        for (mu, w) in nodes.iter().zip(weights.iter()) {
            let theta = mu.clamp(-1.0, 1.0).acos();
            if azimuthally_symmetric {
                total += w * 2.0 * std::f64::consts::PI * profile(theta, 0.0)?;
            } else {
                let mut ring = 0.0;
                for i in 0..n_phi {
                    let phi = 2.0 * std::f64::consts::PI * i as f64 / n_phi as f64;
                    ring += profile(theta, phi)?;
                }
                total += w * 2.0 * std::f64::consts::PI * ring / n_phi as f64;
            }
        }
        if let Some(prev) = last {
            let err = (total - prev).abs();
            if err <= 1e-9 * total.abs().max(1e-300) {
                return Ok(CrossSection { sigma: total, error_estimate: err });
            }
        }
        last = Some(total);
        n_mu *= 2;
    }
    Err(Error::NonConvergence {
        what: "cross-section quadrature",
        achieved: last.unwrap_or(f64::NAN),
        target: 1e-9,
    })
}

/// Small-momentum expansion of the occupation-weighted Laguerre sum above
/// the condensation point (isotropic trap, equal per-axis arguments):
/// S = t³Li₃(z̃) − 6 q²l̄² t⁴Li₄(z̃) + (q²l̄²)²[12 t⁵Li₅(z̃) + 3 t⁴Li₄(z̃)],
/// with q² = q_x² + q_y² + q̄_z². Valid for q²l̄² ≤ [`EXPANSION_RELIABLE_MAX`].
pub fn expansion_series(t: f64, fugacity: f64, q_sq_lbar_sq: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("temperature must be > 0, got {t}")));
    }
    if q_sq_lbar_sq < 0.0 {
        return Err(Error::Domain(format!("q²l̄² must be >= 0, got {q_sq_lbar_sq}")));
    }
    let li3 = polylog(3, fugacity, PolylogKind::Bose)?;
    let li4 = polylog(4, fugacity, PolylogKind::Bose)?;
    let li5 = polylog(5, fugacity, PolylogKind::Bose)?;
    let u = q_sq_lbar_sq;
    let t3 = t * t * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    Ok(t3 * li3 - 6.0 * u * t4 * li4 + u * u * (12.0 * t5 * li5 + 3.0 * t4 * li4))
}

/// Condensate fraction N₀/N. Ideal: 1 − (t/t_c)³. With corrections, the
/// finite-size and lowest-order interaction terms are subtracted:
/// 3t²ζ(2)/(2t_c³ζ(3)) and 4.932 t^{7/2} ã_s/(t_c³ ζ(3) l̄).
/// `a_tilde` and `l_bar` share units (a_s). Clamped at zero.
pub fn condensate_fraction(t: f64, t_c: f64, a_tilde: f64, l_bar: f64, corrections: bool) -> f64 {
    let ideal = 1.0 - (t / t_c).powi(3);
    let frac = if corrections {
        ideal - 1.5 * t * t * ZETA_2 / (t_c.powi(3) * ZETA_3)
            - 4.932 * t.powf(3.5) * a_tilde / (t_c.powi(3) * ZETA_3 * l_bar)
    } else {
        ideal
    };
    frac.max(0.0)
}

/// Mean-field width of the condensate: ℓ̃ = u·l̄ with u ≥ 1 the root of
/// u⁵ − u = sqrt(2/π)·N₀·ã_s/l̄ (Gaussian variational minimization).
/// `a_tilde` and `l_bar` share units (a_s).
pub fn variational_width(n0: f64, a_tilde: f64, l_bar: f64) -> Result<f64> {
    if n0 < 0.0 || a_tilde < 0.0 || l_bar <= 0.0 {
        return Err(Error::Domain(format!(
            "need n0 >= 0, a_tilde >= 0, l_bar > 0; got {n0}, {a_tilde}, {l_bar}"
        )));
    }
    let rhs = (2.0 / std::f64::consts::PI).sqrt() * n0 * a_tilde / l_bar;
    if rhs == 0.0 {
        return Ok(l_bar);
    }
    let hi = (rhs + 2.0).powf(0.2) + 1.0;
    let u = newton_bracketed(
        |u| u * u * u * u * u - u - rhs,
        |u| 5.0 * u * u * u * u - 1.0,
        1.0,
        hi,
        rhs.powf(0.2).max(1.05),
        1e-12 * (1.0 + rhs),
        200,
        "variational width",
    )?;
    Ok(u * l_bar)
}

/// Condensate split prepared once per (N, t, ã_s) and shared by profile
/// sweeps: the condensate number, the width scale ℓ̃/l̄, and the
/// normalization that makes the thermal cloud carry exactly N − N₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondensateParams {
    pub n: f64,
    pub t: f64,
    pub t_c: f64,
    pub a_tilde: f64,
    /// Condensate number N₀.
    pub n0: f64,
    /// ℓ̃/l̄ ≥ 1 from the variational width.
    pub width_scale: f64,
    /// Rescaling of the z̃ = 1 excited-state cloud so its forward value is N − N₀.
    pub thermal_norm: f64,
}

/// Resolves the condensate sector below t_c. With `corrections` off, N₀ is
/// the exact-level split N − Σ_{n≠0} n̄_n(z̃=1) (the thermodynamic-limit
/// formula 1 − (t/t_c)³ is its large-N limit, exposed by
/// [`condensate_fraction`]); with `corrections` on, N₀ comes from the
/// corrected fraction and the thermal cloud is rescaled to carry N − N₀.
pub fn resolve_condensate(
    geom: &TrapGeometry,
    n: f64,
    t: f64,
    a_tilde: f64,
    corrections: bool,
) -> Result<CondensateParams> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::Domain(format!("particle number must be > 0, got {n}")));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("temperature must be >= 0, got {t}")));
    }
    if a_tilde < 0.0 {
        return Err(Error::Domain(format!("a_tilde must be >= 0, got {a_tilde}")));
    }
    let t_c = critical_temperature(n)?;
    if t >= t_c {
        return Err(Error::Domain(format!(
            "condensate sector needs t < t_c (t = {t}, t_c = {t_c:.4})"
        )));
    }
    let capacity = excited_capacity(t, geom);
    let l_bar = geom.mean_length();
    let n0 = if corrections {
        n * condensate_fraction(t, t_c, a_tilde, l_bar, true)
    } else {
        (n - capacity).max(0.0)
    };
    let n_th = (n - n0).max(0.0);
    let thermal_norm = if capacity > 0.0 && n_th > 0.0 {
        n_th / capacity
    } else {
        0.0
    };
    let width_scale = variational_width(n0, a_tilde, l_bar)? / l_bar;
    Ok(CondensateParams {
        n,
        t,
        t_c,
        a_tilde,
        n0,
        width_scale,
        thermal_norm,
    })
}

/// Composite below-t_c profile: condensate of width ℓ̃ plus the z̃ = 1
/// thermal cloud of width l̄, added coherently:
/// f̄ = −a_k [ N₀ e^{−‖q̄·ℓ̃‖²} + S_th(‖q̄·l̄‖²) ], D = |f̄|².
pub fn bec_below_tc_profile(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    n: f64,
    t: f64,
    a_tilde: f64,
    theta: f64,
    phi: f64,
    corrections: bool,
) -> Result<f64> {
    let params = resolve_condensate(geom, n, t, a_tilde, corrections)?;
    let form = below_tc_form_factor(ctx, geom, &params, theta, phi)?;
    Ok(ctx.unitarized_scale().norm_sqr() * form * form)
}

/// Real form factor N₀ e^{−Q(ℓ̃)} + C·S_exc(Q(l̄)) shared by the single-trap
/// and array profiles.
fn below_tc_form_factor(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    params: &CondensateParams,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    let l = geom.lengths();
    let u = params.width_scale;
    let scaled = TrapGeometry::anisotropic(u * l[0], u * l[1], u * l[2])?;
    let q_scaled = momentum_transfer(ctx.k_as(), theta, phi, &scaled)?;
    let condensate_part = params.n0 * (-q_scaled.form_exponent).exp();
    let thermal_part = if params.thermal_norm > 0.0 {
        let q = momentum_transfer(ctx.k_as(), theta, phi, geom)?;
        params.thermal_norm * excited_form_condensed(params.t, geom, &q)
    } else {
        0.0
    };
    Ok(condensate_part + thermal_part)
}

/// Array of condensates along x: well count and spacing (in a_s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    pub wells: u32,
    pub spacing: f64,
}

impl ArrayGeometry {
    pub fn new(wells: u32, spacing: f64) -> Result<Self> {
        if wells == 0 {
            return Err(Error::Domain("need at least one well".into()));
        }
        if !(spacing >= 0.0 && spacing.is_finite()) {
            return Err(Error::Domain(format!("spacing must be >= 0, got {spacing}")));
        }
        Ok(Self { wells, spacing })
    }

    /// Tight-binding validity: well separation large against the on-site
    /// width (d ≥ 5 l_x).
    pub fn is_tight_binding(&self, geom: &TrapGeometry) -> bool {
        self.spacing >= 5.0 * geom.lengths()[0]
    }
}

/// Grating amplitude factor sin(N′a)/sin(a) at a = k d sinθ / 2, with the
/// removable singularities at a ∈ πZ evaluated by their limit ±N′.
fn array_factor(wells: u32, k: f64, spacing: f64, theta: f64) -> f64 {
    let a = 0.5 * k * spacing * theta.sin();
    let s = a.sin();
    if s.abs() < 1e-7 {
        // near a = mπ: sin(N′a)/sin(a) → N′·cos(N′mπ)/cos(mπ) = ±N′
        let m = (a / std::f64::consts::PI).round();
        let parity = (wells as f64 - 1.0) * m;
        return if (parity as i64) % 2 == 0 { wells as f64 } else { -(wells as f64) };
    }
    (wells as f64 * a).sin() / s
}

/// Double-well interference profile at T→0 (two condensates of N each):
/// D = |N a_k|² e^{−2‖q̄·l‖²} [2 cos(π d sinθ / λ)]², λ = 2π/k.
pub fn double_well_profile(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    n_per_well: f64,
    spacing: f64,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    ArrayGeometry::new(2, spacing)?;
    let single = bec_ground_profile(ctx, geom, n_per_well, theta, phi)?;
    // π d sinθ/λ = k d sinθ/2
    let af = 2.0 * (0.5 * ctx.k_as() * spacing * theta.sin()).cos();
    Ok(single * af * af)
}

/// 1-D lattice (grating) interference profile at T→0 for N′ condensates:
/// D = |N a_k|² e^{−2‖q̄·l‖²} [sin(N′πd sinθ/λ)/sin(πd sinθ/λ)]².
pub fn lattice_profile(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    n_per_well: f64,
    array: &ArrayGeometry,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    let single = bec_ground_profile(ctx, geom, n_per_well, theta, phi)?;
    let af = array_factor(array.wells, ctx.k_as(), array.spacing, theta);
    Ok(single * af * af)
}

/// Finite-temperature array profile within the mean-field treatment on top
/// of tight binding: per-well condensates stay coherent across wells while
/// each well's thermal cloud scatters incoherently,
/// D = AF²·|a_k N₀|² e^{−2‖q̄·ℓ̃‖²} + N′·|a_k S_th|².
pub fn array_profile_finite_t(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    n_per_well: f64,
    t: f64,
    a_tilde: f64,
    array: &ArrayGeometry,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    let params = resolve_condensate(geom, n_per_well, t, a_tilde, true)?;
    let l = geom.lengths();
    let u = params.width_scale;
    let scaled = TrapGeometry::anisotropic(u * l[0], u * l[1], u * l[2])?;
    let q_scaled = momentum_transfer(ctx.k_as(), theta, phi, &scaled)?;
    let ak2 = ctx.unitarized_scale().norm_sqr();
    let af = array_factor(array.wells, ctx.k_as(), array.spacing, theta);
    let coherent = params.n0 * (-q_scaled.form_exponent).exp();
    let mut d = af * af * ak2 * coherent * coherent;
    if params.thermal_norm > 0.0 {
        let q = momentum_transfer(ctx.k_as(), theta, phi, geom)?;
        let s_th = params.thermal_norm * excited_form_condensed(t, geom, &q);
        d += array.wells as f64 * ak2 * s_th * s_th;
    }
    Ok(d)
}
