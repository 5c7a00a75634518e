//! Independent brute-force validators: direct numerical quadrature of the
//! scattering integrals over |ψ_n|², literal occupation-weighted sums, and
//! the Laguerre root finder behind the zero-counting checks.
//!
//! Nothing here shares code with the closed forms it checks: eigenfunctions
//! are evaluated by the normalized Hermite recurrence, integrals by
//! Gauss-Legendre panels, roots by scan-and-bisect.

use num_complex::Complex64;

use crate::context::ScatteringContext;
use crate::error::{Error, Result};
use crate::geometry::TrapGeometry;
use crate::kinematics::momentum_transfer;
use crate::single::OscillatorState;
use crate::specfun::{laguerre, oscillator_eigenfunction};
use crate::thermal::{occupation, ThermalEnsemble};

/// Controls for the quadrature oracle.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Gauss-Legendre points per axis for the base evaluation; the result
    /// is accepted once doubling changes it by less than `tolerance`.
    pub points: usize,
    /// Integration window beyond the classical turning point, in units of
    /// the oscillator length: |x| ≤ (sqrt(2n+1) + margin)·l.
    pub margin: f64,
    /// Absolute accept threshold on the doubling difference, relative to
    /// the fixed-scatterer scale |a_k|.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            points: 512,
            margin: 8.0,
            tolerance: 1e-10,
        }
    }
}

/// Gauss-Legendre nodes and weights on [−1, 1] by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and P'_n(x) by upward recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// One axis of the scattering integral: ∫ e^{−2i q u} |ψ_n(u)|² du over
/// |u| ≤ (sqrt(2n+1) + margin)·l, as a complex number.
fn axis_integral(n: usize, q: f64, l: f64, points: usize, margin: f64) -> Complex64 {
    let cut = ((2.0 * n as f64 + 1.0).sqrt() + margin) * l;
    let (nodes, weights) = gauss_legendre(points);
    let mut acc = Complex64::new(0.0, 0.0);
    for (xi, wi) in nodes.iter().zip(weights.iter()) {
        let u = cut * xi;
        let psi = oscillator_eigenfunction(n, u, l);
        let density = psi * psi;
        let phase = Complex64::new(0.0, -2.0 * q * u).exp();
        acc += wi * cut * density * phase;
    }
    acc
}

fn axis_integral_converged(
    n: usize,
    q: f64,
    l: f64,
    spec: &QuadratureSpec,
    scale: f64,
) -> Result<Complex64> {
    let coarse = axis_integral(n, q, l, spec.points, spec.margin);
    let fine = axis_integral(n, q, l, spec.points * 2, spec.margin);
    let err = (fine - coarse).norm();
    if err > spec.tolerance * scale {
        return Err(Error::NonConvergence {
            what: "quadrature axis integral",
            achieved: err,
            target: spec.tolerance * scale,
        });
    }
    Ok(fine)
}

/// Brute-force scattering amplitude: the phase factor integrated against
/// |ψ_n|² axis by axis, times −a_k. This is the integral the closed forms
/// of [`crate::single`] resum; agreement validates them including phase.
pub fn quadrature_amplitude(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    state: &OscillatorState,
    theta: f64,
    phi: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let max_n = match *state {
        OscillatorState::OneD { n_x } => n_x,
        OscillatorState::TwoD { n_x, n_y } => n_x.max(n_y),
        OscillatorState::ThreeD { n_x, n_y, n_z } => n_x.max(n_y).max(n_z),
    };
    if max_n > 30 {
        return Err(Error::Unsupported(
            "quadrature oracle is validated for quantum numbers up to 30".into(),
        ));
    }
    let q = momentum_transfer(ctx.k_as(), theta, phi, geom)?;
    let l = geom.lengths();
    let mut form = Complex64::new(1.0, 0.0);
    match *state {
        OscillatorState::OneD { n_x } => {
            form *= axis_integral_converged(n_x, q.q_x, l[0], spec, 1.0)?;
        }
        OscillatorState::TwoD { n_x, n_y } => {
            form *= axis_integral_converged(n_x, q.q_x, l[0], spec, 1.0)?;
            form *= axis_integral_converged(n_y, q.q_y, l[1], spec, 1.0)?;
        }
        OscillatorState::ThreeD { n_x, n_y, n_z } => {
            form *= axis_integral_converged(n_x, q.q_x, l[0], spec, 1.0)?;
            form *= axis_integral_converged(n_y, q.q_y, l[1], spec, 1.0)?;
            form *= axis_integral_converged(n_z, q.qbar_z, l[2], spec, 1.0)?;
        }
    }
    Ok(-ctx.unitarized_scale() * form)
}

/// Literal occupation-weighted triple sum with hard caps and no early
/// termination: Σ_{n ≤ caps} n̄_n Π_α L_{n_α}(2q_α²l_α²) · e^{−‖q̄·l‖²},
/// times −a_k. Small systems only: errors when occupation at a cap edge is
/// not yet negligible.
pub fn direct_thermal_sum(
    ctx: &ScatteringContext,
    ens: &ThermalEnsemble,
    theta: f64,
    phi: f64,
    caps: [usize; 3],
) -> Result<Complex64> {
    if caps.iter().any(|&c| c > 400)
        || caps.iter().map(|&c| (c + 1) as f64).product::<f64>() > 8e6
    {
        return Err(Error::Unsupported(
            "direct_thermal_sum is a small-system oracle (caps at most 400 per axis, 8e6 states)"
                .into(),
        ));
    }
    let q = momentum_transfer(ctx.k_as(), theta, phi, &ens.geom)?;
    let r = ens.geom.level_spacings();
    let x = q.axis_arguments();
    let condensed = ens.is_condensed();
    // cap adequacy: the occupation just past each cap edge must be negligible
    for a in 0..3 {
        let edge = (caps[a] + 1) as f64 * r[a];
        let occ_edge = occupation(edge, ens)?;
        if occ_edge > 1e-12 * ens.n.max(1.0) {
            return Err(Error::Unsupported(format!(
                "cap exceeded on axis {a}: occupation {occ_edge:.3e} at the edge"
            )));
        }
    }
    let mut sum = 0.0;
    for nx in 0..=caps[0] {
        for ny in 0..=caps[1] {
            for nz in 0..=caps[2] {
                if condensed && nx == 0 && ny == 0 && nz == 0 {
                    continue;
                }
                let e = nx as f64 * r[0] + ny as f64 * r[1] + nz as f64 * r[2];
                let occ = occupation(e, ens)?;
                sum += occ * laguerre(nx, x[0]) * laguerre(ny, x[1]) * laguerre(nz, x[2]);
            }
        }
    }
    if condensed {
        sum += ens.condensate;
    }
    Ok(-ctx.unitarized_scale() * (-q.form_exponent).exp() * sum)
}

/// All n roots of the Laguerre polynomial L_n, by sign-change scanning on
/// (0, 4n+2] and bisection refinement.
pub fn laguerre_roots(n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let upper = 4.0 * n as f64 + 2.0;
    let steps = 200 * n;
    let mut roots = Vec::with_capacity(n);
    let mut prev_x = 1e-12;
    let mut prev_v = laguerre(n, prev_x);
    for i in 1..=steps {
        let x = upper * i as f64 / steps as f64;
        let v = laguerre(n, x);
        if prev_v == 0.0 {
            roots.push(prev_x);
        } else if prev_v.signum() != v.signum() {
            let (mut lo, mut hi) = (prev_x, x);
            let mut f_lo = prev_v;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                let f_mid = laguerre(n, mid);
                if f_mid == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if f_mid.signum() == f_lo.signum() {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    debug_assert_eq!(roots.len(), n, "L_{n} must have exactly {n} positive roots");
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::single::{amplitude_1d, amplitude_3d};
    use crate::thermal::{
        solve_fugacity, thermal_amplitude_direct, thermal_amplitude_fast, CutoffPolicy,
        EnsembleSpec, Statistics,
    };

    fn ctx(k_as: f64) -> ScatteringContext {
        ScatteringContext::new(k_as, 0.1).unwrap()
    }

    fn iso() -> TrapGeometry {
        TrapGeometry::isotropic(1.0).unwrap()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        // degree-7 exact: ∫ x^6 dx over [−1,1] = 2/7
        let s: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(6)).sum();
        assert!((s - 2.0 / 7.0).abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        // odd count keeps the central node at zero
        let (x9, _) = gauss_legendre(9);
        assert_eq!(x9[4], 0.0);
    }

    #[test]
    fn eigenfunctions_are_normalized() {
        let (nodes, weights) = gauss_legendre(600);
        for &n in &[0usize, 3, 7, 15, 30] {
            let l = 1.3;
            let cut = ((2.0 * n as f64 + 1.0).sqrt() + 8.0) * l;
            let mut norm = 0.0;
            for (xi, wi) in nodes.iter().zip(weights.iter()) {
                let u = cut * xi;
                let psi = oscillator_eigenfunction(n, u, l);
                norm += wi * cut * psi * psi;
            }
            assert!((norm - 1.0).abs() < 1e-10, "n={n}: {norm}");
        }
    }

    #[test]
    fn quadrature_matches_1d_closed_form() {
        let c = ctx(4.0);
        let g = iso();
        let spec = QuadratureSpec::default();
        for &n in &[0usize, 1, 3, 5] {
            for &(theta, phi) in &[(0.4, 0.0), (1.4, 2.2), (3.0, 0.9)] {
                let state = OscillatorState::OneD { n_x: n };
                let oracle = quadrature_amplitude(&c, &g, &state, theta, phi, &spec).unwrap();
                let closed = amplitude_1d(&c, &g, n, theta, phi).unwrap();
                assert!(
                    (oracle - closed).norm() < 1e-8 * closed.norm().max(1e-12),
                    "n={n} θ={theta}: {oracle} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn quadrature_matches_3d_closed_form_in_phase() {
        let c = ctx(2.0);
        let g = TrapGeometry::anisotropic(1.0, 0.8, 1.4).unwrap();
        let spec = QuadratureSpec::default();
        let state = OscillatorState::ThreeD { n_x: 5, n_y: 1, n_z: 0 };
        for &(theta, phi) in &[(std::f64::consts::FRAC_PI_3, 0.7), (2.4, 4.0)] {
            let oracle = quadrature_amplitude(&c, &g, &state, theta, phi, &spec).unwrap();
            let closed = amplitude_3d(&c, &g, &state, theta, phi).unwrap();
            // complex agreement, not merely modulus
            assert!(
                (oracle - closed).norm() < 1e-8 * closed.norm().max(1e-12),
                "θ={theta}: {oracle} vs {closed}"
            );
        }
    }

    #[test]
    fn quadrature_forward_is_exact() {
        let c = ctx(2.0);
        let g = iso();
        let spec = QuadratureSpec::default();
        let oracle = quadrature_amplitude(
            &c,
            &g,
            &OscillatorState::ground_3d(),
            0.0,
            0.0,
            &spec,
        )
        .unwrap();
        let expected = -c.unitarized_scale();
        assert!((oracle - expected).norm() < 1e-12);
    }

    #[test]
    fn doubling_shrinks_the_quadrature_error() {
        let g = iso();
        let n = 6;
        let q = 2.3;
        let base = axis_integral(n, q, 1.0, 256, 8.0);
        let twice = axis_integral(n, q, 1.0, 512, 8.0);
        let four = axis_integral(n, q, 1.0, 1024, 8.0);
        let err1 = (twice - base).norm();
        let err2 = (four - twice).norm();
        assert!(err2 <= err1.max(1e-15), "{err2} vs {err1}");
        let _ = g;
    }

    #[test]
    fn literal_sum_agrees_with_direct_and_fast_paths() {
        let c = ctx(2.0);
        let g = iso();
        let ens = solve_fugacity(
            &EnsembleSpec { statistics: Statistics::Bose, n: 5.0, t: 1.5 },
            &g,
        )
        .unwrap();
        let caps = [80, 80, 80];
        for &(theta, phi) in &[(0.5, 0.0), (2.0, 1.0)] {
            let lit = direct_thermal_sum(&c, &ens, theta, phi, caps).unwrap();
            let dir =
                thermal_amplitude_direct(&c, &ens, theta, phi, &CutoffPolicy::default()).unwrap();
            let fast = thermal_amplitude_fast(&c, &ens, theta, phi).unwrap();
            assert!((lit - dir).norm() < 1e-10 * lit.norm().max(1e-12));
            assert!((lit - fast).norm() < 1e-10 * lit.norm().max(1e-12));
        }
    }

    #[test]
    fn literal_sum_boltzmann_cross_path() {
        let c = ctx(2.0);
        let ens = ThermalEnsemble::boltzmann(1.0, 2.0, iso()).unwrap();
        for &(theta, phi) in &[(0.9, 0.0), (2.2, 0.5)] {
            let lit = direct_thermal_sum(&c, &ens, theta, phi, [120, 120, 120]).unwrap();
            let fast = thermal_amplitude_fast(&c, &ens, theta, phi).unwrap();
            assert!(
                (lit - fast).norm() < 1e-10 * lit.norm().max(1e-300),
                "θ={theta}: {lit} vs {fast}"
            );
        }
    }

    #[test]
    fn literal_sum_fermi_t_zero_limit_matches_shell_filling() {
        // a cold Fermi ensemble approaches the N = 4 shell-filled profile
        // (the smearing across the closed-shell gap scales as e^{−1/2t})
        let c = ctx(2.0);
        let g = iso();
        let ens = solve_fugacity(
            &EnsembleSpec { statistics: Statistics::Fermi, n: 4.0, t: 0.02 },
            &g,
        )
        .unwrap();
        for &(theta, phi) in &[(0.6, 0.0), (1.8, 2.0)] {
            let lit = direct_thermal_sum(&c, &ens, theta, phi, [60, 60, 60]).unwrap();
            let frozen = crate::thermal::fermi_ground_profile(
                &c,
                &g,
                4,
                theta,
                phi,
                crate::thermal::FermiGroundMode::Exact,
            )
            .unwrap();
            let rel = (lit.norm_sqr() - frozen).abs() / frozen.max(1e-300);
            assert!(rel < 1e-6, "θ={theta}: {} vs {frozen}", lit.norm_sqr());
        }
    }

    #[test]
    fn literal_sum_rejects_insufficient_caps() {
        let c = ctx(2.0);
        let ens = solve_fugacity(
            &EnsembleSpec { statistics: Statistics::Bose, n: 5.0, t: 30.0 },
            &iso(),
        )
        .unwrap();
        assert!(matches!(
            direct_thermal_sum(&c, &ens, 0.5, 0.0, [40, 40, 40]),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn laguerre_root_finder() {
        // L_1: root at exactly 1; L_2: 2 ± √2
        let r1 = laguerre_roots(1);
        assert_eq!(r1.len(), 1);
        assert!((r1[0] - 1.0).abs() < 1e-12);
        let r2 = laguerre_roots(2);
        assert!((r2[0] - (2.0 - std::f64::consts::SQRT_2)).abs() < 1e-12);
        assert!((r2[1] - (2.0 + std::f64::consts::SQRT_2)).abs() < 1e-12);
        // L_5's largest root is just above the FIG-2 window edge 12.5
        let r5 = laguerre_roots(5);
        assert_eq!(r5.len(), 5);
        assert!((r5[4] - 12.640_800_844_275_784).abs() < 1e-9);
        assert_eq!(r5.iter().filter(|&&r| r < 12.5).count(), 4);
        for n in 1..=12 {
            let roots = laguerre_roots(n);
            assert_eq!(roots.len(), n);
            for w in roots.windows(2) {
                assert!(w[0] < w[1]);
            }
            // each root is bracketed by a sign change within 1e-10 relative
            for r in roots {
                let lo = laguerre(n, r * (1.0 - 1e-10));
                let hi = laguerre(n, r * (1.0 + 1e-10));
                assert!(
                    lo == 0.0 || hi == 0.0 || lo.signum() != hi.signum(),
                    "n={n} root {r}: {lo} .. {hi}"
                );
            }
        }
    }
}
