//! Cross-route consistency of the thermal and condensate sectors: fast vs
//! direct summation, the small-momentum expansion against the level sums,
//! and continuity of the composite below-t_c profile with the thermal path.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trapscat::condensate::{
    bec_below_tc_profile, critical_temperature, expansion_series,
};
use trapscat::thermal::{
    solve_fugacity, thermal_amplitude_direct, thermal_amplitude_fast, ThermalEnsemble,
};
use trapscat::{
    CutoffPolicy, EnsembleSpec, ScatteringContext, Statistics, TrapGeometry,
};

#[test]
fn fast_equals_direct_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfa57);
    let policy = CutoffPolicy::default();
    for case in 0..40 {
        let stats = if case % 3 == 0 { Statistics::Fermi } else { Statistics::Bose };
        // log-uniform temperature keeps the direct sums affordable
        let t = (rng.gen_range(0.2f64.ln()..20.0f64.ln())).exp();
        let z = rng.gen_range(0.05..0.95);
        let geom = TrapGeometry::anisotropic(
            rng.gen_range(0.6..1.6),
            rng.gen_range(0.6..1.6),
            rng.gen_range(0.6..1.6),
        )
        .unwrap();
        let ctx = ScatteringContext::new(rng.gen_range(0.5..4.0), 0.1).unwrap();
        let ens = ThermalEnsemble::with_fugacity(stats, t, z, geom).unwrap();
        let theta = rng.gen_range(0.0..std::f64::consts::PI);
        let phi = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let fast = thermal_amplitude_fast(&ctx, &ens, theta, phi).unwrap();
        let direct = thermal_amplitude_direct(&ctx, &ens, theta, phi, &policy).unwrap();
        let tol = 1e-9 * fast.norm() + 1e-12 * ens.n;
        assert!(
            (fast - direct).norm() < tol,
            "case {case} {stats:?} t={t:.3} z={z:.3} θ={theta:.3}: {fast} vs {direct}"
        );
    }
}

/// Direction along which all three Laguerre arguments coincide:
/// θ* = 2·atan(1/√2), φ = π/4 puts q_x² = q_y² = q̄_z² = q²/3.
fn equal_argument_direction() -> (f64, f64) {
    (2.0 * (1.0 / std::f64::consts::SQRT_2).atan(), std::f64::consts::FRAC_PI_4)
}

#[test]
fn expansion_tracks_the_level_sum_shape() {
    // The expansion's per-axis Laguerre arguments are all 2·q²l̄²; the level
    // sum reproduces that along the equal-argument direction when each axis
    // carries q² on its own, i.e. at wavenumber k = 3√(q²). The normalized
    // shapes must agree to 1e-3 for small q²l̄², and the check is sensitive:
    // a linear coefficient off by 3 moves the shape by ~6e-3 here.
    let (theta, phi) = equal_argument_direction();
    let geom = TrapGeometry::isotropic(1.0).unwrap();
    let policy = CutoffPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xe8a);
    for _ in 0..6 {
        let t = rng.gen_range(15.0..30.0);
        let z = rng.gen_range(0.2..0.8);
        let u: f64 = rng.gen_range(0.01..0.02) / (6.0 * t);
        let k = 3.0 * u.sqrt();
        let ctx = ScatteringContext::new(k, 0.1).unwrap();
        let ens = ThermalEnsemble::with_fugacity(Statistics::Bose, t, z, geom).unwrap();
        // bare occupation-weighted Laguerre sum = form factor / e^{−Q}
        let q = trapscat::kinematics::momentum_transfer(k, theta, phi, &geom).unwrap();
        let direct = thermal_amplitude_direct(&ctx, &ens, theta, phi, &policy).unwrap();
        let bare = (direct / -ctx.unitarized_scale()).re * q.form_exponent.exp();
        let shape_direct = bare / ens.n;
        let s = expansion_series(t, z, u).unwrap();
        let s0 = expansion_series(t, z, 0.0).unwrap();
        let shape_expansion = s / s0;
        assert!(
            (shape_expansion - shape_direct).abs() < 1e-3,
            "t={t:.2} z={z:.2} u={u:.2e}: {shape_expansion} vs {shape_direct}"
        );
    }
}

#[test]
fn below_tc_composite_is_continuous_with_thermal_route() {
    // ã_s = 0, no corrections: the composite must reproduce the thermal
    // module's condensed evaluation at the same (N, t)
    let n = 1e4;
    let t = 0.5 * critical_temperature(n).unwrap();
    let geom = TrapGeometry::isotropic(1.0).unwrap();
    let ctx = ScatteringContext::new(2.0, 0.1).unwrap();
    let ens = solve_fugacity(&EnsembleSpec { statistics: Statistics::Bose, n, t }, &geom).unwrap();
    assert!(ens.is_condensed());
    for i in 0..=20 {
        let theta = std::f64::consts::PI * i as f64 / 20.0;
        let composite = bec_below_tc_profile(&ctx, &geom, n, t, 0.0, theta, 0.0, false).unwrap();
        let thermal = thermal_amplitude_fast(&ctx, &ens, theta, 0.0).unwrap().norm_sqr();
        assert!(
            (composite - thermal).abs() < 1e-6 * thermal.max(1e-300),
            "θ={theta}: {composite} vs {thermal}"
        );
    }
}

#[test]
fn boltzmann_single_particle_lab_point() {
    // ω = 1000 rad/s, T = 1e-7 K → t ≈ 13.09; fast and direct agree
    let t = trapscat::si::reduced_temperature(1e-7, 1000.0).unwrap();
    let ctx = ScatteringContext::new(2.0, 0.1).unwrap();
    let geom = TrapGeometry::isotropic(1.0).unwrap();
    let ens = ThermalEnsemble::boltzmann(1.0, t, geom).unwrap();
    let policy = CutoffPolicy::default();
    for i in 0..=10 {
        let theta = 0.55 * i as f64 / 10.0;
        let fast = thermal_amplitude_fast(&ctx, &ens, theta, 0.0).unwrap();
        let direct = thermal_amplitude_direct(&ctx, &ens, theta, 0.0, &policy).unwrap();
        assert!(
            (fast - direct).norm() < 1e-9 * fast.norm() + 1e-14,
            "θ={theta}: {fast} vs {direct}"
        );
    }
}
