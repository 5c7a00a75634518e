//! Property-based invariants across the amplitude modules.

use proptest::prelude::*;

use trapscat::condensate::{double_well_profile, lattice_profile};
use trapscat::context::{fixed_scatterer_amplitude, optical_theorem_residual};
use trapscat::kinematics::momentum_transfer;
use trapscat::single::{amplitude_3d, amplitude_fixed_configuration};
use trapscat::specfun::{laguerre, laguerre_sum_geometric};
use trapscat::thermal::{thermal_amplitude_fast, ThermalEnsemble};
use trapscat::{ArrayGeometry, OscillatorState, ScatteringContext, Statistics, TrapGeometry};

fn geometry() -> impl Strategy<Value = TrapGeometry> {
    (0.5f64..2.0, 0.5f64..2.0, 0.5f64..2.0)
        .prop_map(|(a, b, c)| TrapGeometry::anisotropic(a, b, c).unwrap())
}

fn context() -> impl Strategy<Value = ScatteringContext> {
    (0.1f64..6.0, 0.02f64..1.0).prop_map(|(k, m)| ScatteringContext::new(k, m).unwrap())
}

proptest! {
    #[test]
    fn momentum_transfer_form_is_nonnegative_and_vanishes_forward(
        ctx in context(),
        geom in geometry(),
        theta in 0.0f64..std::f64::consts::PI,
        phi in 0.0f64..(2.0 * std::f64::consts::PI),
    ) {
        let q = momentum_transfer(ctx.k_as(), theta, phi, &geom).unwrap();
        prop_assert!(q.form_exponent >= 0.0);
        prop_assert!(q.qbar_z <= 0.0 && q.qbar_z >= -ctx.k_as());
        let q0 = momentum_transfer(ctx.k_as(), 0.0, phi, &geom).unwrap();
        prop_assert_eq!(q0.form_exponent, 0.0);
    }

    #[test]
    fn optical_theorem_residual_stays_tiny(
        k in 0.05f64..10.0,
        m in 0.02f64..2.0,
    ) {
        let ctx = ScatteringContext::new(k, m).unwrap();
        prop_assert!(optical_theorem_residual(&ctx).unwrap() < 1e-12);
    }

    #[test]
    fn amplitude_modulus_never_exceeds_the_fixed_scatterer(
        ctx in context(),
        geom in geometry(),
        theta in 0.0f64..std::f64::consts::PI,
        phi in 0.0f64..(2.0 * std::f64::consts::PI),
        nx in 0usize..8,
        ny in 0usize..8,
        nz in 0usize..8,
    ) {
        // |L_n(x)| e^{-x/2} ≤ 1 per axis, so |f| ≤ |a_k| pointwise
        let state = OscillatorState::ThreeD { n_x: nx, n_y: ny, n_z: nz };
        let f = amplitude_3d(&ctx, &geom, &state, theta, phi).unwrap();
        let cap = fixed_scatterer_amplitude(&ctx).norm();
        prop_assert!(f.norm() <= cap * (1.0 + 1e-12));
    }

    #[test]
    fn forward_amplitude_counts_scatterers(
        ctx in context(),
        geom in geometry(),
        phi in 0.0f64..(2.0 * std::f64::consts::PI),
        states in prop::collection::vec((0usize..6, 0usize..6, 0usize..6), 1..7),
    ) {
        let config: Vec<OscillatorState> = states
            .iter()
            .map(|&(x, y, z)| OscillatorState::ThreeD { n_x: x, n_y: y, n_z: z })
            .collect();
        let f = amplitude_fixed_configuration(&ctx, &geom, &config, 0.0, phi).unwrap();
        let expected = fixed_scatterer_amplitude(&ctx) * config.len() as f64;
        prop_assert!((f - expected).norm() < 1e-12 * expected.norm());
    }

    #[test]
    fn geometric_laguerre_sum_matches_truncation(
        s in 0.0f64..0.9,
        x in 0.0f64..4.0,
    ) {
        let closed = laguerre_sum_geometric(s, x).unwrap();
        let mut direct = 0.0;
        let mut sp = 1.0;
        let mut n = 0usize;
        loop {
            direct += sp * laguerre(n, x);
            sp *= s;
            n += 1;
            if sp * (x / 2.0).exp() / (1.0 - s) < 1e-12 * closed.abs() || n > 4000 {
                break;
            }
        }
        // floor: rounding of n near-unit terms that cancel down to `closed`
        let accumulation = 1e-13 * (x / 2.0).exp() / (1.0 - s);
        prop_assert!((closed - direct).abs() < 1e-10 * closed.abs() + accumulation);
    }

    #[test]
    fn thermal_forward_counts_particles(
        t in 0.2f64..20.0,
        z in 0.05f64..0.95,
        fermi in any::<bool>(),
        geom in geometry(),
        ctx in context(),
    ) {
        let stats = if fermi { Statistics::Fermi } else { Statistics::Bose };
        let ens = ThermalEnsemble::with_fugacity(stats, t, z, geom).unwrap();
        let f = thermal_amplitude_fast(&ctx, &ens, 0.0, 0.0).unwrap();
        let expected = fixed_scatterer_amplitude(&ctx) * ens.n;
        prop_assert!((f - expected).norm() < 1e-10 * expected.norm());
    }

    #[test]
    fn interference_profiles_stay_bounded(
        ctx in context(),
        geom in geometry(),
        theta in 0.0f64..std::f64::consts::PI,
        phi in 0.0f64..(2.0 * std::f64::consts::PI),
        wells in 1u32..12,
        spacing in 0.0f64..20.0,
        n in 1.0f64..1e5,
    ) {
        let array = ArrayGeometry::new(wells, spacing).unwrap();
        let single = trapscat::condensate::bec_ground_profile(&ctx, &geom, n, theta, phi).unwrap();
        let lattice = lattice_profile(&ctx, &geom, n, &array, theta, phi).unwrap();
        prop_assert!(lattice >= 0.0);
        prop_assert!(lattice <= (wells as f64).powi(2) * single * (1.0 + 1e-9) + 1e-300);
        let dw = double_well_profile(&ctx, &geom, n, spacing, theta, phi).unwrap();
        prop_assert!(dw >= 0.0 && dw <= 4.0 * single * (1.0 + 1e-9) + 1e-300);
    }
}
