//! Profile, sweep, cross-section and validation drivers behind the CLI.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trapscat::condensate::{
    array_profile_finite_t, bec_below_tc_profile, bec_ground_profile, critical_temperature,
    double_well_profile, lattice_profile, total_cross_section, total_cross_section_zero_energy,
};
use trapscat::single::{amplitude_1d, amplitude_2d, amplitude_3d};
use trapscat::thermal::{
    fermi_ground_profile, solve_fugacity, thermal_amplitude_direct, thermal_amplitude_fast,
    FermiGroundMode,
};
use trapscat::validate::{quadrature_amplitude, QuadratureSpec};
use trapscat::{
    ArrayGeometry, Complex64, CutoffPolicy, EnsembleSpec, OscillatorState, ProfilePoint,
    ScatteringContext, Statistics, ThermalEnsemble, TrapGeometry,
};

use crate::grid::GridSpec;
use crate::output::Table;
use crate::CliError;

pub type Meta = BTreeMap<String, String>;

pub fn meta_insert_f64(meta: &mut Meta, key: &str, value: f64) {
    meta.insert(key.to_string(), format!("{value:.17e}"));
}

fn profile_table(meta: Meta, points: Vec<ProfilePoint>) -> Result<Table, CliError> {
    let profile = trapscat::AngularProfile::new(points, meta)
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    Ok(Table {
        meta: profile.metadata().clone(),
        columns: vec!["theta", "phi", "D"],
        rows: profile
            .entries()
            .iter()
            .map(|p| vec![p.theta, p.phi, p.d])
            .collect(),
    })
}

fn numerical(e: trapscat::Error) -> CliError {
    CliError::Numerical(e.to_string())
}

/// Single-scatterer profile: a definite oscillator eigenstate in a 1-D,
/// 2-D or 3-D trap.
#[allow(clippy::too_many_arguments)]
pub fn run_single(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    dim: u8,
    n: [usize; 3],
    thetas: &GridSpec,
    phi: f64,
    mut meta: Meta,
) -> Result<Table, CliError> {
    let mut points = Vec::with_capacity(thetas.count);
    for theta in thetas.values() {
        let f = match dim {
            1 => amplitude_1d(ctx, geom, n[0], theta, phi),
            2 => amplitude_2d(ctx, geom, n[0], n[1], theta, phi),
            3 => {
                let state = OscillatorState::ThreeD { n_x: n[0], n_y: n[1], n_z: n[2] };
                amplitude_3d(ctx, geom, &state, theta, phi)
            }
            _ => return Err(CliError::Usage(format!("dim must be 1, 2 or 3, got {dim}"))),
        }
        .map_err(numerical)?;
        points.push(ProfilePoint { theta, phi, d: f.norm_sqr() });
    }
    meta.insert("command".into(), "single".into());
    profile_table(meta, points)
}

/// Best evaluation route for a resolved ensemble: the closed-form series
/// unless the ensemble is degenerate Fermi, which needs the direct sum.
fn thermal_amplitude_best(
    ctx: &ScatteringContext,
    ens: &ThermalEnsemble,
    theta: f64,
    phi: f64,
) -> trapscat::Result<Complex64> {
    if ens.statistics == Statistics::Fermi && ens.ln_fugacity >= 0.0 {
        thermal_amplitude_direct(ctx, ens, theta, phi, &CutoffPolicy::default())
    } else {
        thermal_amplitude_fast(ctx, ens, theta, phi)
    }
}

/// Thermal ensemble profile at fixed temperature.
#[allow(clippy::too_many_arguments)]
pub fn run_thermal_profile(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    statistics: Statistics,
    n: f64,
    t: f64,
    fermi_ground: FermiGroundMode,
    thetas: &GridSpec,
    phi: f64,
    mut meta: Meta,
) -> Result<Table, CliError> {
    meta.insert("command".into(), "thermal".into());
    let mut points = Vec::with_capacity(thetas.count);
    if statistics == Statistics::Fermi && t == 0.0 {
        let n_int = n.round() as u64;
        if (n - n_int as f64).abs() > 1e-9 {
            return Err(CliError::Usage(format!(
                "Fermi filling at t = 0 needs an integer particle number, got {n}"
            )));
        }
        for theta in thetas.values() {
            let d = fermi_ground_profile(ctx, geom, n_int, theta, phi, fermi_ground)
                .map_err(numerical)?;
            points.push(ProfilePoint { theta, phi, d });
        }
        return profile_table(meta, points);
    }
    let ens = solve_fugacity(&EnsembleSpec { statistics, n, t }, geom).map_err(numerical)?;
    if statistics != Statistics::Boltzmann {
        meta_insert_f64(&mut meta, "fugacity", ens.fugacity());
        meta_insert_f64(&mut meta, "condensate", ens.condensate);
    }
    for theta in thetas.values() {
        let f = thermal_amplitude_best(ctx, &ens, theta, phi).map_err(numerical)?;
        points.push(ProfilePoint { theta, phi, d: f.norm_sqr() });
    }
    profile_table(meta, points)
}

/// Temperature sweep of D at θ ∈ {0, π/2, π}.
pub fn run_thermal_sweep(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    statistics: Statistics,
    n: f64,
    t_grid: &GridSpec,
    mut meta: Meta,
) -> Result<Table, CliError> {
    meta.insert("command".into(), "thermal".into());
    let t_c = critical_temperature(n).map_err(numerical)?;
    meta_insert_f64(&mut meta, "t_c", t_c);
    let mut rows = Vec::with_capacity(t_grid.count);
    for t in t_grid.values() {
        if t <= 0.0 {
            return Err(CliError::Usage("sweep temperatures must be > 0".into()));
        }
        let ens = solve_fugacity(&EnsembleSpec { statistics, n, t }, geom).map_err(numerical)?;
        let mut row = vec![t, t / t_c];
        for theta in [0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI] {
            let f = thermal_amplitude_best(ctx, &ens, theta, 0.0).map_err(numerical)?;
            row.push(f.norm_sqr());
        }
        rows.push(row);
    }
    Ok(Table {
        meta,
        columns: vec!["t", "t_over_tc", "D_theta0", "D_theta90", "D_theta180"],
        rows,
    })
}

pub enum CondensateMode {
    Bec,
    DoubleWell { spacing: f64 },
    Lattice { spacing: f64, wells: u32 },
}

/// Condensate-sector profiles: single trap, double well, or 1-D lattice,
/// ideal or with the mean-field width/fraction corrections.
#[allow(clippy::too_many_arguments)]
pub fn run_condensate(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    mode: &CondensateMode,
    n: f64,
    t: f64,
    a_tilde: f64,
    corrections: bool,
    thetas: &GridSpec,
    phi: f64,
    mut meta: Meta,
) -> Result<Table, CliError> {
    meta.insert("command".into(), "condensate".into());
    let t_c = critical_temperature(n).map_err(numerical)?;
    meta_insert_f64(&mut meta, "t_c", t_c);
    if t >= t_c {
        return Err(CliError::Usage(format!(
            "condensate profiles need t < t_c (t = {t}, t_c = {t_c:.4})"
        )));
    }
    let ideal = t == 0.0 && a_tilde == 0.0;
    if let CondensateMode::DoubleWell { spacing } | CondensateMode::Lattice { spacing, .. } = mode
    {
        let wells = match mode {
            CondensateMode::Lattice { wells, .. } => *wells,
            _ => 2,
        };
        let array = ArrayGeometry::new(wells, *spacing).map_err(numerical)?;
        if !array.is_tight_binding(geom) {
            eprintln!(
                "warning: spacing d = {spacing} is below 5 l_x; the tight-binding picture is marginal"
            );
        }
    }
    let mut points = Vec::with_capacity(thetas.count);
    for theta in thetas.values() {
        let d = match mode {
            CondensateMode::Bec => {
                if ideal && !corrections {
                    bec_ground_profile(ctx, geom, n, theta, phi)
                } else {
                    bec_below_tc_profile(ctx, geom, n, t, a_tilde, theta, phi, corrections)
                }
            }
            CondensateMode::DoubleWell { spacing } => {
                if ideal {
                    double_well_profile(ctx, geom, n, *spacing, theta, phi)
                } else {
                    let array = ArrayGeometry::new(2, *spacing).map_err(numerical)?;
                    array_profile_finite_t(ctx, geom, n, t, a_tilde, &array, theta, phi)
                }
            }
            CondensateMode::Lattice { spacing, wells } => {
                let array = ArrayGeometry::new(*wells, *spacing).map_err(numerical)?;
                if ideal {
                    lattice_profile(ctx, geom, n, &array, theta, phi)
                } else {
                    array_profile_finite_t(ctx, geom, n, t, a_tilde, &array, theta, phi)
                }
            }
        }
        .map_err(numerical)?;
        points.push(ProfilePoint { theta, phi, d });
    }
    profile_table(meta, points)
}

/// Total cross-section of the condensate profile with its k→0 reference.
pub fn run_xsection(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    n: f64,
    mut meta: Meta,
) -> Result<Table, CliError> {
    meta.insert("command".into(), "xsection".into());
    let cs = total_cross_section(ctx, geom, n).map_err(numerical)?;
    let reference = total_cross_section_zero_energy(ctx, n);
    Ok(Table {
        meta,
        columns: vec!["sigma", "sigma_err", "sigma_zero_energy"],
        rows: vec![vec![cs.sigma, cs.error_estimate, reference]],
    })
}

/// Randomized oracle suites; returns human-readable report lines and
/// whether everything passed.
pub fn run_validate(seed: u64, cases: usize) -> (Vec<String>, bool) {
    let mut lines = Vec::new();
    let mut all_ok = true;

    // closed forms vs quadrature
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = QuadratureSpec::default();
        let mut worst: f64 = 0.0;
        for case in 0..cases {
            let ctx = ScatteringContext::new(
                rng.gen_range(0.5..6.0),
                rng.gen_range(0.05..0.5),
            )
            .unwrap();
            let geom = TrapGeometry::anisotropic(
                rng.gen_range(0.5..2.0),
                rng.gen_range(0.5..2.0),
                rng.gen_range(0.5..2.0),
            )
            .unwrap();
            let theta = rng.gen_range(0.0..std::f64::consts::PI);
            let phi = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            let nq = [
                rng.gen_range(0..=8usize),
                rng.gen_range(0..=8usize),
                rng.gen_range(0..=8usize),
            ];
            let (state, closed) = match case % 3 {
                0 => (
                    OscillatorState::OneD { n_x: nq[0] },
                    amplitude_1d(&ctx, &geom, nq[0], theta, phi).unwrap(),
                ),
                1 => (
                    OscillatorState::TwoD { n_x: nq[0], n_y: nq[1] },
                    amplitude_2d(&ctx, &geom, nq[0], nq[1], theta, phi).unwrap(),
                ),
                _ => {
                    let s = OscillatorState::ThreeD { n_x: nq[0], n_y: nq[1], n_z: nq[2] };
                    (s, amplitude_3d(&ctx, &geom, &s, theta, phi).unwrap())
                }
            };
            match quadrature_amplitude(&ctx, &geom, &state, theta, phi, &spec) {
                Ok(oracle) => {
                    let dev = (oracle - closed).norm() / closed.norm().max(1e-4);
                    worst = worst.max(dev);
                }
                Err(e) => {
                    all_ok = false;
                    lines.push(format!("FAIL closed-form vs quadrature: case {case}: {e}"));
                }
            }
        }
        let ok = worst < 1e-8;
        all_ok &= ok;
        lines.push(format!(
            "{} closed-form vs quadrature: {cases} cases, max rel deviation {worst:.2e} (tolerance 1e-8)",
            if ok { "ok  " } else { "FAIL" }
        ));
    }

    // thermal fast path vs direct sum
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7411);
        let policy = CutoffPolicy::default();
        let mut worst: f64 = 0.0;
        for case in 0..cases {
            let stats = if case % 3 == 0 { Statistics::Fermi } else { Statistics::Bose };
            let t = rng.gen_range(0.2f64.ln()..20.0f64.ln()).exp();
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
            match thermal_amplitude_direct(&ctx, &ens, theta, phi, &policy) {
                Ok(direct) => {
                    let dev = (fast - direct).norm() / (fast.norm() + 1e-3 * ens.n);
                    worst = worst.max(dev);
                }
                Err(e) => {
                    all_ok = false;
                    lines.push(format!("FAIL thermal fast vs direct: case {case}: {e}"));
                }
            }
        }
        let ok = worst < 1e-9;
        all_ok &= ok;
        lines.push(format!(
            "{} thermal fast vs direct: {cases} cases, max rel deviation {worst:.2e} (tolerance 1e-9)",
            if ok { "ok  " } else { "FAIL" }
        ));
    }

    // eigenfunction normalization through the oracle's quadrature
    {
        let (nodes, weights) = trapscat::validate::gauss_legendre(800);
        let mut worst: f64 = 0.0;
        for n in [0usize, 5, 12, 21, 30] {
            let l = 1.1;
            let cut = ((2.0 * n as f64 + 1.0).sqrt() + 8.0) * l;
            let mut norm = 0.0;
            for (x, w) in nodes.iter().zip(weights.iter()) {
                let u = cut * x;
                let psi = trapscat::specfun::oscillator_eigenfunction(n, u, l);
                norm += w * cut * psi * psi;
            }
            worst = worst.max((norm - 1.0).abs());
        }
        let ok = worst < 1e-10;
        all_ok &= ok;
        lines.push(format!(
            "{} eigenfunction normalization (n <= 30): max |norm - 1| {worst:.2e} (tolerance 1e-10)",
            if ok { "ok  " } else { "FAIL" }
        ));
    }

    (lines, all_ok)
}
