//! Thermal-equilibrium amplitudes for Bose, Fermi and Boltzmann scatterers
//! in a 3-D trap: chemical-potential solving against the exact level
//! structure, the occupation-weighted Laguerre sum (direct path), its
//! closed-form resummation (fast path), and the degenerate-Fermi and
//! classical limits.
//!
//! Energies are referenced to the trap ground state throughout, so the Bose
//! fugacity z̃ = e^{(μ−E_000)/k_BT} lives in (0, 1] and condensation is the
//! z̃ → 1 clamp with the condensate number carried separately.

use num_complex::Complex64;

use crate::context::ScatteringContext;
use crate::error::{Error, Result};
use crate::geometry::TrapGeometry;
use crate::kinematics::{momentum_transfer, MomentumTransfer};
use crate::single::{amplitude_3d, OscillatorState};
use crate::solve::bisect;
use crate::specfun::{laguerre_table, polylog, PolylogKind, ZETA_3};

/// Quantum statistics of the scatterer ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Bose,
    Fermi,
    /// Distinguishable particles with Boltzmann weights e^{−E/k_BT}/Z.
    Boltzmann,
}

/// Ensemble description before the chemical potential is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub statistics: Statistics,
    /// Particle number (integer-valued for Fermi filling).
    pub n: f64,
    /// Dimensionless temperature t = k_B T / ħω.
    pub t: f64,
}

/// Ensemble with the fugacity (or condensate split) resolved against a
/// specific trap. Produced by [`solve_fugacity`]; amplitude evaluations
/// take it read-only, so grids can share it across threads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalEnsemble {
    pub statistics: Statistics,
    pub n: f64,
    pub t: f64,
    pub geom: TrapGeometry,
    /// ln z̃ with z̃ referenced to the ground-state energy; exactly 0 when
    /// condensed. Unused for Boltzmann statistics. Stored as a logarithm so
    /// deeply degenerate Fermi ensembles (μ ≫ k_BT) stay representable.
    pub ln_fugacity: f64,
    /// Condensate number N₀ (Bose below the condensation point, else 0).
    pub condensate: f64,
}

impl ThermalEnsemble {
    /// z̃ itself (may overflow to +∞ for extremely degenerate Fermi input).
    pub fn fugacity(&self) -> f64 {
        self.ln_fugacity.exp()
    }

    pub fn is_condensed(&self) -> bool {
        self.statistics == Statistics::Bose && self.condensate > 0.0
    }

    /// Builds an ensemble directly from a given fugacity; the particle
    /// number is derived from the exact number sums. Bose needs z̃ < 1.
    pub fn with_fugacity(
        statistics: Statistics,
        t: f64,
        fugacity: f64,
        geom: TrapGeometry,
    ) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!("temperature must be > 0, got {t}")));
        }
        match statistics {
            Statistics::Boltzmann => Err(Error::Domain(
                "Boltzmann ensembles have no fugacity; construct via boltzmann()".into(),
            )),
            Statistics::Bose if !(0.0 < fugacity && fugacity < 1.0) => Err(Error::Domain(
                format!("Bose fugacity must lie in (0,1), got {fugacity}"),
            )),
            Statistics::Fermi if fugacity <= 0.0 => Err(Error::Domain(format!(
                "Fermi fugacity must be > 0, got {fugacity}"
            ))),
            _ => {
                let ln_z = fugacity.ln();
                let n = if statistics == Statistics::Fermi && fugacity >= 1.0 {
                    fermi_number_direct(t, ln_z, &geom)?
                } else {
                    number_series(statistics, t, fugacity, &geom)?
                };
                Ok(Self {
                    statistics,
                    n,
                    t,
                    geom,
                    ln_fugacity: ln_z,
                    condensate: 0.0,
                })
            }
        }
    }

    /// `n` distinguishable particles at temperature `t`.
    pub fn boltzmann(n: f64, t: f64, geom: TrapGeometry) -> Result<Self> {
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Domain(format!("particle number must be > 0, got {n}")));
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!("temperature must be >= 0, got {t}")));
        }
        Ok(Self {
            statistics: Statistics::Boltzmann,
            n,
            t,
            geom,
            ln_fugacity: 0.0,
            condensate: 0.0,
        })
    }

    /// Single-particle partition function Z = Π_α (1 − e^{−ω_α/ωt})^{−1},
    /// referenced to the ground-state energy (exact geometric sums).
    pub fn boltzmann_partition(&self) -> f64 {
        if self.t == 0.0 {
            return 1.0;
        }
        self.geom
            .level_spacings()
            .iter()
            .map(|r| 1.0 / (1.0 - (-r / self.t).exp()))
            .product()
    }

    /// Σ_n n̄_n over the whole level structure (the particle number this
    /// ensemble actually carries, condensate included).
    pub fn total_occupation(&self) -> Result<f64> {
        match self.statistics {
            Statistics::Boltzmann => Ok(self.n),
            Statistics::Bose => {
                if self.is_condensed() || self.t == 0.0 {
                    Ok(self.condensate + excited_capacity(self.t, &self.geom))
                } else {
                    number_series(Statistics::Bose, self.t, self.fugacity(), &self.geom)
                }
            }
            Statistics::Fermi => {
                if self.ln_fugacity < 0.0 {
                    number_series(Statistics::Fermi, self.t, self.fugacity(), &self.geom)
                } else {
                    fermi_number_direct(self.t, self.ln_fugacity, &self.geom)
                }
            }
        }
    }
}

/// Mean occupation of a single-particle level at energy `e_rel` above the
/// ground state (in ħω units). For Boltzmann statistics this is N·P_n with
/// the exact partition function.
pub fn occupation(e_rel: f64, ens: &ThermalEnsemble) -> Result<f64> {
    if e_rel < 0.0 {
        return Err(Error::Domain(format!(
            "energy must be referenced above the ground state, got {e_rel}"
        )));
    }
    match ens.statistics {
        Statistics::Bose => {
            if ens.ln_fugacity >= 0.0 && e_rel == 0.0 {
                return Err(Error::Domain(
                    "condensate occupation at z̃ = 1 must be handled explicitly (see ThermalEnsemble::condensate)"
                        .into(),
                ));
            }
            if ens.t == 0.0 {
                return Ok(0.0);
            }
            // 1/(z̃⁻¹ e^{E/t} − 1) = w/(1−w), w = e^{ln z̃ − E/t} < 1
            let w = (ens.ln_fugacity - e_rel / ens.t).exp();
            Ok(w / (1.0 - w))
        }
        Statistics::Fermi => {
            if ens.t == 0.0 {
                return Err(Error::Unsupported(
                    "Fermi occupations at t = 0 come from shell filling; use fermi_ground_profile"
                        .into(),
                ));
            }
            // 1/(e^{E/t − ln z̃} + 1), stable for arbitrarily degenerate z̃
            Ok(1.0 / ((e_rel / ens.t - ens.ln_fugacity).exp() + 1.0))
        }
        Statistics::Boltzmann => {
            if ens.t == 0.0 {
                return Ok(if e_rel == 0.0 { ens.n } else { 0.0 });
            }
            Ok(ens.n * (-e_rel / ens.t).exp() / ens.boltzmann_partition())
        }
    }
}

/// Upper bound on the fugacity-expansion order: terms decay at least like
/// e^{−jδ} with δ = −ln z̃ + r_min/t.
fn series_cap(t: f64, z: f64, r_min: f64) -> usize {
    let delta = (-z.ln()).max(0.0) + r_min / t.max(1e-300);
    ((50.0 / delta).ceil() as usize).clamp(64, 50_000_000)
}

/// Σ_n n̄_n by the fugacity expansion
/// n̄₀(z̃) + Σ_j (±1)^{j+1} z̃^j [Π_α (1 − e^{−j r_α/t})^{−1} − 1].
/// Needs z̃ < 1 (Bose always; Fermi for the series to converge).
fn number_series(statistics: Statistics, t: f64, z: f64, geom: &TrapGeometry) -> Result<f64> {
    if z >= 1.0 {
        return Err(Error::Unsupported(
            "the fugacity series needs z̃ < 1; condensed Bose and degenerate Fermi are handled separately"
                .into(),
        ));
    }
    let r = geom.level_spacings();
    let r_min = r[0].min(r[1]).min(r[2]);
    let (sign, ground) = match statistics {
        Statistics::Bose => (1.0, z / (1.0 - z)),
        Statistics::Fermi => (-1.0, z / (1.0 + z)),
        Statistics::Boltzmann => {
            return Err(Error::Domain("the number series is for quantum statistics".into()))
        }
    };
    let mut total = ground;
    let mut zj = 1.0;
    let mut sgn = 1.0 / sign;
    for j in 1..=series_cap(t, z, r_min) {
        zj *= z;
        sgn *= sign;
        let jf = j as f64;
        let mut prod = 1.0;
        for &ra in &r {
            prod /= 1.0 - (-jf * ra / t).exp();
        }
        let term = sgn * zj * (prod - 1.0);
        total += term;
        if term.abs() < 1e-16 * total.abs() && j > 4 {
            break;
        }
    }
    Ok(total)
}

/// Excited-state capacity at z̃ = 1 (Bose): Σ_{n≠0} n̄_n.
pub fn excited_capacity(t: f64, geom: &TrapGeometry) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let r = geom.level_spacings();
    let r_min = r[0].min(r[1]).min(r[2]);
    let mut total = 0.0;
    for j in 1..=series_cap(t, 1.0, r_min) {
        let jf = j as f64;
        let mut prod = 1.0;
        for &ra in &r {
            prod /= 1.0 - (-jf * ra / t).exp();
        }
        let term = prod - 1.0;
        total += term;
        if term < 1e-16 * total && j > 4 {
            break;
        }
    }
    total
}

/// Fermi particle number at arbitrary degeneracy by explicit state sums,
/// stable in ln z̃. Isotropic traps use the shell degeneracies
/// (n+1)(n+2)/2 exactly; anisotropic traps use a capped triple sum.
fn fermi_number_direct(t: f64, ln_z: f64, geom: &TrapGeometry) -> Result<f64> {
    let e_cut = t * (ln_z.max(0.0) + 45.0);
    if geom.is_isotropic() {
        let n_cut = e_cut.ceil() as usize + 2;
        if n_cut > 20_000_000 {
            return Err(Error::Unsupported(format!(
                "degenerate Fermi sum too large (shell cut {n_cut})"
            )));
        }
        let mut total = 0.0;
        for shell in 0..=n_cut {
            let g = ((shell + 1) * (shell + 2) / 2) as f64;
            total += g / ((shell as f64 / t - ln_z).exp() + 1.0);
        }
        return Ok(total);
    }
    let r = geom.level_spacings();
    let caps: [usize; 3] = [
        (e_cut / r[0]).ceil() as usize + 1,
        (e_cut / r[1]).ceil() as usize + 1,
        (e_cut / r[2]).ceil() as usize + 1,
    ];
    let states: f64 = caps.iter().map(|&c| (c + 1) as f64).product();
    if states > 4e7 {
        return Err(Error::Unsupported(format!(
            "degenerate Fermi state sum too large ({states:.1e} states); use an isotropic trap"
        )));
    }
    let mut total = 0.0;
    for nx in 0..=caps[0] {
        let ex = nx as f64 * r[0];
        if ex > e_cut {
            break;
        }
        for ny in 0..=caps[1] {
            let exy = ex + ny as f64 * r[1];
            if exy > e_cut {
                break;
            }
            for nz in 0..=caps[2] {
                let e = exy + nz as f64 * r[2];
                if e > e_cut {
                    break;
                }
                total += 1.0 / ((e / t - ln_z).exp() + 1.0);
            }
        }
    }
    Ok(total)
}

/// Resolves the fugacity (or condensate split) for the given ensemble and
/// trap, using the exact level structure.
///
/// Bose: condensed when the excited-state capacity at z̃ = 1 cannot hold N;
/// then z̃ = 1 and N₀ = N − Σ_{n≠0} n̄_n. Otherwise the full number equation
/// (ground state included) is solved on z̃ ∈ (0, 1).
/// Fermi: the fugacity series when the root lies below z̃ = 1, otherwise
/// exact state-by-state sums in ln z̃.
pub fn solve_fugacity(spec: &EnsembleSpec, geom: &TrapGeometry) -> Result<ThermalEnsemble> {
    if !(spec.n > 0.0 && spec.n.is_finite()) {
        return Err(Error::Domain(format!("particle number must be > 0, got {}", spec.n)));
    }
    if !(spec.t >= 0.0 && spec.t.is_finite()) {
        return Err(Error::Domain(format!("temperature must be >= 0, got {}", spec.t)));
    }
    let (n, t) = (spec.n, spec.t);
    match spec.statistics {
        Statistics::Boltzmann => ThermalEnsemble::boltzmann(n, t, *geom),
        Statistics::Bose => {
            if t == 0.0 {
                return Ok(ThermalEnsemble {
                    statistics: Statistics::Bose,
                    n,
                    t,
                    geom: *geom,
                    ln_fugacity: 0.0,
                    condensate: n,
                });
            }
            let capacity = excited_capacity(t, geom);
            if n >= capacity {
                return Ok(ThermalEnsemble {
                    statistics: Statistics::Bose,
                    n,
                    t,
                    geom: *geom,
                    ln_fugacity: 0.0,
                    condensate: n - capacity,
                });
            }
            let geom_c = *geom;
            let f = move |z: f64| number_series(Statistics::Bose, t, z, &geom_c).unwrap() - n;
            let z = bisect(f, 1e-300, 1.0 - 1e-13, 1e-12 * n, 400, "Bose fugacity")?;
            Ok(ThermalEnsemble {
                statistics: Statistics::Bose,
                n,
                t,
                geom: *geom,
                ln_fugacity: z.ln(),
                condensate: 0.0,
            })
        }
        Statistics::Fermi => {
            if t == 0.0 {
                return Err(Error::Unsupported(
                    "Fermi t = 0 is exact shell filling; use fermi_ground_profile".into(),
                ));
            }
            let geom_c = *geom;
            let near_one = 1.0 - 1e-13;
            if number_series(Statistics::Fermi, t, near_one, geom)? >= n {
                let f = move |z: f64| number_series(Statistics::Fermi, t, z, &geom_c).unwrap() - n;
                let z = bisect(f, 1e-300, near_one, 1e-12 * n, 400, "Fermi fugacity")?;
                return Ok(ThermalEnsemble {
                    statistics: Statistics::Fermi,
                    n,
                    t,
                    geom: *geom,
                    ln_fugacity: z.ln(),
                    condensate: 0.0,
                });
            }
            // degenerate regime: the root sits at or above z̃ = 1
            let fermi_level = (6.0 * n).cbrt();
            let ln_z_hi = (fermi_level + 45.0 * t) / t + 5.0;
            // guard the state-count once, at the widest cut
            fermi_number_direct(t, ln_z_hi, geom)?;
            let f = move |ln_z: f64| fermi_number_direct(t, ln_z, &geom_c).unwrap() - n;
            let ln_z = bisect(f, -1.0, ln_z_hi, 1e-12 * n, 400, "Fermi fugacity (degenerate)")?;
            Ok(ThermalEnsemble {
                statistics: Statistics::Fermi,
                n,
                t,
                geom: *geom,
                ln_fugacity: ln_z,
                condensate: 0.0,
            })
        }
    }
}

/// Thermodynamic-limit fugacity: solves N = ±t³ Li₃(±z̃). Returns (z̃, N₀)
/// with N₀ > 0 only for Bose below the condensation point t_c = (N/ζ₃)^{1/3}.
pub fn solve_fugacity_thermodynamic(n: f64, t: f64, statistics: Statistics) -> Result<(f64, f64)> {
    if !(n > 0.0 && t > 0.0) {
        return Err(Error::Domain(format!("need n > 0 and t > 0, got n={n}, t={t}")));
    }
    let t3 = t * t * t;
    match statistics {
        Statistics::Bose => {
            let capacity = t3 * ZETA_3;
            if n >= capacity {
                return Ok((1.0, n - capacity));
            }
            let f = |z: f64| polylog(3, z, PolylogKind::Bose).unwrap() * t3 - n;
            let z = bisect(f, 0.0, 1.0, 1e-13 * n, 200, "thermodynamic Bose fugacity")?;
            Ok((z, 0.0))
        }
        Statistics::Fermi => {
            let ln_z_hi = ((6.0 * n).cbrt() / t + 50.0).max(5.0);
            let f = |ln_z: f64| polylog(3, ln_z.exp(), PolylogKind::Fermi).unwrap() * t3 - n;
            let ln_z = bisect(f, -700.0, ln_z_hi, 1e-13 * n, 300, "thermodynamic Fermi fugacity")?;
            Ok((ln_z.exp(), 0.0))
        }
        Statistics::Boltzmann => Err(Error::Domain(
            "Boltzmann statistics carry no fugacity; use ThermalEnsemble::boltzmann".into(),
        )),
    }
}

/// Truncation policy for the direct occupation-weighted triple sum.
#[derive(Debug, Clone, Copy)]
pub struct CutoffPolicy {
    /// Hard bound on the per-axis quantum-number cap.
    pub max_per_axis: usize,
    /// Tail mass (relative to N) below which loops terminate early.
    pub tail_epsilon: f64,
}

impl Default for CutoffPolicy {
    fn default() -> Self {
        Self {
            max_per_axis: 10_000,
            tail_epsilon: 1e-16,
        }
    }
}

/// Direct evaluation of the thermal amplitude: the occupation-weighted
/// triple Laguerre sum f̄ = −a_k e^{−‖q̄·l‖²} Σ_n n̄_n Π_α L_{n_α}(2q_α²l_α²),
/// truncated where the occupation-weighted tail is negligible (each state's
/// form factor is bounded by 1 in modulus, so neglected occupation bounds
/// the error). The condensate enters as N₀·e^{−‖q̄·l‖²}.
pub fn thermal_amplitude_direct(
    ctx: &ScatteringContext,
    ens: &ThermalEnsemble,
    theta: f64,
    phi: f64,
    policy: &CutoffPolicy,
) -> Result<Complex64> {
    let q = momentum_transfer(ctx.k_as(), theta, phi, &ens.geom)?;
    let form = direct_form_factor(ens, &q, policy)?;
    Ok(-ctx.unitarized_scale() * form)
}

fn direct_form_factor(
    ens: &ThermalEnsemble,
    q: &MomentumTransfer,
    policy: &CutoffPolicy,
) -> Result<f64> {
    let t = ens.t;
    let r = ens.geom.level_spacings();
    let x = q.axis_arguments();
    let exp_q = (-q.form_exponent).exp();

    if t == 0.0 {
        return match ens.statistics {
            Statistics::Bose | Statistics::Boltzmann => Ok(ens.n * exp_q),
            Statistics::Fermi => Err(Error::Unsupported(
                "Fermi t = 0 is exact shell filling; use fermi_ground_profile".into(),
            )),
        };
    }

    let ln_z = ens.ln_fugacity;
    let condensed = ens.is_condensed();
    // per-axis caps from the occupation-tail envelope
    let extra = match ens.statistics {
        Statistics::Bose if condensed => 5.0,
        Statistics::Bose => (1.0 - ln_z.exp()).recip().ln().clamp(0.0, 40.0) + 5.0,
        Statistics::Fermi => ln_z.max(0.0) + 5.0,
        Statistics::Boltzmann => 5.0,
    };
    let mut caps = [0usize; 3];
    for a in 0..3 {
        let cap = ((t / r[a]) * (40.0 + extra)).ceil() as usize;
        if cap > policy.max_per_axis {
            return Err(Error::Unsupported(format!(
                "direct sum needs per-axis cap {cap} > {}; use thermal_amplitude_fast",
                policy.max_per_axis
            )));
        }
        caps[a] = cap.max(4);
    }

    let lag: Vec<Vec<f64>> = (0..3).map(|a| laguerre_table(caps[a], x[a])).collect();
    // per-axis reduced energies E_α/t = n r_α / t
    let e_t: Vec<Vec<f64>> = (0..3)
        .map(|a| (0..=caps[a]).map(|nq| nq as f64 * r[a] / t).collect())
        .collect();

    let boltz_norm = ens.n / ens.boltzmann_partition();
    let r_min = r[0].min(r[1]).min(r[2]);
    // occupancy envelope: n̄(E) ≤ tail_factor · e^{ln z̃ − E/t}
    let tail_factor = match ens.statistics {
        Statistics::Bose if condensed => 1.0 / (1.0 - (-r_min / t).exp()),
        Statistics::Bose => 1.0 / (1.0 - ln_z.exp()),
        Statistics::Fermi => 1.0,
        Statistics::Boltzmann => ens.n,
    };
    let ln_z_eff = match ens.statistics {
        Statistics::Boltzmann => 0.0,
        _ => ln_z,
    };
    // break when tail_factor · e^{ln z̃ − E/t} · (remaining geometric mass) < ε·N
    let geo = [
        1.0 / (1.0 - (-r[0] / t).exp()),
        1.0 / (1.0 - (-r[1] / t).exp()),
        1.0 / (1.0 - (-r[2] / t).exp()),
    ];
    let ln_eps = (policy.tail_epsilon * ens.n.max(1.0) / tail_factor).ln();
    let ln_break = [
        ln_eps - (geo[0] * geo[1] * geo[2]).ln(),
        ln_eps - (geo[1] * geo[2]).ln(),
        ln_eps - geo[2].ln(),
    ];

    let mut sum = 0.0;
    for nx in 0..=caps[0] {
        let lw_x = ln_z_eff - e_t[0][nx];
        if lw_x < ln_break[0] {
            break;
        }
        let lx = lag[0][nx];
        for ny in 0..=caps[1] {
            let lw_xy = lw_x - e_t[1][ny];
            if lw_xy < ln_break[1] {
                break;
            }
            let lxy = lx * lag[1][ny];
            for nz in 0..=caps[2] {
                let lw = lw_xy - e_t[2][nz];
                if lw < ln_break[2] {
                    break;
                }
                if condensed && nx == 0 && ny == 0 && nz == 0 {
                    continue;
                }
                let occ = match ens.statistics {
                    Statistics::Bose => {
                        let w = lw.exp();
                        w / (1.0 - w)
                    }
                    Statistics::Fermi => 1.0 / ((-lw).exp() + 1.0),
                    Statistics::Boltzmann => boltz_norm * lw.exp(),
                };
                sum += occ * lxy * lag[2][nz];
            }
        }
    }
    let mut form = exp_q * sum;
    if condensed {
        form += ens.condensate * exp_q;
    }
    Ok(form)
}

/// Per-axis factor of the resummed thermal series:
/// G_α(j) = exp(−q_α²l_α² coth(j r_α / 2t)) / (1 − e^{−j r_α/t}).
#[inline]
fn axis_factor(x_half: f64, r_over_t_j: f64) -> f64 {
    let s = (-r_over_t_j).exp();
    (-x_half * (1.0 + s) / (1.0 - s)).exp() / (1.0 - s)
}

/// Excited-state amplitude form factor at z̃ = 1 (condensed Bose):
/// Σ_j [Π_α G_α(j) − e^{−‖q̄·l‖²}], which equals e^{−Q}·Σ_{n≠0} n̄_n Π L.
pub(crate) fn excited_form_condensed(t: f64, geom: &TrapGeometry, q: &MomentumTransfer) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let r = geom.level_spacings();
    let r_min = r[0].min(r[1]).min(r[2]);
    let x = q.axis_arguments();
    let exp_q = (-q.form_exponent).exp();
    let mut sum = 0.0;
    let mut small_runs = 0;
    for j in 1..=series_cap(t, 1.0, r_min) {
        let jf = j as f64;
        let prod = axis_factor(0.5 * x[0], jf * r[0] / t)
            * axis_factor(0.5 * x[1], jf * r[1] / t)
            * axis_factor(0.5 * x[2], jf * r[2] / t);
        let term = prod - exp_q;
        sum += term;
        if term.abs() < 1e-16 * sum.abs().max(1e-300) && j > 4 {
            small_runs += 1;
            if small_runs >= 2 {
                break;
            }
        } else {
            small_runs = 0;
        }
    }
    sum
}

/// Closed-form thermal amplitude (fast path): the geometric Laguerre
/// resummation of the occupation expansion,
/// f̄ = −a_k [ n̄₀ e^{−Q} + Σ_j (±1)^{j+1} z̃^j (Π_α G_α(j) − e^{−Q}) ],
/// with the Bose condensate replacing n̄₀ below the transition. Boltzmann
/// ensembles reduce to a single product of Gaussian damping factors.
pub fn thermal_amplitude_fast(
    ctx: &ScatteringContext,
    ens: &ThermalEnsemble,
    theta: f64,
    phi: f64,
) -> Result<Complex64> {
    let q = momentum_transfer(ctx.k_as(), theta, phi, &ens.geom)?;
    let form = fast_form_factor(ens, &q)?;
    Ok(-ctx.unitarized_scale() * form)
}

pub(crate) fn fast_form_factor(ens: &ThermalEnsemble, q: &MomentumTransfer) -> Result<f64> {
    let t = ens.t;
    let r = ens.geom.level_spacings();
    let x = q.axis_arguments();
    let exp_q = (-q.form_exponent).exp();

    match ens.statistics {
        Statistics::Boltzmann => {
            if t == 0.0 {
                return Ok(ens.n * exp_q);
            }
            let damp: f64 = (0..3)
                .map(|a| {
                    let s = (-r[a] / t).exp();
                    -0.5 * x[a] * (1.0 + s) / (1.0 - s)
                })
                .sum::<f64>()
                .exp();
            Ok(ens.n * damp)
        }
        Statistics::Bose | Statistics::Fermi => {
            let condensed = ens.is_condensed();
            if ens.statistics == Statistics::Fermi && ens.ln_fugacity >= 0.0 {
                return Err(Error::Unsupported(
                    "fast path needs Fermi z̃ < 1 (alternating series); use thermal_amplitude_direct"
                        .into(),
                ));
            }
            if ens.statistics == Statistics::Bose && !condensed && ens.ln_fugacity >= 0.0 && t > 0.0
            {
                return Err(Error::Domain(
                    "Bose z̃ ≥ 1 without a condensate split is inconsistent".into(),
                ));
            }
            let z = ens.fugacity();
            let ground = if condensed || t == 0.0 {
                ens.condensate
            } else {
                match ens.statistics {
                    Statistics::Bose => z / (1.0 - z),
                    Statistics::Fermi => z / (1.0 + z),
                    Statistics::Boltzmann => unreachable!(),
                }
            };
            if t == 0.0 {
                return Ok(ground * exp_q);
            }
            let r_min = r[0].min(r[1]).min(r[2]);
            let sign = if ens.statistics == Statistics::Bose { 1.0 } else { -1.0 };
            let mut sum = ground * exp_q;
            let mut zj = 1.0;
            let mut sgn = 1.0 / sign;
            let mut small_runs = 0;
            for j in 1..=series_cap(t, if condensed { 1.0 } else { z }, r_min) {
                zj *= if condensed { 1.0 } else { z };
                sgn *= sign;
                let jf = j as f64;
                let prod = axis_factor(0.5 * x[0], jf * r[0] / t)
                    * axis_factor(0.5 * x[1], jf * r[1] / t)
                    * axis_factor(0.5 * x[2], jf * r[2] / t);
                let term = sgn * zj * (prod - exp_q);
                sum += term;
                if term.abs() < 1e-16 * sum.abs().max(1e-300) && j > 4 {
                    small_runs += 1;
                    if small_runs >= 2 {
                        break;
                    }
                } else {
                    small_runs = 0;
                }
            }
            Ok(sum)
        }
    }
}

/// How the degenerate-Fermi profile is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FermiGroundMode {
    /// Energy-ordered shell filling with fractional occupation of a
    /// partially filled top shell.
    Exact,
    /// Large-N envelope D = |N a_k|² e^{−6‖q̄·l‖² N^{1/3}} (isotropic only).
    Approximate,
}

/// Differential cross-section of N same-spin fermions at t = 0.
pub fn fermi_ground_profile(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    n: u64,
    theta: f64,
    phi: f64,
    mode: FermiGroundMode,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("need at least one fermion".into()));
    }
    let q = momentum_transfer(ctx.k_as(), theta, phi, geom)?;
    match mode {
        FermiGroundMode::Approximate => {
            if !geom.is_isotropic() {
                return Err(Error::Unsupported(
                    "the degenerate-Fermi envelope assumes an isotropic trap".into(),
                ));
            }
            let nf = n as f64;
            let ak2 = ctx.unitarized_scale().norm_sqr();
            Ok(nf * nf * ak2 * (-6.0 * q.form_exponent * nf.cbrt()).exp())
        }
        FermiGroundMode::Exact => {
            let sea = fermi_sea(n, geom)?;
            let x = q.axis_arguments();
            let max_n = sea.iter().map(|s| s.0.max(s.1).max(s.2)).max().unwrap_or(0);
            let lag: Vec<Vec<f64>> = (0..3).map(|a| laguerre_table(max_n, x[a])).collect();
            let mut sum = 0.0;
            for &(nx, ny, nz, occ) in &sea {
                sum += occ * lag[0][nx] * lag[1][ny] * lag[2][nz];
            }
            let form = (-q.form_exponent).exp() * sum;
            Ok(ctx.unitarized_scale().norm_sqr() * form * form)
        }
    }
}

/// Occupied single-particle states of the t = 0 Fermi sea: energy-ordered
/// filling, with a tied top group occupied fractionally and uniformly.
pub(crate) fn fermi_sea(n: u64, geom: &TrapGeometry) -> Result<Vec<(usize, usize, usize, f64)>> {
    if n > 2_000_000 {
        return Err(Error::Unsupported(format!(
            "Fermi sea enumeration capped at 2e6 particles, got {n}"
        )));
    }
    let r = geom.level_spacings();
    let nf = n as f64;
    let r_max = r.iter().cloned().fold(f64::MIN, f64::max);
    let mut e_cut = (6.0 * nf).cbrt() * r_max.max(1.0) + 3.0 * (r[0] + r[1] + r[2]);
    loop {
        let mut states: Vec<(f64, usize, usize, usize)> = Vec::new();
        for nx in 0..=((e_cut / r[0]) as usize) {
            let ex = nx as f64 * r[0];
            for ny in 0..=(((e_cut - ex).max(0.0) / r[1]) as usize) {
                let exy = ex + ny as f64 * r[1];
                for nz in 0..=(((e_cut - exy).max(0.0) / r[2]) as usize) {
                    states.push((exy + nz as f64 * r[2], nx, ny, nz));
                }
            }
        }
        if (states.len() as u64) < n {
            e_cut *= 1.4;
            continue;
        }
        states.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out = Vec::with_capacity(n as usize + 8);
        let mut remaining = nf;
        let mut i = 0;
        while i < states.len() && remaining > 0.0 {
            let e0 = states[i].0;
            let mut j = i;
            while j < states.len() && states[j].0 - e0 <= 1e-9 * (1.0 + e0) {
                j += 1;
            }
            let group = (j - i) as f64;
            let occ = (remaining / group).min(1.0);
            for s in &states[i..j] {
                out.push((s.1, s.2, s.3, occ));
            }
            remaining -= occ * group;
            i = j;
        }
        if remaining > 1e-9 {
            e_cut *= 1.4;
            continue;
        }
        return Ok(out);
    }
}

/// Cross-section of the highly excited state (n, n, n): the classical-limit
/// probe whose angular width shrinks with n.
pub fn classical_limit_profile(
    ctx: &ScatteringContext,
    geom: &TrapGeometry,
    n: usize,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("classical-limit probe needs n >= 1".into()));
    }
    let state = OscillatorState::ThreeD { n_x: n, n_y: n, n_z: n };
    Ok(amplitude_3d(ctx, geom, &state, theta, phi)?.norm_sqr())
}
