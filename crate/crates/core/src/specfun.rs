//! Numerically stable special functions: Laguerre and Hermite polynomials,
//! polylogarithms of Bose and Fermi kind, and the zeta constants the
//! thermodynamic formulas need.
//!
//! All polynomial evaluations run through three-term recurrences, never
//! factorial-based coefficient sums, so degrees up to 10^6 stay finite.

use crate::error::{Error, Result};

/// ζ(2) = π²/6.
pub const ZETA_2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
/// ζ(3), Apéry's constant.
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;
/// ζ(4) = π⁴/90.
pub const ZETA_4: f64 = 1.082_323_233_711_138_2;
/// ζ(5).
pub const ZETA_5: f64 = 1.036_927_755_143_37;

/// Laguerre polynomial L_n(x) by the three-term recurrence
/// (n+1) L_{n+1} = (2n+1−x) L_n − n L_{n−1}, seeded L_0 = 1, L_1 = 1−x.
pub fn laguerre(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluates L_0(x) .. L_n(x) in one recurrence pass.
pub fn laguerre_table(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(1.0 - x);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * out[k] - kf * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// Physicists' Hermite polynomial H_n(x) via H_{n+1} = 2x H_n − 2n H_{n−1}.
///
/// Raw H_n grows like n!·2^n and overflows f64 near n ≈ 150 for moderate x;
/// that case is reported as an error. Use [`oscillator_eigenfunction`] for
/// large n, which carries the Gaussian and normalization inside the
/// recurrence and never overflows.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * (k as f64) * prev;
        if !next.is_finite() {
            return Err(Error::Overflow("hermite recurrence"));
        }
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(Error::Overflow("hermite recurrence"))
    }
}

/// Normalized harmonic-oscillator eigenfunction ψ_n(x) for oscillator
/// length `l`, evaluated through the normalized recurrence
/// h_{n+1} = x̃·sqrt(2/(n+1))·h_n − sqrt(n/(n+1))·h_{n−1}
/// with h_0 = π^{−1/4} e^{−x̃²/2}, x̃ = x/l. ∫ψ_n² dx = 1.
pub fn oscillator_eigenfunction(n: usize, x: f64, l: f64) -> f64 {
    let u = x / l;
    let h0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * u * u).exp();
    if n == 0 {
        return h0 / l.sqrt();
    }
    let mut prev = h0;
    let mut cur = u * std::f64::consts::SQRT_2 * h0;
    for k in 1..n {
        let kf = k as f64;
        let next = u * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur / l.sqrt()
}

/// Which quantum statistics a polylogarithm evaluation serves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolylogKind {
    /// Li_j(z), z ∈ [0, 1]. Also known as the Bose-Einstein integral.
    Bose,
    /// −Li_j(−z), z ≥ 0 (the Fermi-Dirac integral of order j−1, times Γ(j)).
    Fermi,
}

/// Bose-Einstein / Fermi-Dirac polylogarithm of integer order j ≥ 2.
///
/// Bose kind: Li_j(z) = Σ_{p≥1} z^p/p^j for z ∈ [0,1]; z = 1 is evaluated
/// as ζ(j). Fermi kind: −Li_j(−z) for z ≥ 0, by the alternating series for
/// z ≤ 1 and by quadrature of x^{j−1}/(e^x/z + 1)/Γ(j) for z > 1.
pub fn polylog(j: u32, z: f64, kind: PolylogKind) -> Result<f64> {
    if j < 2 {
        return Err(Error::Domain(format!("polylog order must be >= 2, got {j}")));
    }
    if !z.is_finite() {
        return Err(Error::Domain(format!("polylog argument must be finite, got {z}")));
    }
    match kind {
        PolylogKind::Bose => {
            if !(0.0..=1.0).contains(&z) {
                return Err(Error::Domain(format!(
                    "Bose polylog needs z in [0,1], got {z}"
                )));
            }
            if z == 1.0 {
                return Ok(zeta_int(j));
            }
            Ok(power_series(j, z, false))
        }
        PolylogKind::Fermi => {
            if z < 0.0 {
                return Err(Error::Domain(format!(
                    "Fermi polylog needs z >= 0, got {z}"
                )));
            }
            if z == 1.0 {
                // Dirichlet eta: η(j) = (1 − 2^{1−j}) ζ(j).
                return Ok((1.0 - 2.0_f64.powi(1 - j as i32)) * zeta_int(j));
            }
            if z < 1.0 {
                Ok(power_series(j, z, true))
            } else {
                Ok(fermi_integral_quadrature(j, z))
            }
        }
    }
}

/// Closed form of the geometrically weighted Laguerre sum
/// Σ_{n≥0} s^n L_n(x) = exp(−x s/(1−s)) / (1−s), for s ∈ [0, 1).
pub fn laguerre_sum_geometric(s: f64, x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::Domain(format!(
            "geometric Laguerre sum needs s in [0,1), got {s}"
        )));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!(
            "geometric Laguerre sum needs x >= 0, got {x}"
        )));
    }
    Ok((-x * s / (1.0 - s)).exp() / (1.0 - s))
}

/// ζ(j) for integer j ≥ 2 by direct summation with an Euler-Maclaurin tail.
pub fn zeta_int(j: u32) -> f64 {
    match j {
        2 => return ZETA_2,
        3 => return ZETA_3,
        4 => return ZETA_4,
        5 => return ZETA_5,
        _ => {}
    }
    let jf = f64::from(j);
    const P: usize = 100_000;
    let mut sum = 0.0;
    for p in (1..=P).rev() {
        sum += (p as f64).powf(-jf);
    }
    let pf = P as f64;
    // tail beyond P: P^{1-j}/(j-1) - P^{-j}/2 + j P^{-j-1}/12 (Euler-Maclaurin)
    sum += pf.powf(1.0 - jf) / (jf - 1.0) - 0.5 * pf.powf(-jf) + jf * pf.powf(-jf - 1.0) / 12.0;
    sum
}

fn power_series(j: u32, z: f64, alternating: bool) -> f64 {
    let jf = f64::from(j);
    let mut sum = 0.0;
    let mut zp = 1.0;
    for p in 1..=10_000_000u64 {
        zp *= if alternating && p > 1 { -z } else { z };
        let term = zp / (p as f64).powf(jf);
        sum += term;
        if term.abs() < 1e-16 * sum.abs() {
            break;
        }
    }
    sum
}

/// 1/Γ(j) ∫_0^∞ x^{j−1} / (e^x/z + 1) dx by composite Gauss-Legendre panels
/// on [0, ln z + 45]. Valid for z > 1 where the alternating series diverges.
fn fermi_integral_quadrature(j: u32, z: f64) -> f64 {
    let jf = f64::from(j);
    let ln_z = z.ln();
    let upper = ln_z + 45.0;
    let gamma_j: f64 = (1..j as u64).map(|k| k as f64).product();
    // 20-point Gauss-Legendre nodes/weights on [-1, 1].
    let (nodes, weights) = gauss_legendre_20();
    let panels = (upper / 4.0).ceil() as usize;
    let h = upper / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let a = p as f64 * h;
        let mid = a + 0.5 * h;
        let half = 0.5 * h;
        for (&xi, &wi) in nodes.iter().zip(weights.iter()) {
            let x = mid + half * xi;
            // 1/(e^x/z + 1) = 1/(e^{x - ln z} + 1), stable for large x
            let denom = (x - ln_z).exp() + 1.0;
            total += wi * half * x.powf(jf - 1.0) / denom;
        }
    }
    total / gamma_j
}

fn gauss_legendre_20() -> ([f64; 20], [f64; 20]) {
    // Nodes symmetric about zero; standard 20-point rule.
    const X: [f64; 10] = [
        0.076_526_521_133_497_33,
        0.227_785_851_141_645_1,
        0.373_706_088_715_419_56,
        0.510_867_001_950_827_1,
        0.636_053_680_726_515_1,
        0.746_331_906_460_150_8,
        0.839_116_971_822_218_8,
        0.912_234_428_251_325_9,
        0.963_971_927_277_913_8,
        0.993_128_599_185_094_9,
    ];
    const W: [f64; 10] = [
        0.152_753_387_130_725_85,
        0.149_172_986_472_603_75,
        0.142_096_109_318_382_05,
        0.131_688_638_449_176_63,
        0.118_194_531_961_518_42,
        0.101_930_119_817_240_44,
        0.083_276_741_576_704_75,
        0.062_672_048_334_109_06,
        0.040_601_429_800_386_94,
        0.017_614_007_139_152_12,
    ];
    let mut nodes = [0.0; 20];
    let mut weights = [0.0; 20];
    for i in 0..10 {
        nodes[i] = -X[9 - i];
        nodes[10 + i] = X[i];
        weights[i] = W[9 - i];
        weights[10 + i] = W[i];
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn laguerre_low_orders() {
        assert_eq!(laguerre(0, 3.21), 1.0);
        assert_eq!(laguerre(0, -7.0), 1.0);
        // L_2(x) = 1 - 2x + x²/2, so L_2(2) = -1
        assert!((laguerre(2, 2.0) - (-1.0)).abs() < 1e-15);
        // L_1(1) = 0 exactly
        assert_eq!(laguerre(1, 1.0), 0.0);
    }

    #[test]
    fn laguerre_matches_coefficient_sum() {
        // Explicit sum Σ (−1)^j C(n,j) x^j / j! as the independent route.
        fn brute(n: usize, x: f64) -> f64 {
            let mut sum = 0.0;
            let mut coeff = 1.0; // (−1)^j C(n,j)/j! at j=0
            let mut xp = 1.0;
            for jj in 0..=n {
                sum += coeff * xp;
                xp *= x;
                let j = jj as f64;
                coeff *= -((n as f64) - j) / ((j + 1.0) * (j + 1.0));
            }
            sum
        }
        // frozen from the brute-force oracle
        let expected = brute(10, 3.7);
        assert!(rel(expected, 0.694_262_567_354_1) < 1e-12);
        assert!(rel(laguerre(10, 3.7), expected) < 1e-12);
        for n in [1usize, 3, 5, 8, 12] {
            for &x in &[0.1, 1.0, 2.5, 6.0] {
                assert!(
                    rel(laguerre(n, x), brute(n, x)) < 1e-11,
                    "n={n} x={x}: {} vs {}",
                    laguerre(n, x),
                    brute(n, x)
                );
            }
        }
    }

    #[test]
    fn laguerre_table_consistent() {
        let t = laguerre_table(20, 1.3);
        for (n, v) in t.iter().enumerate() {
            assert_eq!(*v, laguerre(n, 1.3));
        }
    }

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite(0, 0.4).unwrap(), 1.0);
        // H_2(x) = 4x² − 2, H_2(1) = 2
        assert!((hermite(2, 1.0).unwrap() - 2.0).abs() < 1e-14);
        // odd Hermite vanish at the origin
        for m in 0..=100 {
            assert_eq!(hermite(2 * m + 1, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn hermite_overflow_is_signalled() {
        assert!(matches!(hermite(400, 20.0), Err(Error::Overflow(_))));
    }

    #[test]
    fn laguerre_at_zero_is_one() {
        for n in 0..=200 {
            assert_eq!(laguerre(n, 0.0), 1.0);
        }
    }

    #[test]
    fn eigenfunction_matches_hermite_form() {
        // ψ_n(x) = (√π l 2^n n!)^{-1/2} H_n(x/l) e^{-x²/2l²} for small n
        let l = 1.3;
        for n in 0..8usize {
            let factorial: f64 = (1..=n).map(|k| k as f64).product();
            let norm: f64 =
                (std::f64::consts::PI.sqrt() * l * 2f64.powi(n as i32) * factorial).sqrt();
            for &x in &[-1.7, 0.0, 0.4, 2.2] {
                let direct =
                    hermite(n, x / l).unwrap() * (-x * x / (2.0 * l * l)).exp() / norm;
                let stable = oscillator_eigenfunction(n, x, l);
                assert!(
                    (direct - stable).abs() < 1e-12,
                    "n={n} x={x}: {direct} vs {stable}"
                );
            }
        }
    }

    #[test]
    fn polylog_bose_values() {
        assert_eq!(polylog(3, 0.0, PolylogKind::Bose).unwrap(), 0.0);
        // Li_3(1) = ζ(3), summed independently by the series path at z
        // slightly below 1 approaches it from below
        assert!(rel(polylog(3, 1.0, PolylogKind::Bose).unwrap(), ZETA_3) < 1e-15);
        // frozen from direct series summation
        assert!(rel(polylog(3, 0.5, PolylogKind::Bose).unwrap(), 0.537_213_193_608_040_2) < 1e-13);
        assert!(rel(polylog(4, 0.5, PolylogKind::Bose).unwrap(), 0.517_479_061_673_899_3) < 1e-13);
    }

    #[test]
    fn polylog_fermi_values() {
        // −Li_3(−1) = (3/4) ζ(3)
        assert!(rel(polylog(3, 1.0, PolylogKind::Fermi).unwrap(), 0.75 * ZETA_3) < 1e-14);
        // frozen from the alternating series
        assert!(
            rel(polylog(3, 0.5, PolylogKind::Fermi).unwrap(), 0.472_597_844_658_896_87) < 1e-13
        );
        // z > 1 goes through quadrature; frozen from an independent evaluation
        assert!(rel(polylog(3, 2.0, PolylogKind::Fermi).unwrap(), 1.668_283_363_966_571_3) < 1e-10);
    }

    #[test]
    fn polylog_quadrature_continuous_at_one() {
        // series just below 1 and quadrature just above must agree
        let below = polylog(3, 1.0 - 1e-9, PolylogKind::Fermi).unwrap();
        let above = polylog(3, 1.0 + 1e-9, PolylogKind::Fermi).unwrap();
        assert!((below - above).abs() < 1e-8, "{below} vs {above}");
    }

    #[test]
    fn polylog_domain_errors() {
        assert!(polylog(3, 1.5, PolylogKind::Bose).is_err());
        assert!(polylog(3, -0.1, PolylogKind::Bose).is_err());
        assert!(polylog(3, -0.1, PolylogKind::Fermi).is_err());
        assert!(polylog(1, 0.5, PolylogKind::Bose).is_err());
    }

    #[test]
    fn polylog_bose_monotone_and_hits_zeta() {
        for j in [2u32, 3, 4, 5] {
            let mut last = 0.0;
            for i in 1..=40 {
                let z = i as f64 / 40.0;
                let v = polylog(j, z, PolylogKind::Bose).unwrap();
                assert!(v > last, "j={j} z={z}");
                last = v;
            }
            assert!(rel(last, zeta_int(j)) < 1e-9);
        }
    }

    #[test]
    fn zeta_tail_summation_matches_known_values() {
        // j ≥ 6 goes through the Euler-Maclaurin path; frozen references
        assert!(rel(zeta_int(6), 1.017_343_061_984_449_1) < 1e-13);
        assert!(rel(zeta_int(7), 1.008_349_277_381_922_8) < 1e-13);
        // stored constants are consistent with the summed route: compare
        // against a z-slightly-below-one Bose series instead
        let near = polylog(4, 1.0 - 1e-12, PolylogKind::Bose).unwrap();
        assert!(rel(near, ZETA_4) < 1e-9);
    }

    #[test]
    fn geometric_sum_closed_form() {
        assert_eq!(laguerre_sum_geometric(0.0, 3.0).unwrap(), 1.0);
        assert!(rel(laguerre_sum_geometric(0.5, 1.0).unwrap(), 2.0 * (-1.0f64).exp()) < 1e-14);
        assert!(rel(laguerre_sum_geometric(0.9, 2.0).unwrap(), 10.0 * (-18.0f64).exp()) < 1e-13);
        assert!(laguerre_sum_geometric(1.0, 2.0).is_err());
    }

    #[test]
    fn geometric_sum_matches_truncated_direct() {
        for &(s, x) in &[(0.3, 0.7), (0.5, 1.0), (0.8, 2.5), (0.95, 0.2)] {
            // tail bound: s^N e^{x/2} / (1-s) below 1e-12 of the value
            let closed: f64 = laguerre_sum_geometric(s, x).unwrap();
            let mut n_star = 0usize;
            let bound = |n: usize| s.powi(n as i32) * (x / 2.0_f64).exp() / (1.0 - s);
            while bound(n_star) > 1e-12 * closed.abs() {
                n_star += 1;
            }
            let table = laguerre_table(n_star, x);
            let mut direct = 0.0;
            let mut sp = 1.0;
            for v in &table {
                direct += sp * v;
                sp *= s;
            }
            assert!(
                rel(closed, direct) < 1e-10,
                "s={s} x={x}: {closed} vs {direct}"
            );
        }
    }

    #[test]
    fn classical_limit_trend() {
        // |L_n(x) − e^{−nx}|/e^{−nx} shrinks as x → 0 at fixed n
        let n = 6usize;
        let mut last = f64::INFINITY;
        for &x in &[0.2, 0.1, 0.05, 0.01, 0.002] {
            let target = (-(n as f64) * x).exp();
            let dev = (laguerre(n, x) - target).abs() / target;
            assert!(dev < last, "x={x}: dev {dev} vs prev {last}");
            last = dev;
        }
    }

    #[test]
    fn large_degree_stays_finite() {
        let v = laguerre(1_000_000, 3.0);
        assert!(v.is_finite());
    }
}
