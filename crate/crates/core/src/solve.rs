//! Bracketed root finding used by the fugacity and variational-width solvers.

use crate::error::{Error, Result};

/// Bisection on a bracket [a, b] with f(a)·f(b) ≤ 0, run to floating-point
/// exhaustion or until |f| ≤ `f_tol`. Returns the midpoint estimate.
pub fn bisect<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    f_tol: f64,
    max_iter: usize,
    what: &'static str,
) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Domain(format!(
            "{what}: no sign change on bracket [{a}, {b}] (f = {fa:.3e}, {fb:.3e})"
        )));
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 || fm.abs() <= f_tol {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Newton iteration safeguarded by a shrinking bracket: steps that leave
/// [lo, hi] fall back to bisection. Converges on |f| ≤ `f_tol`.
pub fn newton_bracketed<F, D>(
    f: F,
    df: D,
    mut lo: f64,
    mut hi: f64,
    x0: f64,
    f_tol: f64,
    max_iter: usize,
    what: &'static str,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Domain(format!(
            "{what}: no sign change on bracket [{lo}, {hi}]"
        )));
    }
    let mut x = x0.clamp(lo, hi);
    for _ in 0..max_iter {
        let fx = f(x);
        if fx.abs() <= f_tol {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        let d = df(x);
        let newton = if d != 0.0 { x - fx / d } else { f64::NAN };
        x = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            return Ok(x);
        }
    }
    let fx = f(x);
    if fx.abs() <= f_tol * 1e3 {
        Ok(x)
    } else {
        Err(Error::NonConvergence {
            what,
            achieved: fx.abs(),
            target: f_tol,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 0.0, 200, "sqrt2").unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn bisect_rejects_bad_bracket() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 0.0, 100, "none").is_err());
    }

    #[test]
    fn newton_solves_quintic() {
        let rhs = 44.681_535_404_960_464;
        let r = newton_bracketed(
            |u| u * u * u * u * u - u - rhs,
            |u| 5.0 * u * u * u * u - 1.0,
            1.0,
            10.0,
            2.0,
            1e-12,
            200,
            "quintic",
        )
        .unwrap();
        assert!((r.powi(5) - r - rhs).abs() < 1e-10);
        assert!((r - 2.158_356_486_373_08).abs() < 1e-9);
    }
}
