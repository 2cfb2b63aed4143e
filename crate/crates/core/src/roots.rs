//! Bracketing root finders shared by the Riemann solvers and the boundary analysis.

use crate::error::{Error, Result};

/// Absolute tolerance on the bracket width.
pub const ROOT_TOL: f64 = 1e-12;
/// Iteration cap for [`bisect`].
pub const MAX_ITER: usize = 200;

/// Bisection for a sign change of `g` on `[lo, hi]`.
///
/// Returns the bracket midpoint once the width drops below `tol`, or an endpoint
/// if `g` vanishes there exactly.
pub fn bisect<G>(g: G, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut ga, gb) = (g(a), g(b));
    if ga == 0.0 {
        return Ok(a);
    }
    if gb == 0.0 {
        return Ok(b);
    }
    if !(ga.is_finite() && gb.is_finite()) || ga.signum() == gb.signum() {
        return Err(Error::NoBracket { lo, hi, g_lo: ga, g_hi: gb });
    }
    for _ in 0..MAX_ITER {
        let m = 0.5 * (a + b);
        if b - a <= tol || m <= a || m >= b {
            return Ok(m);
        }
        let gm = g(m);
        if gm == 0.0 {
            return Ok(m);
        }
        if gm.signum() == ga.signum() {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
