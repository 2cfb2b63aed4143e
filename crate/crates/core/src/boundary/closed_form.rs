//! Explicit boundary values for the Lighthill-Whitham diagram `F(rho) = rho (1 - rho)`.
//!
//! No root finding: every branch is a closed-form expression. The ingoing
//! left branch inverts `H rho / (1 - rho)^(H - 1) = g2`, which is explicit
//! only for `H` in `{1, 2, 3}`.

use super::layer::Side;
use super::resolve::{BoundaryCase, BoundaryResolution};
use crate::error::{Error, Result};

const RHO_STAR: f64 = 0.5;
const F_MAX: f64 = 0.25;

fn lw(rho: f64) -> f64 {
    rho * (1.0 - rho)
}

fn check_inputs(h: f64, side: Side, g: f64, rho_b: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter(format!("H must be positive and finite, got {h}")));
    }
    let g_ok = match side {
        Side::Left => g >= 0.0 && g.is_finite(),
        Side::Right => (0.0..=1.0).contains(&g),
    };
    if !g_ok {
        return Err(Error::InvalidParameter(format!("boundary datum {g} out of range")));
    }
    if !(0.0..=1.0).contains(&rho_b) {
        return Err(Error::InvalidParameter(format!("rho_B = {rho_b} outside [0, 1]")));
    }
    Ok(())
}

/// Case selection with the LW thresholds; equality goes to the transonic case.
pub fn lw_classify(h: f64, side: Side, g: f64, rho_b: f64) -> Result<BoundaryCase> {
    check_inputs(h, side, g, rho_b)?;
    let case = match side {
        Side::Left => {
            if rho_b <= RHO_STAR {
                // H F(1/2) / (1/2)^H = H 2^(H - 2)
                if g < h * 2f64.powf(h - 2.0) {
                    BoundaryCase::Ingoing
                } else {
                    BoundaryCase::Transonic
                }
            } else if g < h * rho_b.powf(1.0 - h) * (1.0 - rho_b) {
                BoundaryCase::Ingoing
            } else {
                BoundaryCase::Outgoing
            }
        }
        Side::Right => {
            // rho - F(rho) = rho^2
            if rho_b >= RHO_STAR {
                if g > RHO_STAR * RHO_STAR {
                    BoundaryCase::Ingoing
                } else {
                    BoundaryCase::Transonic
                }
            } else if g > (1.0 - rho_b) * (1.0 - rho_b) {
                BoundaryCase::Ingoing
            } else {
                BoundaryCase::Outgoing
            }
        }
    };
    Ok(case)
}

/// Ingoing left root of `H rho / (1 - rho)^(H - 1) = g2`.
fn ingoing_left_root(h: f64, g2: f64) -> Result<f64> {
    if h == 1.0 {
        Ok(g2)
    } else if h == 2.0 {
        Ok(g2 / (2.0 + g2))
    } else if h == 3.0 {
        if g2 == 0.0 {
            return Ok(0.0);
        }
        let b = 2.0 * g2 + 3.0;
        Ok((b - (12.0 * g2 + 9.0).sqrt()) / (2.0 * g2))
    } else {
        Err(Error::UnsupportedH(h))
    }
}

/// Boundary resolution for a given case, computed from closed forms.
pub fn lw_closed_form(h: f64, side: Side, case: BoundaryCase, g: f64, rho_b: f64) -> Result<BoundaryResolution> {
    check_inputs(h, side, g, rho_b)?;
    let res = match (side, case) {
        (Side::Left, BoundaryCase::Ingoing) => {
            let rho1 = ingoing_left_root(h, g)?;
            BoundaryResolution { side, case, rho_wall: rho1, rho_k: rho1, c: lw(rho1) }
        }
        (Side::Left, BoundaryCase::Transonic) => BoundaryResolution {
            side,
            case,
            rho_wall: 1.0 - (h * F_MAX / g).powf(1.0 / h),
            rho_k: RHO_STAR,
            c: F_MAX,
        },
        (Side::Left, BoundaryCase::Outgoing) => {
            let c = lw(rho_b);
            BoundaryResolution { side, case, rho_wall: 1.0 - (h * c / g).powf(1.0 / h), rho_k: rho_b, c }
        }
        (Side::Right, BoundaryCase::Ingoing) => {
            let rho2 = g.sqrt();
            BoundaryResolution { side, case, rho_wall: rho2, rho_k: rho2, c: lw(rho2) }
        }
        (Side::Right, BoundaryCase::Transonic) => {
            BoundaryResolution { side, case, rho_wall: g + F_MAX, rho_k: RHO_STAR, c: F_MAX }
        }
        (Side::Right, BoundaryCase::Outgoing) => {
            let c = lw(rho_b);
            BoundaryResolution { side, case, rho_wall: g + c, rho_k: rho_b, c }
        }
    };
    Ok(res)
}

/// Classify and resolve in one call.
pub fn lw_resolve(h: f64, side: Side, g: f64, rho_b: f64) -> Result<BoundaryResolution> {
    let case = lw_classify(h, side, g, rho_b)?;
    lw_closed_form(h, side, case, g, rho_b)
}
