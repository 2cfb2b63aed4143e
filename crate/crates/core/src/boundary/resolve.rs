use serde::{Deserialize, Serialize};

use super::layer::Side;
use crate::error::{Error, Result};
use crate::model::{FundamentalDiagram, ModelParams};
use crate::roots::{bisect, ROOT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCase {
    Ingoing,
    Transonic,
    Outgoing,
}

/// Macroscopic boundary datum derived from the kinetic layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryResolution {
    pub side: Side,
    pub case: BoundaryCase,
    /// Layer value at the wall.
    pub rho_wall: f64,
    /// Far-field value of the layer, used as boundary value for the scalar law.
    pub rho_k: f64,
    /// Layer flux constant.
    pub c: f64,
}

/// `H F(rho) / (1 - rho)^H`, the 2-invariant of the equilibrium state at `rho`.
fn equilibrium_invariant(diagram: &FundamentalDiagram, h: f64, rho: f64) -> f64 {
    h * diagram.eval(rho) / (1.0 - rho).powf(h)
}

/// Left boundary: kinetic datum is the 2-invariant `g2`, interior value `rho_b`.
pub fn resolve_left_boundary(
    diagram: &FundamentalDiagram,
    params: &ModelParams,
    g2: f64,
    rho_b: f64,
) -> Result<BoundaryResolution> {
    if !(g2 >= 0.0) || !g2.is_finite() {
        return Err(Error::InvalidParameter(format!("g2 must be finite and >= 0, got {g2}")));
    }
    if !(0.0..=1.0).contains(&rho_b) {
        return Err(Error::InvalidParameter(format!("rho_B = {rho_b} outside [0, 1]")));
    }
    let h = params.h;
    let rs = diagram.rho_star();
    let g_star = equilibrium_invariant(diagram, h, rs);

    let case = if rho_b <= rs {
        if g2 < g_star {
            BoundaryCase::Ingoing
        } else {
            BoundaryCase::Transonic
        }
    } else {
        let tau = diagram.tau(rho_b);
        if g2 < equilibrium_invariant(diagram, h, tau) {
            BoundaryCase::Ingoing
        } else {
            BoundaryCase::Outgoing
        }
    };

    let wall = |flux: f64| 1.0 - (h * flux / g2).powf(1.0 / h);
    let res = match case {
        BoundaryCase::Ingoing => {
            let rho1 = bisect(|r| equilibrium_invariant(diagram, h, r) - g2, 0.0, rs, ROOT_TOL)?;
            BoundaryResolution { side: Side::Left, case, rho_wall: rho1, rho_k: rho1, c: diagram.eval(rho1) }
        }
        BoundaryCase::Transonic => {
            let c = diagram.max_flux();
            BoundaryResolution { side: Side::Left, case, rho_wall: wall(c), rho_k: rs, c }
        }
        BoundaryCase::Outgoing => {
            let c = diagram.eval(rho_b);
            BoundaryResolution { side: Side::Left, case, rho_wall: wall(c), rho_k: rho_b, c }
        }
    };
    Ok(res)
}

/// Right boundary: kinetic datum is the 1-invariant `g1 = f1`, interior value `rho_b`.
pub fn resolve_right_boundary(
    diagram: &FundamentalDiagram,
    _params: &ModelParams,
    g1: f64,
    rho_b: f64,
) -> Result<BoundaryResolution> {
    if !(0.0..=1.0).contains(&g1) {
        return Err(Error::InvalidParameter(format!("g1 = {g1} outside [0, 1]")));
    }
    if !(0.0..=1.0).contains(&rho_b) {
        return Err(Error::InvalidParameter(format!("rho_B = {rho_b} outside [0, 1]")));
    }
    let rs = diagram.rho_star();
    let standing = |r: f64| r - diagram.eval(r);

    let case = if rho_b >= rs {
        if g1 > standing(rs) {
            BoundaryCase::Ingoing
        } else {
            BoundaryCase::Transonic
        }
    } else if g1 > standing(diagram.tau(rho_b)) {
        BoundaryCase::Ingoing
    } else {
        BoundaryCase::Outgoing
    };

    let res = match case {
        BoundaryCase::Ingoing => {
            let rho2 = bisect(|r| standing(r) - g1, rs, 1.0, ROOT_TOL)?;
            BoundaryResolution { side: Side::Right, case, rho_wall: rho2, rho_k: rho2, c: diagram.eval(rho2) }
        }
        BoundaryCase::Transonic => {
            let c = diagram.max_flux();
            BoundaryResolution { side: Side::Right, case, rho_wall: g1 + c, rho_k: rs, c }
        }
        BoundaryCase::Outgoing => {
            let c = diagram.eval(rho_b);
            BoundaryResolution { side: Side::Right, case, rho_wall: g1 + c, rho_k: rho_b, c }
        }
    };
    Ok(res)
}
