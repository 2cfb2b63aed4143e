use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{MacroState, ModelParams};
use crate::roots::{bisect, ROOT_TOL};

/// Speed of the second (contact) wave.
pub const WAVE2_SPEED: f64 = 1.0;

const Z_MATCH_TOL: f64 = 1e-10;

/// First wave of a [`RiemannFan`]. All speeds are `<= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Wave1 {
    None,
    Contact { speed: f64 },
    Shock { speed: f64 },
    Rarefaction { head: f64, tail: f64 },
}

impl Wave1 {
    /// Fastest (most negative) speed of the wave, zero for no wave.
    pub fn min_speed(&self) -> f64 {
        match *self {
            Wave1::None => 0.0,
            Wave1::Contact { speed } | Wave1::Shock { speed } => speed,
            Wave1::Rarefaction { head, .. } => head,
        }
    }
}

/// Self-similar solution of the homogeneous system for one Riemann problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiemannFan {
    pub left: MacroState,
    pub right: MacroState,
    pub middle: MacroState,
    pub wave1: Wave1,
    pub h: f64,
    /// 2-Riemann invariant carried from the left state through the 1-wave.
    pub z_left: f64,
}

impl RiemannFan {
    pub fn wave2_speed(&self) -> f64 {
        WAVE2_SPEED
    }

    /// State at `xi = x / t`.
    pub fn sample(&self, xi: f64) -> MacroState {
        if xi >= WAVE2_SPEED {
            return self.right;
        }
        match self.wave1 {
            Wave1::None => self.middle,
            Wave1::Contact { speed } | Wave1::Shock { speed } => {
                if xi < speed {
                    self.left
                } else {
                    self.middle
                }
            }
            Wave1::Rarefaction { head, tail } => {
                if xi < head {
                    self.left
                } else if xi >= tail {
                    self.middle
                } else {
                    // lambda1 = -z (1 - rho)^(H - 1) = xi along the fan
                    let gap = (-xi / self.z_left).powf(1.0 / (self.h - 1.0));
                    let rho = 1.0 - gap;
                    MacroState { rho, q: self.z_left * gap.powf(self.h) / self.h }
                }
            }
        }
    }
}

fn z_of(state: MacroState, h: f64) -> f64 {
    h * state.q / (1.0 - state.rho).powf(h)
}

/// State with 2-invariant `z` and 1-invariant `rho - q = b`.
///
/// Solves `H (rho - b) = z (1 - rho)^H` for `rho` in `[max(b, 0), 1]`. For `H = 1`
/// the closed form `q = z (1 - b) / (1 + z)` is used unless `force_bisection`.
pub(crate) fn state_on_invariants(z: f64, b: f64, h: f64, force_bisection: bool) -> Result<MacroState> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::InvalidParameter(format!("2-invariant must be finite and >= 0, got {z}")));
    }
    let lo = b.max(0.0);
    if z == 0.0 {
        return Ok(MacroState { rho: lo, q: 0.0 });
    }
    if h == 1.0 && !force_bisection {
        let q = z * (1.0 - b) / (1.0 + z);
        return Ok(MacroState { rho: b + q, q: q.max(0.0) });
    }
    let g = |rho: f64| h * (rho - b) - z * (1.0 - rho).powf(h);
    if g(lo) >= 0.0 {
        return Ok(MacroState { rho: lo, q: lo - b });
    }
    let rho = bisect(g, lo, 1.0, ROOT_TOL)?;
    Ok(MacroState { rho, q: (rho - b).max(0.0) })
}

/// `H = 1` closed form `q_M = q_L (1 - rho_R + q_R) / (1 - rho_L + q_L)`.
pub fn intermediate_state_h1(left: MacroState, right: MacroState) -> MacroState {
    let q = h1_interface_flux(left, right);
    MacroState { rho: right.rho - right.q + q, q }
}

/// Godunov interface flux of the `H = 1` system.
#[inline]
pub(crate) fn h1_interface_flux(left: MacroState, right: MacroState) -> f64 {
    left.q * (1.0 - right.rho + right.q) / (1.0 - left.rho + left.q)
}

/// Intersection of the 1-curve through `left` (`z = z_L`) with the 2-curve through
/// `right` (`rho - q = rho_R - q_R`).
pub fn intermediate_state(left: MacroState, right: MacroState, params: &ModelParams) -> Result<MacroState> {
    params.guard(left.rho)?;
    params.guard(right.rho)?;
    intermediate_unguarded(left, right, params.h)
}

/// General-`H` bisection path, also at `H = 1`. Used as the oracle for the closed form.
pub fn intermediate_state_bisection(
    left: MacroState,
    right: MacroState,
    params: &ModelParams,
) -> Result<MacroState> {
    params.guard(left.rho)?;
    params.guard(right.rho)?;
    state_on_invariants(z_of(left, params.h), right.f1(), params.h, true)
}

// Only the left state enters through z, so the right state may sit at rho = 1.
pub(crate) fn intermediate_unguarded(left: MacroState, right: MacroState, h: f64) -> Result<MacroState> {
    if left == right {
        return Ok(left);
    }
    if h == 1.0 {
        return Ok(intermediate_state_h1(left, right));
    }
    state_on_invariants(z_of(left, h), right.f1(), h, false)
}

/// Rankine-Hugoniot speed of a 1-shock from `left` to `middle` (equal `z`).
pub fn shock_speed_1(left: MacroState, middle: MacroState, params: &ModelParams) -> Result<f64> {
    params.guard(left.rho)?;
    params.guard(middle.rho)?;
    let h = params.h;
    let z_l = z_of(left, h);
    let z_m = z_of(middle, h);
    if (z_l - z_m).abs() > Z_MATCH_TOL * z_l.abs().max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "states are not on one 1-curve: z_L = {z_l}, z_M = {z_m}"
        )));
    }
    if left.rho == middle.rho {
        return Err(Error::Degenerate("rho_L = rho_M, no 1-wave".into()));
    }
    Ok(shock_speed_unguarded(z_l, left.rho, middle.rho, h))
}

fn shock_speed_unguarded(z_l: f64, rho_l: f64, rho_m: f64, h: f64) -> f64 {
    z_l / h * ((1.0 - rho_l).powf(h) - (1.0 - rho_m).powf(h)) / (rho_l - rho_m)
}

/// Exact solution of the Riemann problem for the homogeneous system.
pub fn solve_riemann_system(left: MacroState, right: MacroState, params: &ModelParams) -> Result<RiemannFan> {
    params.guard(left.rho)?;
    params.guard(right.rho)?;
    let h = params.h;
    let middle = intermediate_unguarded(left, right, h)?;
    let z_left = z_of(left, h);
    let wave1 = classify_wave1(left, middle, z_left, h);
    Ok(RiemannFan { left, right, middle, wave1, h, z_left })
}

pub(crate) fn classify_wave1(left: MacroState, middle: MacroState, z_left: f64, h: f64) -> Wave1 {
    if left.rho == middle.rho && left.q == middle.q {
        return Wave1::None;
    }
    if z_left == 0.0 {
        return Wave1::Contact { speed: 0.0 };
    }
    if h == 1.0 {
        return Wave1::Contact { speed: -z_left };
    }
    let lambda_l = -z_left * (1.0 - left.rho).powf(h - 1.0);
    let lambda_m = -z_left * (1.0 - middle.rho).powf(h - 1.0);
    if lambda_l <= lambda_m {
        Wave1::Rarefaction { head: lambda_l, tail: lambda_m }
    } else {
        Wave1::Shock { speed: shock_speed_unguarded(z_left, left.rho, middle.rho, h) }
    }
}
