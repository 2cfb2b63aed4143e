use serde::{Deserialize, Serialize};

use super::diagram::FundamentalDiagram;
use crate::error::{Error, Result};

/// Default singularity guard: densities must stay below `1 - DEFAULT_DELTA`.
pub const DEFAULT_DELTA: f64 = 1e-10;
/// Slack allowed when checking `0 <= q <= rho <= 1`.
pub const TRIANGLE_TOL: f64 = 1e-12;

/// Density and flux `(rho, q)` with occupancies `f1 = rho - q` (standing) and `f2 = q` (moving).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MacroState {
    pub rho: f64,
    pub q: f64,
}

impl MacroState {
    /// Validated constructor; rejects states outside the triangle.
    pub fn new(rho: f64, q: f64) -> Result<Self> {
        let s = Self { rho, q };
        if s.in_triangle(TRIANGLE_TOL) {
            Ok(s)
        } else {
            Err(Error::OutsideTriangle { rho, q })
        }
    }

    pub fn f1(&self) -> f64 {
        self.rho - self.q
    }

    pub fn f2(&self) -> f64 {
        self.q
    }

    pub fn in_triangle(&self, tol: f64) -> bool {
        self.rho.is_finite()
            && self.q.is_finite()
            && self.q >= -tol
            && self.q <= self.rho + tol
            && self.rho <= 1.0 + tol
    }
}

/// Conserved pair `(rho, z)` with `z = H q / (1 - rho)^H`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConservativeState {
    pub rho: f64,
    pub z: f64,
}

/// Look-ahead exponent `H`, relaxation time `epsilon` and singularity guard `delta`.
///
/// `epsilon = 0` selects the relaxed (equilibrium) regime, `epsilon = inf` switches
/// the relaxation source off.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub h: f64,
    pub epsilon: f64,
    pub delta: f64,
}

impl ModelParams {
    pub fn new(h: f64, epsilon: f64) -> Result<Self> {
        Self::with_delta(h, epsilon, DEFAULT_DELTA)
    }

    pub fn with_delta(h: f64, epsilon: f64, delta: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter(format!("H must be positive and finite, got {h}")));
        }
        if !(epsilon >= 0.0) {
            return Err(Error::InvalidParameter(format!("epsilon must be >= 0, got {epsilon}")));
        }
        if !(delta > 0.0 && delta <= 1e-6) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0, 1e-6], got {delta}")));
        }
        Ok(Self { h, epsilon, delta })
    }

    pub(crate) fn guard(&self, rho: f64) -> Result<()> {
        if rho > 1.0 - self.delta || rho.is_nan() {
            Err(Error::Singularity { rho, delta: self.delta })
        } else {
            Ok(())
        }
    }

    /// Equilibrium value of `z`: `G(rho) = H F(rho) / (1 - rho)^H`.
    pub fn equilibrium_z(&self, diagram: &FundamentalDiagram, rho: f64) -> f64 {
        self.h * diagram.eval(rho) / (1.0 - rho).powf(self.h)
    }
}

/// Wave speeds and right eigenvectors of the homogeneous system in `(rho, q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenStructure {
    pub lambda1: f64,
    pub lambda2: f64,
    pub r1: [f64; 2],
    pub r2: [f64; 2],
}

pub fn to_conservative(state: MacroState, params: &ModelParams) -> Result<ConservativeState> {
    params.guard(state.rho)?;
    Ok(ConservativeState { rho: state.rho, z: params.h * state.q / (1.0 - state.rho).powf(params.h) })
}

pub fn from_conservative(cstate: ConservativeState, params: &ModelParams) -> Result<MacroState> {
    params.guard(cstate.rho)?;
    if !(cstate.z >= 0.0) {
        return Err(Error::InvalidParameter(format!("z must be >= 0, got {}", cstate.z)));
    }
    let q = cstate.z * (1.0 - cstate.rho).powf(params.h) / params.h;
    if q > cstate.rho + 1e-9 {
        return Err(Error::OutsideTriangle { rho: cstate.rho, q });
    }
    Ok(MacroState { rho: cstate.rho, q })
}

/// `lambda1 = -H q / (1 - rho)`, `lambda2 = 1`.
pub fn eigenstructure(state: MacroState, params: &ModelParams) -> Result<EigenStructure> {
    params.guard(state.rho)?;
    let alpha = params.h * state.q / (1.0 - state.rho);
    Ok(EigenStructure { lambda1: -alpha, lambda2: 1.0, r1: [1.0, -alpha], r2: [1.0, 1.0] })
}

/// `grad(lambda1) . r1 = H q (H - 1) / (1 - rho)^2`; zero iff the first field is linearly degenerate there.
pub fn genuine_nonlinearity_indicator(state: MacroState, params: &ModelParams) -> Result<f64> {
    params.guard(state.rho)?;
    let h = params.h;
    Ok(h * state.q * (h - 1.0) / ((1.0 - state.rho) * (1.0 - state.rho)))
}

pub fn equilibrium(diagram: &FundamentalDiagram, rho: f64) -> MacroState {
    MacroState { rho, q: diagram.eval(rho) }
}
