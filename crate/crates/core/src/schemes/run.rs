use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::grid::{BoundarySpec, GridSolution, LeftBoundary, RightBoundary};
use super::kinetic::step_relaxation_cfl;
use super::scalar::{
    max_char_speed, step_godunov_lwr_bc, step_lax_friedrichs_bc, step_relaxed_bc, ScalarBc, ScalarBoundary,
};
use crate::boundary::{resolve_left_boundary, resolve_right_boundary};
use crate::error::{Error, Result};

/// Hard cap on the number of time steps of one run.
pub const MAX_STEPS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Kinetic splitting scheme for the two-equation system.
    Relaxation,
    /// Equilibrium limit of the `H = 1` relaxation scheme.
    Relaxed,
    #[serde(rename = "lxf")]
    LaxFriedrichs,
    Godunov,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Relaxation, Scheme::Relaxed, Scheme::LaxFriedrichs, Scheme::Godunov];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Relaxation => "relaxation",
            Scheme::Relaxed => "relaxed",
            Scheme::LaxFriedrichs => "lxf",
            Scheme::Godunov => "godunov",
        }
    }

    /// Whether the scheme evolves `q` independently of `rho`.
    pub fn is_kinetic(&self) -> bool {
        matches!(self, Scheme::Relaxation)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scheme '{s}'")))
    }
}

/// Time-step history and state bounds over all time levels of a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepLog {
    pub n_steps: usize,
    pub dt_history: Vec<f64>,
    pub rho_min: f64,
    pub rho_max: f64,
    pub q_min: f64,
    pub q_max: f64,
    /// Smallest `rho - q` seen, negative if a cell left the triangle.
    pub f1_min: f64,
}

impl StepLog {
    fn new() -> Self {
        Self {
            n_steps: 0,
            dt_history: Vec::new(),
            rho_min: f64::INFINITY,
            rho_max: f64::NEG_INFINITY,
            q_min: f64::INFINITY,
            q_max: f64::NEG_INFINITY,
            f1_min: f64::INFINITY,
        }
    }

    fn record(&mut self, sol: &GridSolution) {
        for (&r, &q) in sol.rho.iter().zip(&sol.q) {
            self.rho_min = self.rho_min.min(r);
            self.rho_max = self.rho_max.max(r);
            self.q_min = self.q_min.min(q);
            self.q_max = self.q_max.max(q);
            self.f1_min = self.f1_min.min(r - q);
        }
    }

    pub fn dt_min(&self) -> f64 {
        self.dt_history.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn dt_max(&self) -> f64 {
        self.dt_history.iter().copied().fold(0.0, f64::max)
    }
}

/// Scalar ghost values; kinetic data are mapped to the layer value `rho_K`.
pub fn scalar_boundary(sol: &GridSolution, bc: &BoundarySpec) -> Result<ScalarBc> {
    let n = sol.n_cells();
    let left = match bc.left {
        LeftBoundary::Outflow => ScalarBoundary::Outflow,
        LeftBoundary::Periodic => ScalarBoundary::Periodic,
        LeftBoundary::PrescribedG2(g2) => {
            ScalarBoundary::Value(resolve_left_boundary(&sol.diagram, &sol.params, g2, sol.rho[0])?.rho_k)
        }
    };
    let right = match bc.right {
        RightBoundary::Outflow => ScalarBoundary::Outflow,
        RightBoundary::Periodic => ScalarBoundary::Periodic,
        RightBoundary::PrescribedG1(g1) => {
            ScalarBoundary::Value(resolve_right_boundary(&sol.diagram, &sol.params, g1, sol.rho[n - 1])?.rho_k)
        }
    };
    Ok(ScalarBc { left, right })
}

fn ghost_values(sol: &GridSolution, bc: &ScalarBc) -> Vec<f64> {
    [bc.left, bc.right]
        .into_iter()
        .filter_map(|b| match b {
            ScalarBoundary::Value(v) => Some(v),
            _ => None,
        })
        .chain(sol.rho.iter().copied())
        .collect()
}

fn scalar_step(sol: &GridSolution, bc: &BoundarySpec, scheme: Scheme, cfl: f64, dt_cap: f64) -> Result<(GridSolution, f64)> {
    let sbc = scalar_boundary(sol, bc)?;
    let vals = ghost_values(sol, &sbc);
    let d = &sol.diagram;
    let dx = sol.dx();
    let speed = match scheme {
        Scheme::Godunov => max_char_speed(&vals, d),
        Scheme::LaxFriedrichs => max_char_speed(&vals, d).max(1.0),
        // frozen speeds of the equilibrium H = 1 system: 1 and -F / (1 - rho)
        _ => vals.iter().fold(1.0f64, |m, &r| m.max(d.eval(r) / (1.0 - r))),
    };
    let dt = if speed > 0.0 { (cfl * dx / speed).min(dt_cap) } else { dt_cap };
    let rho = match scheme {
        Scheme::Godunov => step_godunov_lwr_bc(&sol.rho, d, dt, dx, &sbc)?,
        Scheme::LaxFriedrichs => step_lax_friedrichs_bc(&sol.rho, d, dt, dx, &sbc)?,
        _ => step_relaxed_bc(&sol.rho, d, dt, dx, &sbc)?,
    };
    let q = rho.iter().map(|&r| d.eval(r)).collect();
    Ok((GridSolution { rho, q, t: sol.t + dt, ..sol.clone() }, dt))
}

/// Time loop with adaptive `dt`, truncated to hit `t_end` exactly.
///
/// Scalar schemes start from `q = F(rho)` and keep it there.
pub fn run_simulation(
    initial: &GridSolution,
    bc: &BoundarySpec,
    scheme: Scheme,
    t_end: f64,
    cfl: f64,
) -> Result<(GridSolution, StepLog)> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(Error::InvalidParameter(format!("cfl must lie in (0, 1], got {cfl}")));
    }
    if !(t_end >= initial.t) || !t_end.is_finite() {
        return Err(Error::InvalidParameter(format!("t_end = {t_end} precedes t = {}", initial.t)));
    }
    bc.validate()?;
    let mut sol = initial.clone();
    if !scheme.is_kinetic() {
        sol.q = sol.rho.iter().map(|&r| sol.diagram.eval(r)).collect();
    }
    let mut log = StepLog::new();
    log.record(&sol);
    while sol.t < t_end {
        if log.n_steps >= MAX_STEPS {
            return Err(Error::InvalidParameter(format!("run exceeded {MAX_STEPS} steps")));
        }
        let cap = t_end - sol.t;
        let (mut next, dt) = if scheme.is_kinetic() {
            step_relaxation_cfl(&sol, bc, cfl, cap)?
        } else {
            scalar_step(&sol, bc, scheme, cfl, cap)?
        };
        if !(dt > 0.0) {
            return Err(Error::Cfl { dt, limit: 0.0 });
        }
        if dt >= cap {
            next.t = t_end;
        }
        log.n_steps += 1;
        log.dt_history.push(dt);
        log.record(&next);
        sol = next;
    }
    Ok((sol, log))
}
