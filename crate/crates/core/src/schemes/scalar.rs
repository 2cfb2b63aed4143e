use crate::error::{Error, Result};
use crate::model::{FundamentalDiagram, ScalarFlux, DEFAULT_DELTA, TRIANGLE_TOL};

const CFL_SLACK: f64 = 1e-12;

/// Boundary treatment for one side of a scalar scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarBoundary {
    /// Ghost cell copies the edge cell.
    Outflow,
    /// Ghost cell wraps around.
    Periodic,
    /// Ghost cell holds a fixed density.
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarBc {
    pub left: ScalarBoundary,
    pub right: ScalarBoundary,
}

impl ScalarBc {
    pub const OUTFLOW: Self = Self { left: ScalarBoundary::Outflow, right: ScalarBoundary::Outflow };
    pub const PERIODIC: Self = Self { left: ScalarBoundary::Periodic, right: ScalarBoundary::Periodic };

    fn ghosts(&self, rho: &[f64]) -> Result<(f64, f64)> {
        let n = rho.len();
        let lp = self.left == ScalarBoundary::Periodic;
        if lp != (self.right == ScalarBoundary::Periodic) {
            return Err(Error::InvalidParameter("periodic boundary must be set on both sides".into()));
        }
        let left = match self.left {
            ScalarBoundary::Outflow => rho[0],
            ScalarBoundary::Periodic => rho[n - 1],
            ScalarBoundary::Value(v) => v,
        };
        let right = match self.right {
            ScalarBoundary::Outflow => rho[n - 1],
            ScalarBoundary::Periodic => rho[0],
            ScalarBoundary::Value(v) => v,
        };
        Ok((left, right))
    }
}

/// `F(rho) = rho`, unit-speed linear advection.
#[derive(Debug, Clone, Copy, Default)]
pub struct LinearAdvection;

impl ScalarFlux for LinearAdvection {
    fn flux(&self, rho: f64) -> f64 {
        rho
    }

    fn flux_deriv(&self, _rho: f64) -> f64 {
        1.0
    }
}

fn check_densities(rho: &[f64], top: f64) -> Result<()> {
    if rho.is_empty() {
        return Err(Error::InvalidParameter("empty density array".into()));
    }
    for &r in rho {
        if r > top || r.is_nan() {
            return Err(Error::Singularity { rho: r, delta: 1.0 - top });
        }
        if r < -TRIANGLE_TOL {
            return Err(Error::OutsideTriangle { rho: r, q: 0.0 });
        }
    }
    Ok(())
}

fn check_ratio(dt: f64, dx: f64, speed: f64) -> Result<f64> {
    if !(dx > 0.0) || !(dt >= 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!("need dx > 0 and finite dt >= 0, got dx = {dx}, dt = {dt}")));
    }
    let limit = dx / speed;
    if dt > limit * (1.0 + CFL_SLACK) {
        return Err(Error::Cfl { dt, limit });
    }
    Ok(dt / dx)
}

/// Conservative update from a two-point numerical flux over the padded array.
fn conservative_update<N>(rho: &[f64], ghosts: (f64, f64), lam: f64, flux: N) -> Vec<f64>
where
    N: Fn(f64, f64) -> f64,
{
    let n = rho.len();
    let cell = |k: isize| -> f64 {
        if k < 0 {
            ghosts.0
        } else if k as usize >= n {
            ghosts.1
        } else {
            rho[k as usize]
        }
    };
    let fluxes: Vec<f64> = (0..=n as isize).map(|k| flux(cell(k - 1), cell(k))).collect();
    (0..n).map(|i| rho[i] - lam * (fluxes[i + 1] - fluxes[i])).collect()
}

/// Interface flux of the relaxed scheme, `F_L (1 - rho_R + F_R) / (1 - rho_L + F_L)`.
pub fn relaxed_flux<D: ScalarFlux + ?Sized>(diagram: &D, rho_l: f64, rho_r: f64) -> f64 {
    let fl = diagram.flux(rho_l);
    let fr = diagram.flux(rho_r);
    fl * (1.0 - rho_r + fr) / (1.0 - rho_l + fl)
}

/// Relaxed scheme with outflow boundaries. Requires `dt / dx <= 1`.
pub fn step_relaxed<D: ScalarFlux + ?Sized>(rho: &[f64], diagram: &D, dt: f64, dx: f64) -> Result<Vec<f64>> {
    step_relaxed_bc(rho, diagram, dt, dx, &ScalarBc::OUTFLOW)
}

pub fn step_relaxed_bc<D: ScalarFlux + ?Sized>(
    rho: &[f64],
    diagram: &D,
    dt: f64,
    dx: f64,
    bc: &ScalarBc,
) -> Result<Vec<f64>> {
    check_densities(rho, 1.0 - DEFAULT_DELTA)?;
    let lam = check_ratio(dt, dx, 1.0)?;
    let ghosts = bc.ghosts(rho)?;
    Ok(conservative_update(rho, ghosts, lam, |l, r| relaxed_flux(diagram, l, r)))
}

/// Lax-Friedrichs flux with numerical viscosity `dx / dt`.
pub fn lax_friedrichs_flux<D: ScalarFlux + ?Sized>(diagram: &D, rho_l: f64, rho_r: f64, lam: f64) -> f64 {
    0.5 * (diagram.flux(rho_l) + diagram.flux(rho_r)) - (rho_r - rho_l) / (2.0 * lam)
}

/// Lax-Friedrichs with outflow boundaries. Requires `dt / dx <= 1`.
pub fn step_lax_friedrichs<D: ScalarFlux + ?Sized>(rho: &[f64], diagram: &D, dt: f64, dx: f64) -> Result<Vec<f64>> {
    step_lax_friedrichs_bc(rho, diagram, dt, dx, &ScalarBc::OUTFLOW)
}

pub fn step_lax_friedrichs_bc<D: ScalarFlux + ?Sized>(
    rho: &[f64],
    diagram: &D,
    dt: f64,
    dx: f64,
    bc: &ScalarBc,
) -> Result<Vec<f64>> {
    check_densities(rho, 1.0 + TRIANGLE_TOL)?;
    let lam = check_ratio(dt, dx, 1.0)?;
    if lam == 0.0 {
        return Ok(rho.to_vec());
    }
    let ghosts = bc.ghosts(rho)?;
    Ok(conservative_update(rho, ghosts, lam, |l, r| lax_friedrichs_flux(diagram, l, r, lam)))
}

/// Exact Riemann flux of a concave diagram.
pub fn godunov_flux(diagram: &FundamentalDiagram, rho_l: f64, rho_r: f64) -> f64 {
    let fl = diagram.eval(rho_l);
    let fr = diagram.eval(rho_r);
    if rho_l <= rho_r {
        fl.min(fr)
    } else if rho_r <= diagram.rho_star() && diagram.rho_star() <= rho_l {
        diagram.max_flux()
    } else {
        fl.max(fr)
    }
}

/// Largest `|F'|` over the cells and ghost values.
pub fn max_char_speed(rho: &[f64], diagram: &FundamentalDiagram) -> f64 {
    rho.iter().fold(0.0f64, |m, &r| m.max(diagram.deriv(r).abs()))
}

/// Godunov scheme with outflow boundaries. Requires a concave diagram and `dt max|F'| <= dx`.
pub fn step_godunov_lwr(rho: &[f64], diagram: &FundamentalDiagram, dt: f64, dx: f64) -> Result<Vec<f64>> {
    step_godunov_lwr_bc(rho, diagram, dt, dx, &ScalarBc::OUTFLOW)
}

pub fn step_godunov_lwr_bc(
    rho: &[f64],
    diagram: &FundamentalDiagram,
    dt: f64,
    dx: f64,
    bc: &ScalarBc,
) -> Result<Vec<f64>> {
    diagram.require_concave()?;
    check_densities(rho, 1.0 + TRIANGLE_TOL)?;
    let ghosts = bc.ghosts(rho)?;
    let speed = max_char_speed(rho, diagram).max(diagram.deriv(ghosts.0).abs()).max(diagram.deriv(ghosts.1).abs());
    let lam = check_ratio(dt, dx, speed.max(f64::MIN_POSITIVE))?;
    Ok(conservative_update(rho, ghosts, lam, |l, r| godunov_flux(diagram, l, r)))
}
