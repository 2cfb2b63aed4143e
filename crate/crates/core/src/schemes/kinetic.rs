use super::grid::{BoundarySpec, GridSolution, LeftBoundary, RightBoundary};
use crate::error::{Error, Result};
use crate::model::{MacroState, ModelParams};
use crate::riemann::{classify_wave1, h1_interface_flux, state_on_invariants};

/// Relative slack on the CFL bound check.
const CFL_SLACK: f64 = 1e-12;

struct Interface {
    flux_rho: f64,
    flux_z: f64,
    speed: f64,
}

fn z_of(state: MacroState, h: f64) -> f64 {
    h * state.q / (1.0 - state.rho).powf(h)
}

// The left state enters only through `z_left`, the right one only through `rho - q`.
fn interface(left: MacroState, z_left: f64, right: MacroState, h: f64) -> Result<Interface> {
    if h == 1.0 {
        return Ok(Interface { flux_rho: h1_interface_flux(left, right), flux_z: z_left, speed: z_left });
    }
    let middle = if left == right { left } else { state_on_invariants(z_left, right.f1(), h, false)? };
    let speed = classify_wave1(left, middle, z_left, h).min_speed().abs();
    Ok(Interface { flux_rho: middle.q, flux_z: z_left, speed })
}

/// Godunov flux `(q_M, z_L)` of the advection system at one interface.
pub fn godunov_flux_system(left: MacroState, right: MacroState, params: &ModelParams) -> Result<(f64, f64)> {
    params.guard(left.rho)?;
    params.guard(right.rho)?;
    let f = interface(left, z_of(left, params.h), right, params.h)?;
    Ok((f.flux_rho, f.flux_z))
}

/// Ghost states `(left, right)` for the boundary conditions.
///
/// A prescribed invariant is combined with the invariant carried out of the
/// adjacent interior cell.
pub fn apply_boundary(sol: &GridSolution, bc: &BoundarySpec) -> Result<(MacroState, MacroState)> {
    bc.validate()?;
    let h = sol.params.h;
    let n = sol.n_cells();
    let first = sol.state(0);
    let last = sol.state(n - 1);
    let left = match bc.left {
        LeftBoundary::Outflow => first,
        LeftBoundary::Periodic => last,
        LeftBoundary::PrescribedG2(g2) => state_on_invariants(g2, first.f1(), h, false)?,
    };
    let right = match bc.right {
        RightBoundary::Outflow => last,
        RightBoundary::Periodic => first,
        RightBoundary::PrescribedG1(g1) => state_on_invariants(z_of(last, h), g1, h, false)?,
    };
    Ok((left, right))
}

/// Interface fluxes (`n + 1` of them) and the fastest wave speed, at least 1.
fn sweep(sol: &GridSolution, bc: &BoundarySpec) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let n = sol.n_cells();
    let h = sol.params.h;
    for &r in &sol.rho {
        sol.params.guard(r)?;
    }
    let (ghost_l, ghost_r) = apply_boundary(sol, bc)?;
    let z_ghost_l = match bc.left {
        LeftBoundary::PrescribedG2(g2) => g2,
        _ => z_of(ghost_l, h),
    };
    let z = sol.z();

    let mut frho = Vec::with_capacity(n + 1);
    let mut fz = Vec::with_capacity(n + 1);
    let mut speed: f64 = 1.0;
    for (i, &zi) in z.iter().enumerate() {
        // |lambda1| = z (1 - rho)^(H - 1)
        speed = speed.max(zi * (1.0 - sol.rho[i]).powf(h - 1.0));
    }
    for k in 0..=n {
        let (left, z_left) = if k == 0 { (ghost_l, z_ghost_l) } else { (sol.state(k - 1), z[k - 1]) };
        let right = if k == n { ghost_r } else { sol.state(k) };
        let f = interface(left, z_left, right, h)?;
        speed = speed.max(f.speed);
        frho.push(f.flux_rho);
        fz.push(f.flux_z);
    }
    Ok((frho, fz, speed))
}

/// Largest stable time step `dx / max(1, max |lambda1|, max 1-wave speed)`.
pub fn kinetic_dt_limit(sol: &GridSolution, bc: &BoundarySpec) -> Result<f64> {
    let (_, _, speed) = sweep(sol, bc)?;
    Ok(sol.dx() / speed)
}

/// Closed-form implicit Euler step of `z' = (G - z) / epsilon` with `k = dt / epsilon`.
pub fn implicit_relaxation(z_star: f64, g: f64, k: f64) -> f64 {
    (z_star + k * g) / (1.0 + k)
}

fn advance(sol: &GridSolution, frho: &[f64], fz: &[f64], dt: f64) -> Result<GridSolution> {
    let params = sol.params;
    let h = params.h;
    let lam = dt / sol.dx();
    let z = sol.z();
    let n = sol.n_cells();
    let mut rho = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    for i in 0..n {
        let r = sol.rho[i] - lam * (frho[i + 1] - frho[i]);
        params.guard(r)?;
        let z_star = z[i] - lam * (fz[i + 1] - fz[i]);
        let qi = if params.epsilon == 0.0 {
            sol.diagram.eval(r)
        } else {
            let z_new = if params.epsilon.is_infinite() {
                z_star
            } else {
                implicit_relaxation(z_star, params.equilibrium_z(&sol.diagram, r), dt / params.epsilon)
            };
            z_new * (1.0 - r).powf(h) / h
        };
        rho.push(r);
        q.push(qi);
    }
    Ok(GridSolution { rho, q, t: sol.t + dt, ..sol.clone() })
}

/// One step of the splitting scheme: Godunov advection in `(rho, z)`, then implicit relaxation.
///
/// `epsilon = 0` projects onto `q = F(rho)`, `epsilon = inf` skips relaxation.
pub fn step_relaxation(sol: &GridSolution, bc: &BoundarySpec, dt: f64) -> Result<GridSolution> {
    if !(dt >= 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!("dt must be finite and >= 0, got {dt}")));
    }
    let (frho, fz, speed) = sweep(sol, bc)?;
    let limit = sol.dx() / speed;
    if dt > limit * (1.0 + CFL_SLACK) {
        return Err(Error::Cfl { dt, limit });
    }
    advance(sol, &frho, &fz, dt)
}

/// Step with `dt = min(cfl * limit, dt_cap)`; returns the step taken.
pub(crate) fn step_relaxation_cfl(
    sol: &GridSolution,
    bc: &BoundarySpec,
    cfl: f64,
    dt_cap: f64,
) -> Result<(GridSolution, f64)> {
    let (frho, fz, speed) = sweep(sol, bc)?;
    let dt = (cfl * sol.dx() / speed).min(dt_cap);
    Ok((advance(sol, &frho, &fz, dt)?, dt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FundamentalDiagram;

    fn lw() -> FundamentalDiagram {
        FundamentalDiagram::lighthill_whitham()
    }

    fn grid(h: f64, eps: f64, rho: Vec<f64>, q: Vec<f64>) -> GridSolution {
        GridSolution::new(0.0, 1.0, rho, q, ModelParams::new(h, eps).unwrap(), lw()).unwrap()
    }

    #[test]
    fn flux_examples() {
        let p = ModelParams::new(1.0, 0.1).unwrap();
        let l = MacroState { rho: 0.7, q: 0.7 };
        let r = MacroState { rho: 0.7, q: 0.2 };
        let (fr, fz) = godunov_flux_system(l, r, &p).unwrap();
        assert!((fr - 0.35).abs() < 1e-15);
        assert!((fz - 0.7 / 0.3).abs() < 1e-14);

        let e = MacroState { rho: 0.3, q: 0.21 };
        for h in [1.0, 2.0, 0.5] {
            let p = ModelParams::new(h, 0.1).unwrap();
            assert_eq!(godunov_flux_system(e, e, &p).unwrap().0, 0.21);
            let zero = MacroState { rho: 0.4, q: 0.0 };
            assert_eq!(godunov_flux_system(zero, r, &p).unwrap().0, 0.0);
        }
    }

    #[test]
    fn ghost_examples() {
        let g = grid(1.0, 0.1, vec![0.2, 0.5], vec![0.16, 0.1]);
        let (l, r) = apply_boundary(&g, &BoundarySpec::OUTFLOW).unwrap();
        assert_eq!((l, r), (g.state(0), g.state(1)));

        let bc = BoundarySpec { left: LeftBoundary::PrescribedG2(0.75), right: RightBoundary::PrescribedG1(0.4) };
        let (l, r) = apply_boundary(&g, &bc).unwrap();
        assert!((l.q - 0.75 * 0.96 / 1.75).abs() < 1e-15);
        assert!((l.rho - (0.04 + 0.75 * 0.96 / 1.75)).abs() < 1e-15);
        assert!((r.rho - r.q - 0.4).abs() < 1e-15);
        assert!((r.q / (1.0 - r.rho) - 0.2).abs() < 1e-14);

        let (l, r) = apply_boundary(&g, &BoundarySpec::PERIODIC).unwrap();
        assert_eq!((l, r), (g.state(1), g.state(0)));
    }

    #[test]
    fn consistent_g1_reproduces_interior() {
        for h in [1.0, 2.0] {
            let g = grid(h, 0.1, vec![0.3, 0.6], vec![0.1, 0.2]);
            let bc = BoundarySpec { left: LeftBoundary::Outflow, right: RightBoundary::PrescribedG1(0.4) };
            let (_, r) = apply_boundary(&g, &bc).unwrap();
            assert!((r.rho - 0.6).abs() < 1e-11 && (r.q - 0.2).abs() < 1e-11);
        }
    }

    #[test]
    fn relaxation_examples() {
        assert_eq!(implicit_relaxation(2.0, 0.5, 1.0), 1.25);
        assert!((implicit_relaxation(2.0, 0.5, 1e15) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn equilibrium_field_is_fixed() {
        for (h, eps) in [(1.0, 0.1), (2.0, 0.001), (0.5, 1.0)] {
            let g = grid(h, eps, vec![0.3; 8], vec![0.21; 8]);
            let dt = kinetic_dt_limit(&g, &BoundarySpec::OUTFLOW).unwrap();
            let next = step_relaxation(&g, &BoundarySpec::OUTFLOW, dt).unwrap();
            for i in 0..8 {
                assert_eq!(next.rho[i], 0.3);
                assert!((next.q[i] - 0.21).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn cfl_violation() {
        let g = grid(1.0, 0.1, vec![0.3; 4], vec![0.21; 4]);
        assert!(matches!(step_relaxation(&g, &BoundarySpec::OUTFLOW, 0.5), Err(Error::Cfl { .. })));
    }

    #[test]
    fn periodic_conserves_mass_and_z_without_relaxation() {
        let rho = vec![0.1, 0.5, 0.9, 0.4, 0.2, 0.7];
        let q = vec![0.05, 0.5, 0.1, 0.0, 0.2, 0.3];
        for h in [1.0, 2.0] {
            let g = grid(h, f64::INFINITY, rho.clone(), q.clone());
            let dt = kinetic_dt_limit(&g, &BoundarySpec::PERIODIC).unwrap();
            let next = step_relaxation(&g, &BoundarySpec::PERIODIC, dt).unwrap();
            assert!((next.total_mass() - g.total_mass()).abs() < 1e-14);
            let z0: f64 = g.z().iter().sum();
            let z1: f64 = next.z().iter().sum();
            assert!((z0 - z1).abs() < 1e-12 * z0.max(1.0));
        }
    }

    #[test]
    fn zero_epsilon_projects() {
        let g = grid(1.0, 0.0, vec![0.3, 0.3, 0.6], vec![0.0, 0.1, 0.2]);
        let dt = kinetic_dt_limit(&g, &BoundarySpec::OUTFLOW).unwrap();
        let next = step_relaxation(&g, &BoundarySpec::OUTFLOW, dt).unwrap();
        for i in 0..3 {
            assert_eq!(next.q[i], lw().eval(next.rho[i]));
        }
    }
}
